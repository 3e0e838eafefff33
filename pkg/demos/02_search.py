"""Clause order, backtracking and failure.

Definitions added later are tried first (NEWEST), so local declarations
shadow outer ones.  When a chosen clause leads nowhere the engine backs
up and tries the next, including other values for arguments already
evaluated.  Errors such as a type mismatch stop the search.
"""

from pathlib import Path

from modlang import EngineConfig, ModuleRegistry, evaluate, parse_expr, show_value, solutions
from modlang.registry import BUNDLED_DIR

reg = ModuleRegistry([Path(__file__).resolve().parent / "modules", BUNDLED_DIR])
newest, oldest = EngineConfig(), EngineConfig(clause_order="oldest")


def show(src, cfg=newest):
    out = evaluate(cfg, reg, (), parse_expr(src))
    result = show_value(out.value) if out.ok else f"failure {out.reason} ({out.message})"
    print(f"{src}\n    => {result}")


show("f = 1 & f = 2 -o f()")
show("f = 1 & f = 2 -o f()", oldest)
show("f = 1 -o f = 2 -o f()")

# f(1) first yields 2, for which g has no clause; the engine retries f(1).
show("f(1) = 1 & f(1) = 2 & g(1) = 5 -o g(f(1))")
e = parse_expr("coin = 0 & coin = 1 -o coin() + 10 * coin()")
print("all answers of coin() + 10 * coin():", " ".join(show_value(v) for v in solutions(newest, reg, (), e)))

# gcd(a, b) is tried before gcd(a, 0); for b = 0 its helper has no clause,
# so the search falls back to the base case.
show("/arith -o gcd(12, 18)")
show("/mf -o fib(20)")
show("fib(20)")
show("f(x) = 2 & f(x) = x + true -o f(1)")
show("loop(n) = loop(n + 1) -o loop(0)", EngineConfig(max_depth=500))
