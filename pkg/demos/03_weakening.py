"""Module weakening: replace an import by the few facts actually needed.

The residual module is written to a temporary directory, read back, and
imported in place of /mf and /mp.
"""

import tempfile
from pathlib import Path

from modlang import (
    EngineConfig, ModuleRegistry, WeakenRequest, emit, evaluate, parse_decl, parse_expr, weaken_module,
)
from modlang.registry import BUNDLED_DIR

queries = tuple(parse_decl(q) for q in ("(fib(10)=v)^/mf", "(prime(v)=w)^/mp", "(fib(11)=u)^/mf"))
residual = weaken_module(WeakenRequest(queries, ModuleRegistry([BUNDLED_DIR]), "fib_facts"))
text = emit(residual)
print(text)

with tempfile.TemporaryDirectory() as tmp:
    (Path(tmp) / "fib_facts.mod").write_text(text, encoding="utf-8")
    reg = ModuleRegistry([tmp, BUNDLED_DIR])
    for src in ("/fib_facts -o fib(10) + fib(11)", "/mf -o fib(10) + fib(11)", "/fib_facts -o fib(12)"):
        out = evaluate(EngineConfig(), reg, (), parse_expr(src))
        print(f"{src:36} => {out.value.value if out.ok else out.reason}")

print(f"\n{len(residual.facts)} facts instead of "
      f"{len(ModuleRegistry([BUNDLED_DIR]).expand('mf')) + len(ModuleRegistry([BUNDLED_DIR]).expand('mp'))} "
      "declarations")
