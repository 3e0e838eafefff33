"""Two ways to give primefib access to fib and prime.

/mw imports the whole of /mf and /mp for the duration of the call.
/mwq asks each module one question and imports only the answer.
Both return true for primefib(3), because fib(3) = 2 is prime.
"""

from modlang import EngineConfig, Import, ModuleRegistry, evaluate, parse_expr, pretty, show_value
from modlang.registry import BUNDLED_DIR

registry = ModuleRegistry([BUNDLED_DIR])

for module in ("mw", "mwq"):
    print(f"-- /{module}")
    for d in registry.resolve(module):
        print("  ", pretty(d))

cfg = EngineConfig(trace=True)
for module in ("mw", "mwq"):
    out = evaluate(cfg, registry, (Import(module),), parse_expr("primefib(3)"))
    added = [pretty(d) for node in out.trace.walk() if node.rule == 9 for d in node.added]
    print(f"\n/{module}: primefib(3) = {show_value(out.value)}")
    print(f"  declarations added along the way: {len(added)}")
    for text in added[:4]:
        print("   ", text)
    if len(added) > 4:
        print(f"    ... and {len(added) - 4} more")

# The query version pulled in exactly two facts.  The trace shows where.
out = evaluate(cfg, registry, (Import("mwq"),), parse_expr("primefib(3)"))
print("\nTop of the /mwq derivation:")
print("\n".join(out.trace.render().splitlines()[:6]))
