"""The command line, driven in-process.  Each call mirrors a shell command."""

import io
import tempfile
from pathlib import Path

from modlang.cli import main

HERE = Path(__file__).resolve().parent / "modules"


def sh(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err, io.StringIO(stdin) if stdin else None)
    print("$ modlang " + " ".join(f"'{a}'" if " " in a else a for a in argv))
    for line in (out.getvalue() + err.getvalue()).splitlines():
        print("  " + line)
    print(f"  [exit {code}]")


sh("eval", "-m", "mw", "primefib(3)")
sh("eval", "/mf -o fib(7)")
sh("eval", "fib(1)")
sh("run", str(HERE / "report.mod"))
sh("eval", "--path", str(HERE), "--trace", "/arith -o fact(2)")
sh("repl", stdin="/mf.\nfib(2)\ndouble(x) = x + x.\ndouble(21)\n:program\n:quit\n")
with tempfile.TemporaryDirectory() as tmp:
    target = Path(tmp) / "mf_w3.mod"
    sh("weaken", "-q", "(fib(3)=v)^/mf", "-o", str(target))
    print(target.read_text(encoding="utf-8"))
