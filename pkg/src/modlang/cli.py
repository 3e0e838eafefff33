"""``modlang`` command line: run, eval, repl and weaken.

Exit status is 0 on success, 1 when evaluation fails and 2 for usage,
parse, I/O and module-resolution errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .engine import EngineConfig, EvalError, evaluate
from .parser import ParseError, parse_decl, parse_expr, parse_module_file
from .registry import ModuleRegistry, RegistryError
from .syntax import Import, Query, pretty, show_value
from .weaken import WeakenRequest, emit, weaken_module

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--path", action="append", default=[], metavar="DIR",
                        help="module search directory (repeatable, searched first)")
    common.add_argument("--trace", action="store_true", help="print the derivation to stderr")
    common.add_argument("--trace-json", action="store_true", help="print the derivation as JSON to stderr")
    common.add_argument("--clause-order", choices=["newest", "oldest"], default="newest")
    common.add_argument("--max-depth", type=int, default=10_000, metavar="N")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="modlang", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="evaluate an expression against a module file")
    run.add_argument("file", type=Path)
    run.add_argument("-e", "--expr", default="main()", help="expression to evaluate (default: main())")

    ev = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    ev.add_argument("-m", "--module", help="entry module whose declarations form the program")
    ev.add_argument("expression")

    sub.add_parser("repl", parents=[common], help="interactive session")

    wk = sub.add_parser("weaken", parents=[common], help="write a residual module of query answers")
    wk.add_argument("-q", "--query", action="append", default=[], dest="queries",
                    help="a query such as '(fib(3)=v)^/mf' (repeatable, applied in order)")
    wk.add_argument("-o", "--output", type=Path, required=True,
                    help="output .mod file; its stem names the residual module")
    return parser


def _config(args) -> EngineConfig:
    if args.max_depth < 1:
        raise UsageError("--max-depth must be at least 1")
    return EngineConfig(max_depth=args.max_depth, clause_order=args.clause_order,
                        trace=args.trace or args.trace_json)


def _report(outcome, args, out, err) -> int:
    if outcome.ok:
        if outcome.trace is not None:
            if args.trace_json:
                print(json.dumps(outcome.trace.to_dict(), indent=2), file=err)
            else:
                print(outcome.trace.render(), file=err)
        print(show_value(outcome.value), file=out)
        return EXIT_OK
    where = f" (rule {outcome.rule})" if outcome.rule is not None else ""
    print(f"failure: {outcome.reason}{where}: {outcome.message}", file=err)
    return EXIT_FAILURE


def cmd_eval(args, out, err) -> int:
    registry = ModuleRegistry.from_environment(args.path)
    program = (Import(args.module),) if args.module else ()
    expr = parse_expr(args.expression)
    return _report(evaluate(_config(args), registry, program, expr), args, out, err)


def cmd_run(args, out, err) -> int:
    source = args.file.read_text(encoding="utf-8")
    name, program = parse_module_file(source)
    registry = ModuleRegistry.from_environment([args.file.resolve().parent, *args.path])
    registry.register(name, program)
    expr = parse_expr(args.expr)
    return _report(evaluate(_config(args), registry, (Import(name),), expr), args, out, err)


def cmd_weaken(args, out, err) -> int:
    if not args.queries:
        raise UsageError("weaken needs at least one -q QUERY")
    queries = []
    for text in args.queries:
        q = parse_decl(text)
        if not isinstance(q, Query):
            raise UsageError(f"not a query: {text!r}")
        queries.append(q)
    registry = ModuleRegistry.from_environment(args.path)
    try:
        request = WeakenRequest(tuple(queries), registry, args.output.stem)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        residual = weaken_module(request, _config(args))
    except EvalError as exc:
        print(f"failure: {exc.reason} (rule {exc.rule}): {exc}", file=err)
        return EXIT_FAILURE
    args.output.write_text(emit(residual), encoding="utf-8")
    n = len(residual.facts)
    print(f"wrote {n} fact{'s' if n != 1 else ''} to {args.output}", file=out)
    return EXIT_OK


class Repl:
    """Line-oriented session.

    A line ending in ``.`` is a declaration appended to the session program;
    anything else is an expression evaluated against it.
    """

    def __init__(self, registry: ModuleRegistry, cfg: EngineConfig, out, err):
        self.registry = registry
        self.cfg = cfg
        self.out = out
        self.err = err
        self.program: tuple = ()

    def handle(self, line: str) -> bool:
        """Process one line; return False when the session should end."""
        line = line.strip()
        if not line or line.startswith("%"):
            return True
        if line.startswith(":"):
            return self.meta(line)
        try:
            if line.endswith("."):
                self.declare(parse_decl(line))
            else:
                self.evaluate(parse_expr(line))
        except (ParseError, RegistryError, EvalError) as exc:
            print(f"error: {exc}", file=self.err)
        return True

    def meta(self, line: str) -> bool:
        cmd, _, arg = line.partition(" ")
        arg = arg.strip()
        if cmd == ":quit":
            return False
        if cmd == ":program":
            self.out.write(pretty(self.program))
        elif cmd == ":trace" and arg in ("on", "off"):
            self.cfg = dataclasses.replace(self.cfg, trace=arg == "on")
        else:
            print(f"error: unknown command {line!r} (try :trace on|off, :program, :quit)", file=self.err)
        return True

    def declare(self, decl):
        if isinstance(decl, Import):
            self.registry.expand(decl.module)  # report missing modules and cycles now
        self.program = self.program + (decl,)

    def evaluate(self, expr):
        outcome = evaluate(self.cfg, self.registry, self.program, expr)
        if outcome.ok:
            if outcome.trace is not None:
                print(outcome.trace.render(), file=self.err)
            print(show_value(outcome.value), file=self.out)
        else:
            where = f" (rule {outcome.rule})" if outcome.rule is not None else ""
            print(f"failure: {outcome.reason}{where}: {outcome.message}", file=self.err)

    def run(self, inp) -> int:
        interactive = hasattr(inp, "isatty") and inp.isatty()
        while True:
            if interactive:
                self.out.write("modlang> ")
                self.out.flush()
            line = inp.readline()
            if not line or not self.handle(line):
                return EXIT_OK


def cmd_repl(args, out, err, inp=None) -> int:
    registry = ModuleRegistry.from_environment(args.path)
    return Repl(registry, _config(args), out, err).run(inp if inp is not None else sys.stdin)


COMMANDS = {"eval": cmd_eval, "run": cmd_run, "weaken": cmd_weaken, "repl": cmd_repl}


def main(argv=None, out=None, err=None, inp=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "repl":
            return cmd_repl(args, out, err, inp)
        return COMMANDS[args.command](args, out, err)
    except (ParseError, RegistryError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
