"""Eager evaluation by alternating an eval phase and a backchaining phase.

Rule numbers used in traces and diagnostics:

====  ==========================================================
1     bc(h(c..) = E, D, h(c..), K) if eval(D, E, K)
2, 3  bc(D1 & D2, ...) searches D1 / D2
4     bc(h(x..) = E, ...) binds the head variables and continues as 1
5     eval(D, T, T)
6     eval(D, c, c)
7     eval(D, h(c..), K) if bc(D, D, h(c..), K)
8     eval(D, h(E..), K): evaluate the arguments first, then 7
9     eval(D, D1 -o E, K) if eval(D & D1, E, K)
10    an import ``/m`` in D1 is replaced by the declarations of m
11    a query ``(f(t..)=v)^/m`` in D1 becomes the fact ``f(t..) = w``
      where w is f(t..) evaluated in m, and v is replaced by w
====  ==========================================================

Clause search is deterministic: the clauses for a call are tried newest
first by default (declarations added by ``-o`` shadow outer ones) or oldest
first.  A clause whose body has no derivation is skipped and the next one is
tried; any other error aborts the whole evaluation.  Builtins are only used
when no clause head matches the call at all.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .syntax import (
    DI,
    TOP_VALUE,
    Bool,
    Call,
    Const,
    FunDef,
    HeadPattern,
    Import,
    Int,
    Query,
    Succ,
    Top,
    Var,
    pretty,
    pretty_antecedent,
    show_value,
)


class ClauseOrder(str, enum.Enum):
    NEWEST = "newest"
    OLDEST = "oldest"


@dataclass(frozen=True)
class EngineConfig:
    max_depth: int = 10_000
    clause_order: ClauseOrder = ClauseOrder.NEWEST
    trace: bool = False
    max_steps: Optional[int] = None  # bound on the total number of function calls
    max_query_hops: int = 64

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        object.__setattr__(self, "clause_order", ClauseOrder(self.clause_order))


# -- failures ---------------------------------------------------------------


class EvalError(Exception):
    """Evaluation found no value.  ``rule`` names the rule being applied."""

    reason = "RuntimeError"

    def __init__(self, message: str, rule=None):
        super().__init__(message)
        self.rule = rule


class NoDerivation(EvalError):
    reason = "NoDerivation"


class DepthExceeded(EvalError):
    reason = "DepthExceeded"


class StepLimitExceeded(EvalError):
    reason = "StepLimitExceeded"


class UnboundVariable(EvalError):
    reason = "UnboundVariable"


class TypeMismatch(EvalError):
    reason = "TypeError"


class DivisionByZero(EvalError):
    reason = "DivisionByZero"


class MQNonGround(EvalError):
    reason = "MQNonGround"


class QueryCycle(EvalError):
    reason = "QueryCycle"


class QueryDepthExceeded(EvalError):
    reason = "QueryDepthExceeded"


# -- outcomes and traces ----------------------------------------------------


@dataclass(frozen=True)
class Trace:
    """One node of a derivation.

    ``side`` holds the sub-derivations that produced a query's value (rule
    11's side condition); they are not premises.  ``added`` is set on rule 9
    nodes to the declarations the program was extended with.
    """

    rule: object  # int 1..11 or "builtin"
    conclusion: str
    children: tuple = ()
    side: tuple = ()
    added: Optional[tuple] = None

    def render(self, indent: int = 0) -> str:
        lines = []
        self._render(indent, lines)
        return "\n".join(lines)

    def _render(self, indent, lines):
        pad = "  " * indent
        lines.append(f"{pad}[rule {self.rule}] {self.conclusion}")
        for s in self.side:
            lines.append(f"{pad}  -- query evaluated in its module:")
            s._render(indent + 2, lines)
        for c in self.children:
            c._render(indent + 1, lines)

    def to_dict(self) -> dict:
        d = {
            "rule": self.rule,
            "conclusion": self.conclusion,
            "children": [c.to_dict() for c in self.children],
        }
        if self.side:
            d["side"] = [s.to_dict() for s in self.side]
        if self.added is not None:
            d["added"] = [pretty(x) for x in self.added]
        return d

    def walk(self):
        yield self
        for s in self.side:
            yield from s.walk()
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class Success:
    value: object
    trace: Optional[Trace] = None

    ok = True


@dataclass(frozen=True)
class Failure:
    reason: str
    message: str
    rule: object = None

    ok = False

    @classmethod
    def from_error(cls, exc: EvalError) -> "Failure":
        return cls(exc.reason, str(exc), exc.rule)


# -- matching, substitution, builtins ---------------------------------------


def _match(params, values) -> Optional[dict]:
    bindings = {}
    for p, v in zip(params, values):
        if isinstance(p, Var):
            bindings[p.name] = v
        elif isinstance(p, Const):
            if p.value != v:
                return None
        elif isinstance(p, Succ):
            if not isinstance(v, Int) or v.value < p.offset:
                return None
            bindings[p.var] = Int(v.value - p.offset)
        else:
            raise TypeError(f"bad pattern term {p!r}")
    return bindings


def match_head(pattern: HeadPattern, call: Call) -> Optional[dict]:
    """Bindings that make *pattern* equal the ground *call*, or None."""
    if pattern.function != call.head or len(pattern.params) != len(call.args):
        return None
    values = []
    for a in call.args:
        if not isinstance(a, Const):
            raise ValueError(f"call argument {pretty(a)} is not a constant")
        values.append(a.value)
    return _match(pattern.params, values)


def substitute(bindings: dict, e):
    """Replace free variables of *e* that *bindings* maps to values.

    Head variables of a local definition and the result variable of a
    query (for the declarations after it and the body) are binders and
    shadow outer bindings.
    """
    if not bindings:
        return e
    if isinstance(e, Var):
        v = bindings.get(e.name)
        return e if v is None else Const(v)
    if isinstance(e, Call):
        return Call(e.head, tuple(substitute(bindings, a) for a in e.args))
    if isinstance(e, DI):
        decls, rest = substitute_decls(bindings, e.decls)
        return DI(decls, substitute(rest, e.body))
    return e


def substitute_decls(bindings: dict, decls):
    """Substitute through a declaration sequence; return it and the bindings still in scope after it."""
    out = []
    for d in decls:
        if isinstance(d, FunDef):
            bound = d.head.variables()
            inner = {k: v for k, v in bindings.items() if k not in bound}
            out.append(FunDef(d.head, substitute(inner, d.body)) if inner else d)
        elif isinstance(d, Query):
            params = tuple(
                Const(bindings[p.name]) if isinstance(p, Var) and p.name in bindings else p
                for p in d.head.params
            )
            out.append(Query(HeadPattern(d.head.function, params), d.result, d.module))
            if d.result in bindings:
                bindings = {k: v for k, v in bindings.items() if k != d.result}
        else:
            out.append(d)
    return tuple(out), bindings


NOT_BUILTIN = object()


def _ints(name, args):
    if not all(isinstance(a, Int) for a in args):
        raise TypeMismatch(f"{_brief_call(name, args)}: operands must be integers", rule="builtin")
    return [a.value for a in args]


def _division(name, op):
    def apply(args):
        x, y = _ints(name, args)
        if y == 0:
            raise DivisionByZero(_brief_call(name, args), rule="builtin")
        return Int(op(x, y))

    return apply


def _numeric(name, op, wrap):
    return lambda args: wrap(op(*_ints(name, args)))


_BUILTINS = {
    "+": _numeric("+", lambda x, y: x + y, Int),
    "-": _numeric("-", lambda x, y: x - y, Int),
    "*": _numeric("*", lambda x, y: x * y, Int),
    "<": _numeric("<", lambda x, y: x < y, Bool),
    "<=": _numeric("<=", lambda x, y: x <= y, Bool),
    "==": lambda args: Bool(args[0] == args[1]),
    "mod": _division("mod", lambda x, y: x % y),
    "div": _division("div", lambda x, y: x // y),
}


def builtin(name: str, args):
    """Apply a primitive, or return ``NOT_BUILTIN`` if there is none of that name and arity.

    Integer ``div``/``mod`` round towards negative infinity.
    """
    fn = _BUILTINS.get(name)
    if fn is None or len(args) != 2:
        return NOT_BUILTIN
    return fn(tuple(args))


# -- the machine --------------------------------------------------------------


class _Env:
    """An immutable program with its clauses indexed by name and arity."""

    __slots__ = ("decls", "index")

    def __init__(self, decls):
        self.decls = tuple(decls)
        index: dict = {}
        for pos, d in enumerate(self.decls):
            if isinstance(d, FunDef):
                index.setdefault((d.head.function, d.head.arity), []).append((pos, d))
        self.index = index

    def extend(self, more) -> "_Env":
        return _Env(self.decls + tuple(more))


def _call_text(head, values) -> str:
    return pretty(Call(head, tuple(Const(v) for v in values)))


def _brief_call(head, values) -> str:
    """Call text for error messages, eliding the middle of huge integers."""
    text = [show_value(v) for v in values]
    text = [t if len(t) <= 60 else f"{t[:20]}...{t[-20:]}" for t in text]
    return f"{head}({', '.join(text)})"


def _decls_text(decls) -> str:
    return pretty_antecedent(decls)


# The search runs as a loop over actions instead of Python recursion, so
# derivation depth costs heap, not stack.  A continuation is a linked list
# ``(frame, rest)`` of frames waiting for a value; ``None`` is the end.
# Choice points hold the continuation they resume, which is safe because
# continuations are never mutated.

_EVAL, _CALL, _CLOSE, _RET, _FAIL = range(5)
_FAILED = (_FAIL,)
_NO_BODY = object()  # closing a bare program rather than a DI antecedent


class _Args:
    """Rule 8: collect argument values left to right, then make the call."""

    __slots__ = ("env", "call", "i", "values", "premises", "depth", "qchain")

    def __init__(self, env, call, i, values, premises, depth, qchain):
        self.env, self.call, self.i = env, call, i
        self.values, self.premises = values, premises
        self.depth, self.qchain = depth, qchain

    def resume(self, m, v, t, k):
        values = self.values + (v,)
        premises = self.premises + (t,)
        i = self.i + 1
        args = self.call.args
        if i < len(args):
            frame = _Args(self.env, self.call, i, values, premises, self.depth, self.qchain)
            return (_EVAL, self.env, args[i], self.depth, self.qchain, (frame, k))
        if m.tracing:
            k = (_Rule8(self.call, premises), k)
        return (_CALL, self.env, self.env, self.call.head, values, self.depth, self.qchain, k)


class _Rule8:
    __slots__ = ("call", "premises")

    def __init__(self, call, premises):
        self.call, self.premises = call, premises

    def resume(self, m, v, t, k):
        return (_RET, v, Trace(8, f"eval(D, {pretty(self.call)}, {show_value(v)})", self.premises + (t,)), k)


class _Rule7:
    __slots__ = ("head", "values")

    def __init__(self, head, values):
        self.head, self.values = head, values

    def resume(self, m, v, t, k):
        return (_RET, v, Trace(7, f"eval(D, {_call_text(self.head, self.values)}, {show_value(v)})", (t,)), k)


class _Clause:
    """Wraps a clause body's derivation in rules 1, 4 and 2/3."""

    __slots__ = ("clauses", "pos", "fd", "body", "head", "values")

    def __init__(self, clauses, pos, fd, body, head, values):
        self.clauses, self.pos, self.fd, self.body = clauses, pos, fd, body
        self.head, self.values = head, values

    def resume(self, m, v, t, k):
        call, val = _call_text(self.head, self.values), show_value(v)
        ground = HeadPattern(self.head, tuple(Const(x) for x in self.values))
        t = Trace(1, f"bc({pretty(FunDef(ground, self.body))[:-1]}, D, {call}, {val})", (t,))
        if self.fd.head.variables():
            t = Trace(4, f"bc({pretty(self.fd)[:-1]}, D, {call}, {val})", (t,))
        n = len(self.clauses.decls)
        if n > 1:
            rule = 2 if self.pos == 0 else 3
            t = Trace(rule, f"bc(D, D, {call}, {val}) via declaration {self.pos + 1} of {n}", (t,))
        return (_RET, v, t, k)


class _Rule9:
    """Wraps the body's derivation in rule 9 and the rule 10/11 rewrites before it."""

    __slots__ = ("closed", "body", "steps")

    def __init__(self, closed, body, steps):
        self.closed, self.body, self.steps = closed, body, steps

    def resume(self, m, v, t, k):
        val = show_value(v)
        t = Trace(9, f"eval(D, {_decls_text(self.closed)} -o {pretty(self.body)}, {val})", (t,),
                  added=self.closed)
        for rule, state, side in reversed(self.steps):
            t = Trace(rule, f"eval(D, {state}, {val})", (t,), side)
        return (_RET, v, t, k)


class _Answer:
    """Rule 11: a query produced value *v*; turn it into a fact and keep closing."""

    __slots__ = ("env", "query", "pending", "out", "body", "steps", "state", "depth", "qchain")

    def __init__(self, env, query, pending, out, body, steps, state, depth, qchain):
        self.env, self.query, self.pending, self.out = env, query, pending, out
        self.body, self.steps, self.state = body, steps, state
        self.depth, self.qchain = depth, qchain

    def resume(self, m, v, t, k):
        q = self.query
        fact = FunDef(HeadPattern(q.head.function, q.head.params), Const(v))
        rest, scope = substitute_decls({q.result: v}, self.pending)
        body = self.body if self.body is _NO_BODY else substitute(scope, self.body)
        steps = self.steps + ((11, self.state, (t,) if t is not None else ()),)
        return (_CLOSE, self.env, rest, self.out + (fact,), body, steps, self.depth, self.qchain, k)


class _Alternatives:
    """Choice point over the remaining matching clauses of one call."""

    __slots__ = ("clauses", "env", "matches", "head", "values", "depth", "qchain", "k")

    def __init__(self, clauses, env, matches, head, values, depth, qchain, k):
        self.clauses, self.env, self.matches = clauses, env, matches
        self.head, self.values = head, values
        self.depth, self.qchain, self.k = depth, qchain, k

    def retry(self, m):
        pos, fd, bindings = self.matches[0]
        body = substitute(bindings, fd.body)
        if len(self.matches) > 1:
            m.choices.append(_Alternatives(self.clauses, self.env, self.matches[1:], self.head,
                                           self.values, self.depth, self.qchain, self.k))
        k = self.k
        if m.tracing:
            k = (_Clause(self.clauses, pos, fd, body, self.head, self.values), k)
        return (_EVAL, self.env, body, self.depth, self.qchain, k)


class _Machine:
    """Depth-first search for derivations with chronological backtracking.

    ``run`` yields ``(value, trace)`` for each derivation in search order;
    asking for the next one backtracks.  Hard errors are raised and end the
    search.  ``qchain`` is the tuple of queries whose answers are being
    computed on the current path; ``depth`` is the number of enclosing
    function calls.
    """

    def __init__(self, cfg: EngineConfig, registry):
        self.cfg = cfg
        self.registry = registry
        self.newest_first = cfg.clause_order is ClauseOrder.NEWEST
        self.tracing = cfg.trace
        self.steps = 0
        self.choices: list = []
        self.module_envs: dict = {}
        self.preparing: list = []
        self.last_miss = None  # most recent call that no clause or builtin matched

    def run(self, act):
        outer, self.choices = self.choices, []
        try:
            while True:
                op = act[0]
                if op == _EVAL:
                    act = self.step_eval(*act[1:])
                elif op == _CALL:
                    act = self.step_call(*act[1:])
                elif op == _RET:
                    k = act[3]
                    if k is None:
                        inner, self.choices = self.choices, outer
                        yield act[1], act[2]
                        outer, self.choices = self.choices, inner
                        act = _FAILED
                    else:
                        act = k[0].resume(self, act[1], act[2], k[1])
                elif op == _CLOSE:
                    act = self.step_close(*act[1:])
                elif self.choices:
                    act = self.choices.pop().retry(self)
                else:
                    return
        finally:
            self.choices = outer

    def first(self, act):
        search = self.run(act)
        try:
            return next(search, None)
        finally:
            search.close()

    # eval phase

    def step_eval(self, env, e, depth, qchain, k):
        if isinstance(e, Call):
            args = e.args
            if all(isinstance(a, Const) for a in args):
                return (_CALL, env, env, e.head, tuple(a.value for a in args), depth, qchain, k)
            return (_EVAL, env, args[0], depth, qchain, (_Args(env, e, 0, (), (), depth, qchain), k))
        if isinstance(e, Const):
            return (_RET, e.value, Trace(6, f"eval(D, {pretty(e)}, {pretty(e)})") if self.tracing else None, k)
        if isinstance(e, DI):
            return (_CLOSE, env, e.decls, (), e.body, (), depth, qchain, k)
        if isinstance(e, Top):
            return (_RET, TOP_VALUE, Trace(5, "eval(D, T, T)") if self.tracing else None, k)
        if isinstance(e, Var):
            raise UnboundVariable(f"variable {e.name} has no value")
        raise TypeError(f"not an expression: {e!r}")

    # rule 7 and the backchaining phase

    def step_call(self, clauses, env, head, values, depth, qchain, k):
        depth += 1
        if depth > self.cfg.max_depth:
            raise DepthExceeded(f"call depth exceeded {self.cfg.max_depth} at {_brief_call(head, values)}", rule=7)
        self.steps += 1
        if self.cfg.max_steps is not None and self.steps > self.cfg.max_steps:
            raise StepLimitExceeded(f"more than {self.cfg.max_steps} calls", rule=7)
        if self.tracing:
            k = (_Rule7(head, values), k)
        candidates = clauses.index.get((head, len(values)), ())
        if self.newest_first:
            candidates = reversed(candidates)
        matches = []
        for pos, fd in candidates:
            bindings = _match(fd.head.params, values)
            if bindings is not None:
                matches.append((pos, fd, bindings))
        if matches:
            return _Alternatives(clauses, env, matches, head, values, depth, qchain, k).retry(self)
        v = builtin(head, values)
        if v is NOT_BUILTIN:
            self.last_miss = _brief_call(head, values)
            return _FAILED
        t = Trace("builtin", f"{_call_text(head, values)} = {show_value(v)}") if self.tracing else None
        return (_RET, v, t, k)

    # rules 9, 10 and 11

    def step_close(self, env, pending, out, body, steps, depth, qchain, k):
        """Rewrite the leftmost import or query of an antecedent; evaluate the body once none remain."""
        i = 0
        while i < len(pending) and isinstance(pending[i], FunDef):
            i += 1
        out += tuple(pending[:i])
        pending = tuple(pending[i:])
        if not pending:
            if body is _NO_BODY:
                return (_RET, out, None, k)
            ext = env.extend(out)
            if self.tracing:
                k = (_Rule9(out, body, steps), k)
            return (_EVAL, ext, body, depth, qchain, k)
        d = pending[0]
        state = None
        if self.tracing:
            state = _decls_text(out + pending) + (f" -o {pretty(body)}" if body is not _NO_BODY else "")
        if isinstance(d, Import):
            spliced = self.registry.expand(d.module) + pending[1:]
            return (_CLOSE, env, spliced, out, body, steps + ((10, state, ()),), depth, qchain, k)
        if isinstance(d, Query):
            key = self.check_query(d, qchain)
            values = key[2]
            menv = self.module_env(d.module, depth, qchain)
            k = (_Answer(env, d, pending[1:], out, body, steps, state, depth, qchain), k)
            return (_CALL, menv, menv, d.head.function, values, depth, qchain + (key,), k)
        raise TypeError(f"not a declaration: {d!r}")

    def check_query(self, q: Query, qchain) -> tuple:
        if not q.is_ground():
            raise MQNonGround(f"query {pretty(q)[:-1]} has non-ground arguments", rule=11)
        key = (q.module, q.head.function, tuple(p.value for p in q.head.params))
        if key in qchain:
            chain = qchain[qchain.index(key):] + (key,)
            raise QueryCycle("query cycle: " + " -> ".join(f"{_brief_call(f, a)}@/{m}" for m, f, a in chain),
                             rule=11)
        if len(qchain) >= self.cfg.max_query_hops:
            raise QueryDepthExceeded(f"more than {self.cfg.max_query_hops} nested module queries", rule=11)
        return key

    def module_env(self, name: str, depth: int, qchain=()) -> _Env:
        """Module *name* with imports spliced and its own queries answered (first answer each)."""
        env = self.module_envs.get(name)
        if env is not None:
            return env
        if name in self.preparing:
            chain = self.preparing[self.preparing.index(name):] + [name]
            raise QueryCycle("module query cycle: " + " -> ".join("/" + m for m in chain), rule=11)
        self.preparing.append(name)
        try:
            closed = self.close_first(self.registry.expand(name), depth, qchain)
        finally:
            self.preparing.pop()
        env = self.module_envs[name] = _Env(closed)
        return env

    def close_first(self, decls, depth: int = 0, qchain=()) -> tuple:
        found = self.first((_CLOSE, None, tuple(decls), (), _NO_BODY, (), depth, qchain, None))
        if found is None:
            raise self.no_derivation("a query in the program has no answer")
        return found[0]

    def answer(self, q: Query):
        """First answer to a query, as ``(fact, value)``."""
        key = self.check_query(q, ())
        menv = self.module_env(q.module, 0)
        found = self.first((_CALL, menv, menv, q.head.function, key[2], 0, (key,), None))
        if found is None:
            raise self.no_derivation(f"query {pretty(q)[:-1]} has no answer")
        v = found[0]
        return FunDef(HeadPattern(q.head.function, q.head.params), Const(v)), v

    def preprocess(self, decls) -> tuple:
        """Instantiate queries only; imports and definitions pass through."""
        pending = tuple(decls)
        out = []
        while pending:
            d, pending = pending[0], pending[1:]
            if isinstance(d, Query):
                fact, value = self.answer(d)
                out.append(fact)
                pending = substitute_decls({d.result: value}, pending)[0]
            else:
                out.append(d)
        return tuple(out)

    def no_derivation(self, what: str) -> NoDerivation:
        detail = f"; no definition matches {self.last_miss}" if self.last_miss else ""
        return NoDerivation(what + detail, rule=7 if self.last_miss else None)


# -- public entry points -----------------------------------------------------------


def _first(cfg, registry, start, what):
    """Package the first derivation of ``start(machine)`` as an outcome."""
    m = _Machine(cfg, registry)
    try:
        found = m.first(start(m))
    except EvalError as exc:
        return Failure.from_error(exc)
    if found is None:
        return Failure.from_error(m.no_derivation(f"{what} has no derivation"))
    return Success(*found)


def evaluate(cfg: EngineConfig, registry, program, expr):
    """Evaluate *expr* against *program*.

    The program's own imports and queries are processed first.  Returns a
    :class:`Success` for the first derivation found or a :class:`Failure`;
    registry problems (missing module, import cycle, bad module file) are
    raised.
    """

    def start(m: _Machine):
        return (_EVAL, _Env(m.close_first(program)), expr, 0, (), None)

    return _first(cfg, registry, start, pretty(expr))


def iter_solutions(cfg: EngineConfig, registry, program, expr):
    """Yield every value *expr* evaluates to, in search order.

    Errors that end the search are raised when reached.
    """
    m = _Machine(cfg, registry)
    for v, _ in m.run((_EVAL, _Env(m.close_first(program)), expr, 0, (), None)):
        yield v


def solutions(cfg: EngineConfig, registry, program, expr, limit=None) -> list:
    """Every value *expr* evaluates to, in search order (at most *limit*)."""
    out = []
    for v in iter_solutions(cfg, registry, program, expr):
        out.append(v)
        if limit is not None and len(out) >= limit:
            break
    return out


def backchain(cfg: EngineConfig, registry, clauses, full_program, call: Call, depth: int = 0):
    """Resolve the ground *call* with the definitions in *clauses*, evaluating bodies in *full_program*.

    *depth* counts the calls already enclosing this one.
    """
    values = tuple(a.value for a in call.args)
    return _first(
        cfg, registry,
        lambda m: (_CALL, _Env(clauses), _Env(full_program), call.head, values, depth - 1, (), None),
        pretty(call),
    )


def eval_di(cfg: EngineConfig, registry, program, decls, body, depth: int = 0):
    """Evaluate ``decls -o body`` against *program*, which must be free of imports and queries."""
    return _first(
        cfg, registry,
        lambda m: (_CLOSE, _Env(program), tuple(decls), (), body, (), depth, (), None),
        pretty(DI(tuple(decls), body)),
    )


def close_declarations(cfg: EngineConfig, registry, decls) -> tuple:
    """Splice imports and answer queries in *decls*; raises :class:`EvalError` on failure."""
    return _Machine(cfg, registry).close_first(tuple(decls))


def preprocess(cfg: EngineConfig, registry, program) -> tuple:
    """Replace every query in *program* by the fact it instantiates to.

    Result variables are substituted into the declarations that follow.
    Imports and definitions are left as they are.  Raises
    :class:`EvalError` if a query cannot be answered.
    """
    return _Machine(cfg, registry).preprocess(tuple(program))
