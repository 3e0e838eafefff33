"""Abstract syntax for the module language and its pretty-printer.

Expressions::

    E ::= c | x | h(E, ..., E) | D -o E | T

Declarations::

    D ::= /m | f(t1, ..., tn) = E | (f(t1, ..., tn) = v)^/m | D & D

A conjunction of declarations is kept as a flat tuple; order matters for
clause search, associativity does not.

Values are wrapped in small frozen dataclasses rather than using Python's
``int``/``bool`` directly, because ``True == 1`` would make ``Bool`` and
``Int`` constants compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

IDENT_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")
RESERVED = frozenset({"true", "false", "T"})

# Binary operator sugar: each maps to a builtin call with the operator as head.
# Larger number binds tighter; comparisons do not associate.
BINOPS = {"<": 1, "<=": 1, "==": 1, "+": 2, "-": 2, "*": 3}
COMPARISONS = frozenset({"<", "<=", "=="})


def is_ident(name: str) -> bool:
    return bool(IDENT_RE.match(name)) and name not in RESERVED


# -- values -----------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int

    def __post_init__(self):
        if type(self.value) is not int:
            raise TypeError(f"Int expects a Python int, got {self.value!r}")


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Sym:
    name: str


Value = Union[Int, Bool, Sym]

#: The value of ``T``.
TOP_VALUE = Sym("T")


_CHUNK = 10**1000


def int_text(n: int) -> str:
    """Decimal text of *n*, also past CPython's int-to-str digit limit."""
    if -_CHUNK < n < _CHUNK:
        return str(n)
    if n < 0:
        return "-" + int_text(-n)
    hi, lo = divmod(n, _CHUNK)
    return int_text(hi) + str(lo).zfill(1000)


def int_from_text(digits: str) -> int:
    """Inverse of :func:`int_text` for unsigned digit strings."""
    n = 0
    for i in range(0, len(digits), 1000):
        part = digits[i:i + 1000]
        n = n * 10 ** len(part) + int(part)
    return n


def show_value(v: Value) -> str:
    """Render a value the way the CLI prints results."""
    if isinstance(v, Int):
        return int_text(v.value)
    if isinstance(v, Bool):
        return "true" if v.value else "false"
    return v.name


# -- expressions ------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Value


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Call:
    head: str
    args: tuple = ()


@dataclass(frozen=True)
class DI:
    """``decls -o body``: evaluate *body* with *decls* added to the program."""

    decls: tuple
    body: "Expr"

    def __post_init__(self):
        if not self.decls:
            raise ValueError("DI expression needs at least one declaration")


@dataclass(frozen=True)
class Top:
    pass


Expr = Union[Const, Var, Call, DI, Top]


# -- patterns and declarations ---------------------------------------------


@dataclass(frozen=True)
class Succ:
    """Pattern ``var+offset``; matches an Int n >= offset, binding var to n - offset."""

    var: str
    offset: int

    def __post_init__(self):
        if self.offset < 1:
            raise ValueError("successor pattern offset must be >= 1")


PatternTerm = Union[Const, Var, Succ]


def pattern_vars(term) -> tuple:
    if isinstance(term, Var):
        return (term.name,)
    if isinstance(term, Succ):
        return (term.var,)
    return ()


@dataclass(frozen=True)
class HeadPattern:
    function: str
    params: tuple = ()

    def __post_init__(self):
        seen = set()
        for p in self.params:
            for name in pattern_vars(p):
                if name in seen:
                    raise ValueError(f"variable {name!r} repeated in head of {self.function}")
                seen.add(name)

    @property
    def arity(self) -> int:
        return len(self.params)

    def variables(self) -> frozenset:
        return frozenset(n for p in self.params for n in pattern_vars(p))


@dataclass(frozen=True)
class Import:
    module: str


@dataclass(frozen=True)
class FunDef:
    head: HeadPattern
    body: Expr


@dataclass(frozen=True)
class Query:
    """``(f(t1, ..., tn) = result)^/module``.  Terms are constants or variables."""

    head: HeadPattern
    result: str
    module: str

    def __post_init__(self):
        for p in self.head.params:
            if isinstance(p, Succ):
                raise ValueError("query arguments must be constants or variables")
        if self.result in self.head.variables():
            raise ValueError(f"query result variable {self.result!r} occurs in its arguments")

    def is_ground(self) -> bool:
        return all(isinstance(p, Const) for p in self.head.params)


Decl = Union[Import, FunDef, Query]
Program = tuple  # tuple[Decl, ...]


# -- pretty printing ----------------------------------------------------------


def _const(v: Value) -> str:
    if isinstance(v, Sym):
        return "'" + v.name
    return show_value(v)


def _is_binop(e) -> bool:
    return isinstance(e, Call) and e.head in BINOPS and len(e.args) == 2


def _operand(e, parent_prec: int, right: bool) -> str:
    text = _expr(e)
    if isinstance(e, DI):
        return f"({text})"
    if _is_binop(e):
        prec = BINOPS[e.head]
        if prec < parent_prec or (prec == parent_prec and (right or prec == 1)):
            return f"({text})"
    return text


def _expr(e) -> str:
    if isinstance(e, Const):
        return _const(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Top):
        return "T"
    if isinstance(e, Call):
        if _is_binop(e):
            prec = BINOPS[e.head]
            left = _operand(e.args[0], prec, right=False)
            right = _operand(e.args[1], prec, right=True)
            return f"{left} {e.head} {right}"
        if e.head in BINOPS:
            raise ValueError(f"operator {e.head!r} needs exactly two arguments")
        return f"{e.head}({', '.join(_expr(a) for a in e.args)})"
    if isinstance(e, DI):
        return f"{pretty_antecedent(e.decls)} -o {_expr(e.body)}"
    raise TypeError(f"not an expression: {e!r}")


def _term(t) -> str:
    if isinstance(t, Succ):
        return f"{t.var}+{t.offset}"
    return _expr(t)


def _head(h: HeadPattern) -> str:
    return f"{h.function}({', '.join(_term(p) for p in h.params)})"


def _decl(d, nested: bool = False) -> str:
    if isinstance(d, Import):
        return "/" + d.module
    if isinstance(d, Query):
        return f"({_head(d.head)}={d.result})^/{d.module}"
    if isinstance(d, FunDef):
        lhs = d.head.function if not d.head.params else _head(d.head)
        body = _expr(d.body)
        # Inside an antecedent a definition body stops at `&` and `-o`.
        if nested and isinstance(d.body, DI):
            body = f"({body})"
        return f"{lhs} = {body}"
    raise TypeError(f"not a declaration: {d!r}")


def pretty_antecedent(decls) -> str:
    """Declarations joined by ``&`` as they appear before ``-o``."""
    return " & ".join(_decl(d, nested=True) for d in decls)


def pretty_module(name: str, program) -> str:
    """Render a module file: the ``/name =`` header followed by its declarations."""
    return f"/{name} =\n" + pretty(tuple(program))


def pretty(x) -> str:
    """Render an expression, a declaration (with its terminating ``.``) or a program.

    A program renders one declaration per line.  The output parses back to
    an identical structure with :func:`modlang.parser.parse_expr`,
    :func:`~modlang.parser.parse_decl` and :func:`~modlang.parser.parse_program`.
    """
    if isinstance(x, (Import, FunDef, Query)):
        return _decl(x) + "."
    if isinstance(x, tuple):
        return "".join(_decl(d) + ".\n" for d in x)
    if isinstance(x, (Int, Bool, Sym)):
        return _const(x)
    if isinstance(x, HeadPattern):
        return _head(x)
    return _expr(x)
