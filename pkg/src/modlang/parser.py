"""Recursive-descent parser for module files, declarations and expressions.

Grammar (``%`` starts a comment running to end of line)::

    file     := header decl*
    header   := "/" IDENT "="
    decl     := (import | fundef | query) "."
    import   := "/" IDENT
    fundef   := IDENT "(" patterns? ")" "=" expr | IDENT "=" expr
    query    := "(" IDENT "(" terms? ")" "=" IDENT ")" "^" "/" IDENT
    expr     := decls "-o" expr | cmp
    decls    := ante ("&" ante)*
    cmp      := sum (("<" | "<=" | "==") sum)?
    sum      := prod (("+" | "-") prod)*
    prod     := primary ("*" primary)*
    primary  := INT | "-" INT | "true" | "false" | "'" IDENT | "T"
              | IDENT "(" exprs? ")" | IDENT | "(" expr ")"
    pattern  := INT | "-" INT | "true" | "false" | "'" IDENT | IDENT | IDENT "+" INT

Inside a DI antecedent (``ante``) a definition body is parsed at ``cmp``
level so that ``&`` and ``-o`` end it; parenthesise a DI used there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    COMPARISONS,
    DI,
    RESERVED,
    Bool,
    Call,
    Const,
    FunDef,
    HeadPattern,
    Import,
    Int,
    Query,
    Succ,
    Sym,
    Top,
    Var,
    int_from_text,
)


class ParseError(Exception):
    def __init__(self, line: int, column: int, expected, found: str, message: str = ""):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        detail = message or "expected " + " or ".join(sorted(self.expected))
        super().__init__(f"{line}:{column}: {detail}, found {found}")


class DuplicateHeaderError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, SYM, EOF, or the punctuation itself
    text: str
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.kind == "EOF" else repr(self.text)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<INT>[0-9]+)
  | (?P<IDENT>[a-zA-Z_][a-zA-Z0-9_]*)
  | (?P<SYM>'[a-zA-Z_][a-zA-Z0-9_]*)
  | (?P<DI>-o(?![a-zA-Z0-9_]))
  | (?P<op><=|==|[-+*<=/^&().,])
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(line, col, {"a token"}, repr(source[pos]), "unexpected character")
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            if kind == "DI":
                kind = "-o"
            elif kind == "op":
                kind = text
            tokens.append(Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + text.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Backtrack(Exception):
    pass


class Parser:
    """One parser instance per source text.

    Alternatives are tried by saving and restoring ``pos``; the furthest
    failure seen is what gets reported.
    """

    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.best = -1
        self.expected: set = set()
        self.message = ""

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def fail(self, *expected, message: str = ""):
        if self.pos > self.best:
            self.best, self.expected, self.message = self.pos, set(expected), message
        elif self.pos == self.best:
            self.expected.update(expected)
            if message and not self.message:
                self.message = message
        raise _Backtrack

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail(kind)
        t = self.tok
        self.pos += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.pos += 1
            return True
        return False

    def ident(self) -> str:
        t = self.tok
        if t.kind != "IDENT" or t.text in RESERVED:
            self.fail("identifier")
        self.pos += 1
        return t.text

    def error(self) -> ParseError:
        t = self.tokens[max(self.best, 0)]
        return ParseError(t.line, t.col, self.expected or {"input"}, t.describe(), self.message)

    def attempt(self, fn, *args):
        start = self.pos
        try:
            return fn(*args)
        except _Backtrack:
            self.pos = start
            return None

    def finish(self, fn):
        try:
            result = fn()
            self.expect("EOF")
            return result
        except _Backtrack:
            raise self.error() from None

    # -- literals and patterns ----------------------------------------------

    def literal(self):
        t = self.tok
        if t.kind == "INT":
            self.pos += 1
            return Const(Int(int_from_text(t.text)))
        if t.kind == "-" and self.peek().kind == "INT":
            self.pos += 2
            return Const(Int(-int_from_text(self.tokens[self.pos - 1].text)))
        if t.kind == "IDENT" and t.text in ("true", "false"):
            self.pos += 1
            return Const(Bool(t.text == "true"))
        if t.kind == "SYM":
            self.pos += 1
            return Const(Sym(t.text[1:]))
        return None

    def term(self, allow_succ: bool):
        lit = self.literal()
        if lit is not None:
            return lit
        name = self.ident()
        if allow_succ and self.tok.kind == "+" and self.peek().kind == "INT":
            self.pos += 1
            offset = int(self.expect("INT").text)
            if offset < 1:
                self.pos -= 1
                self.fail(message="successor offset must be positive")
            return Succ(name, offset)
        return Var(name)

    def head(self, allow_succ: bool) -> HeadPattern:
        name = self.ident()
        self.expect("(")
        params = []
        if self.tok.kind != ")":
            params.append(self.term(allow_succ))
            while self.accept(","):
                params.append(self.term(allow_succ))
        self.expect(")")
        try:
            return HeadPattern(name, tuple(params))
        except ValueError as exc:
            self.fail(message=str(exc))

    # -- declarations ----------------------------------------------------

    def import_decl(self) -> Import:
        self.expect("/")
        return Import(self.ident())

    def query(self) -> Query:
        self.expect("(")
        head = self.head(allow_succ=False)
        self.expect("=")
        result = self.ident()
        self.expect(")")
        self.expect("^")
        self.expect("/")
        module = self.ident()
        try:
            return Query(head, result, module)
        except ValueError as exc:
            self.fail(message=str(exc))

    def fundef(self, nested: bool) -> FunDef:
        if self.peek().kind == "(":
            head = self.head(allow_succ=True)
        else:
            head = HeadPattern(self.ident())
        self.expect("=")
        body = self.cmp() if nested else self.expr()
        return FunDef(head, body)

    def decl(self, nested: bool):
        kind = self.tok.kind
        if kind == "/":
            return self.import_decl()
        if kind == "(":
            return self.query()
        if kind == "IDENT":
            return self.fundef(nested)
        self.fail("'/'", "'('", "identifier")

    def antecedent(self) -> tuple:
        decls = [self.decl(nested=True)]
        while self.accept("&"):
            decls.append(self.decl(nested=True))
        self.expect("-o")
        return tuple(decls)

    # -- expressions -----------------------------------------------------

    def expr(self):
        decls = self.attempt(self.antecedent)
        if decls is not None:
            return DI(decls, self.expr())
        return self.cmp()

    def cmp(self):
        left = self.sum()
        if self.tok.kind in COMPARISONS:
            op = self.tok.kind
            self.pos += 1
            left = Call(op, (left, self.sum()))
            if self.tok.kind in COMPARISONS:
                self.fail(message="comparisons do not chain; add parentheses")
        return left

    def sum(self):
        left = self.prod()
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.pos += 1
            left = Call(op, (left, self.prod()))
        return left

    def prod(self):
        left = self.primary()
        while self.accept("*"):
            left = Call("*", (left, self.primary()))
        return left

    def primary(self):
        lit = self.literal()
        if lit is not None:
            return lit
        t = self.tok
        if t.kind == "IDENT" and t.text == "T":
            self.pos += 1
            return Top()
        if t.kind == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "IDENT" and t.text not in RESERVED:
            self.pos += 1
            if self.accept("("):
                args = []
                if self.tok.kind != ")":
                    args.append(self.expr())
                    while self.accept(","):
                        args.append(self.expr())
                self.expect(")")
                return Call(t.text, tuple(args))
            return Var(t.text)
        self.fail("integer", "identifier", "'('", "'T'", "'true'", "'false'")

    # -- top-level forms -------------------------------------------------

    def declarations(self) -> tuple:
        decls = []
        while self.tok.kind != "EOF":
            if self.tok.kind == "/" and self.peek(2).kind == "=":
                t = self.tok
                raise DuplicateHeaderError(
                    t.line, t.col, {"declaration"}, f"header '/{self.peek().text} ='",
                    "a module file has exactly one header",
                )
            decls.append(self.decl(nested=False))
            self.expect(".")
        return tuple(decls)

    def module_file(self):
        self.expect("/")
        name = self.ident()
        self.expect("=")
        return name, self.declarations()


def parse_expr(source: str):
    """Parse a single expression."""
    p = Parser(source)
    return p.finish(p.expr)


def parse_decl(source: str):
    """Parse one declaration; the trailing ``.`` is optional."""
    p = Parser(source)

    def one():
        d = p.decl(nested=False)
        p.accept(".")
        return d

    return p.finish(one)


def parse_program(source: str) -> tuple:
    """Parse a header-less sequence of ``.``-terminated declarations."""
    p = Parser(source)
    return p.finish(p.declarations)


def parse_module_file(source: str):
    """Parse a ``.mod`` file, returning ``(module_name, program)``."""
    p = Parser(source)
    return p.finish(p.module_file)
