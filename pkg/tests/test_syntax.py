import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gen
from harness import SHIPPED_MODULES
from modlang import (
    DI, Bool, Call, Const, FunDef, HeadPattern, Import, Int, ParseError, Query, Succ, Sym, Top, Var,
    parse_decl, parse_expr, parse_module_file, parse_program, pretty, pretty_module,
)
from modlang.parser import DuplicateHeaderError
from modlang.syntax import int_text


def c(n):
    return Const(Int(n))


class TestParseExpr:
    def test_integer_literal(self):
        assert parse_expr("42") == c(42)

    def test_nested_imports(self):
        assert parse_expr("/mf -o /mp -o prime(fib(n))") == DI(
            (Import("mf"),), DI((Import("mp"),), Call("prime", (Call("fib", (Var("n"),)),))))

    def test_query_antecedent(self):
        q = Query(HeadPattern("fib", (Var("n"),)), "v", "mf")
        assert parse_expr("(fib(n)=v)^/mf -o prime(v)") == DI((q,), Call("prime", (Var("v"),)))

    def test_nullary_call_is_not_a_variable(self):
        assert parse_expr("h()") == Call("h", ())
        assert parse_expr("h") == Var("h")

    def test_top_and_booleans(self):
        assert parse_expr("T") == Top()
        assert parse_expr("true") == Const(Bool(True))
        assert parse_expr("'T") == Const(Sym("T"))

    def test_operator_precedence(self):
        assert parse_expr("1 + 2 * 3 < 4 - 1") == Call("<", (
            Call("+", (c(1), Call("*", (c(2), c(3))))), Call("-", (c(4), c(1)))))

    def test_subtraction_is_left_associative(self):
        assert parse_expr("5 - 2 - 1") == Call("-", (Call("-", (c(5), c(2))), c(1)))

    def test_negative_literal(self):
        assert parse_expr("-3") == c(-3)
        assert parse_expr("2 - -3") == Call("-", (c(2), c(-3)))

    def test_conjunctive_antecedent(self):
        e = parse_expr("k = 5 & /mf -o k()")
        assert e == DI((FunDef(HeadPattern("k"), c(5)), Import("mf")), Call("k"))

    def test_comments_and_crlf(self):
        assert parse_expr("1 +\r\n% a comment\r\n 2") == Call("+", (c(1), c(2)))

    def test_huge_integer(self):
        n = -(7 ** 9000)  # beyond the interpreter's default int/str digit limit
        text = int_text(n)
        assert text.startswith("-") and len(text) > 7000
        assert parse_expr(text) == c(n)
        assert pretty(c(n)) == text

    @pytest.mark.parametrize("src", ["", "1 +", "f(", "(1", "1 < 2 < 3", "/m", "x -o 1", "f(x) = 1",
                                     "true(1)", "'", "1 2", "(f(x+1)=v)^/m -o v", "(f(v)=v)^/m -o 1"])
    def test_malformed_input_raises_parse_error(self, src):
        with pytest.raises(ParseError) as info:
            parse_expr(src)
        assert info.value.line >= 1 and info.value.column >= 1

    def test_error_reports_position_and_expectation(self):
        with pytest.raises(ParseError) as info:
            parse_expr("f(1,\n  )")
        err = info.value
        assert (err.line, err.column) == (2, 3)
        assert err.expected

    def test_repeated_pattern_variable_rejected(self):
        with pytest.raises(ParseError):
            parse_decl("f(x, x) = 1.")


class TestModuleFiles:
    def test_fib_module(self):
        name, prog = parse_module_file("/mf = fib(1) = 1. fib(2) = 1. fib(n+2) = fib(n) + fib(n+1).")
        assert name == "mf"
        assert [d.head for d in prog] == [
            HeadPattern("fib", (c(1),)), HeadPattern("fib", (c(2),)), HeadPattern("fib", (Succ("n", 2),))]
        assert prog[2].body == Call("+", (Call("fib", (Var("n"),)), Call("fib", (Call("+", (Var("n"), c(1))),))))

    def test_empty_module(self):
        assert parse_module_file("/empty =") == ("empty", ())

    def test_prime_entry(self):
        name, prog = parse_module_file("/mp = prime(n) = prime_aux(n, n - 1).")
        assert name == "mp"
        assert prog == (FunDef(HeadPattern("prime", (Var("n"),)),
                               Call("prime_aux", (Var("n"), Call("-", (Var("n"), c(1)))))),)

    def test_duplicate_header(self):
        with pytest.raises(DuplicateHeaderError):
            parse_module_file("/a = f = 1.\n/b = g = 2.")

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_module_file("f = 1.")

    def test_top_level_query_and_nullary_definition(self):
        _, prog = parse_module_file("/m = (fib(3)=v)^/mf. k = v.")
        assert prog == (Query(HeadPattern("fib", (c(3),)), "v", "mf"), FunDef(HeadPattern("k"), Var("v")))

    @given(st.randoms(use_true_random=False))
    @settings(max_examples=200, deadline=None)
    def test_order_preserved(self, rng):
        prog = gen.program(rng)
        _, parsed = parse_module_file(pretty_module("m", prog))
        assert list(parsed) == list(prog)


class TestPretty:
    def test_examples(self):
        assert pretty(c(7)) == "7"
        assert pretty(Top()) == "T"
        assert pretty(FunDef(HeadPattern("fib", (c(3),)), c(2))) == "fib(3) = 2."

    def test_query_and_import(self):
        assert pretty(parse_decl("(fib(n) = v)^/mf")) == "(fib(n)=v)^/mf."
        assert pretty(Import("mp")) == "/mp."

    def test_di_body_inside_antecedent_is_parenthesised(self):
        e = DI((FunDef(HeadPattern("f"), DI((Import("m"),), c(1))),), Call("f"))
        assert pretty(e) == "f = (/m -o 1) -o f()"
        assert parse_expr(pretty(e)) == e

    def test_operator_arity_checked(self):
        with pytest.raises(ValueError):
            pretty(Call("+", (c(1),)))


@given(st.randoms(use_true_random=False))
@settings(max_examples=500, deadline=None)
def test_expression_round_trip(rng):
    e = gen.expr(rng)
    assert parse_expr(pretty(e)) == e


@given(st.randoms(use_true_random=False))
@settings(max_examples=300, deadline=None)
def test_declaration_and_program_round_trip(rng):
    prog = gen.program(rng, size=rng.randint(1, 4))
    assert parse_program(pretty(prog)) == prog
    for d in prog:
        assert parse_decl(pretty(d)) == d


@pytest.mark.parametrize("path", sorted(SHIPPED_MODULES), ids=lambda p: p.name)
def test_shipped_modules_round_trip(path):
    name, prog = parse_module_file(path.read_text(encoding="utf-8"))
    assert name == path.stem
    assert parse_module_file(pretty_module(name, prog)) == (name, prog)


ALPHABET = st.sampled_from(list("abfxT01239 ()=+-*<./^&%'\n,_o") + ["-o", "<=", "==", "true", "'a"])


@given(st.lists(ALPHABET, max_size=40).map("".join))
@settings(max_examples=2000, deadline=None)
def test_parser_is_total(src):
    for fn in (parse_expr, parse_decl, parse_program, parse_module_file):
        try:
            fn(src)
        except ParseError:
            pass
