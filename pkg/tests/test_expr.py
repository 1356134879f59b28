import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_polynomial
from tcalg.algebra import BASE, Params, Polynomial
from tcalg.errors import InvalidGeneratorError, ResourceLimitError, TCAlgError
from tcalg.expr import Atom, BinOp, ExprSyntaxError, Int, Neg, Pow, evaluate, format, parse

P = Params(3, 2, 1, 2)


def test_parse_difference():
    assert parse("w[1](2,3) - w[2](2,3)", P) == BinOp("-", Atom(1, 2, 3), Atom(2, 2, 3))


def test_parse_power_and_precedence():
    tree = parse("(w[2](1,3) - w[1](1,3))^2", P)
    assert tree == Pow(BinOp("-", Atom(2, 1, 3), Atom(1, 1, 3)), 2)
    assert parse("-2*w(1,2)+1", P) == BinOp("+", BinOp("*", Neg(Int(2)), Atom(BASE, 1, 2)), Int(1))


def test_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse("w(1,2", P)
    assert info.value.pos == 5
    assert "end of input" in str(info.value)


@pytest.mark.parametrize("text", ["", "w", "w[1]", "(1", "1 2", "w(1,2))", "w(1;2)", "2^", "w(a,b)"])
def test_syntax_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse(text, P)


def test_invalid_atom():
    with pytest.raises(InvalidGeneratorError):
        parse("w(2,1)", P)
    with pytest.raises(InvalidGeneratorError):
        parse("w[3](1,3)", P)


def test_evaluate_examples():
    assert format(evaluate("w(1,2)*0 + w(1,2)", P)) == "w(1,2)"
    assert format(evaluate("(w[2](1,3)-w[1](1,3))^2", P)) == "-2*w[1](1,3)*w[2](1,3)"
    assert evaluate("(w[2](1,3)-w[1](1,3))^2", Params(2, 2, 1, 2)).is_zero()
    assert evaluate("(w(1,2) + 1)^0", P) == 1


def test_format_examples():
    assert format(Polynomial.zero(P)) == "0"
    p = -2 * Polynomial.generator(P, BASE, 1, 2) * Polynomial.generator(P, 1, 1, 3)
    assert format(p) == "-2*w(1,2)*w[1](1,3)"
    assert format(evaluate("w(1,3)*w(2,3)", Params(3, 3, 1, 2))) == "w(1,2)*w(2,3) - w(1,2)*w(1,3)"
    assert format(evaluate("3 - w(1,2)", P)) == "3 - w(1,2)"


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(TCAlgError):
        parse("(" * 5000 + "1" + ")" * 5000, P)
    with pytest.raises(ResourceLimitError):
        evaluate("+".join(["1"] * 5000), P)


@pytest.mark.parametrize("d,m,n,r", [(2, 2, 2, 2), (3, 3, 1, 3), (4, 1, 2, 1)])
def test_round_trip_seeded(d, m, n, r):
    Q = Params(d, m, n, r)
    rng = random.Random(11)
    for _ in range(200):
        p = random_polynomial(rng, Q, max_terms=4, max_len=4)
        assert evaluate(parse(format(p), Q), Q) == p


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="w[](),+-*^0123456789 ", max_size=30))
def test_parser_total(text):
    try:
        parse(text, P)
    except (ExprSyntaxError, InvalidGeneratorError):
        pass
