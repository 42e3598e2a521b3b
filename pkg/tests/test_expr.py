from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import elements
from weylinv.coeff import GF, QQ, ZZ
from weylinv.errors import ExponentTooLarge, ParseError, UnknownVariable
from weylinv.expr import Mul, Neg, Pow, RationalLiteral, Var, parse, parse_ast
from weylinv.weyl import AlgebraSignature, render

A1 = AlgebraSignature(1, 0, QQ)
A2 = AlgebraSignature(2, 0, QQ)
x, y = A1.gens()


def test_noncommutative_product():
    assert parse("x2*x1", A1) == x * y + 1


def test_square_of_sum():
    assert parse("(x1 + x2)^2", A1) == x**2 + 2 * x * y + y**2 + 1


def test_rational_literal():
    assert parse("3/2 * x1", A1) == x.scale(Fraction(3, 2))
    assert parse("1/2", AlgebraSignature(1, 0, GF(5))).constant() == 3


def test_aliases():
    assert parse("y1*x1", A1) == parse("x2*x1", A1)
    assert parse("y2", A2) == A2.gen(4)


def test_unary_minus_and_power():
    assert parse("-x1^2", A1) == -(x**2)
    assert parse("(-x1)^2", A1) == x**2
    assert parse("--x1", A1) == x
    assert parse_ast("-x1^2", A1) == Neg(Pow(Var(1), 2))
    assert parse_ast("1/2*x2", A1) == Mul(RationalLiteral(1, 2), Var(2))


def test_render_examples():
    assert render(x * y + 1) == "x1*x2 + 1"
    assert render(A1.zero()) == "0"


@pytest.mark.parametrize(
    "text, offset",
    [("x1 +", 4), ("x1 ** 2", 4), ("(x1", 3), ("x1^2^3", 4), ("x1 $ x2", 3), ("x1^y", 3), ("1/0", 2)],
)
def test_syntax_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text, A1)
    assert info.value.pos == offset


def test_byte_offsets_count_utf8():
    with pytest.raises(ParseError) as info:
        parse("x1 + é", A1)
    assert info.value.pos == 5


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse("x3", A1)
    with pytest.raises(UnknownVariable):
        parse("y2", A1)
    with pytest.raises(UnknownVariable):
        parse("z", A1)


def test_exponent_cap():
    with pytest.raises(ExponentTooLarge):
        parse("x1^1000001", A1)


def test_rational_in_integers_rejected():
    with pytest.raises(ParseError):
        parse("1/2", AlgebraSignature(1, 0, ZZ))


SIGS = [A1, A2, AlgebraSignature(1, 1, QQ), AlgebraSignature(2, 0, ZZ), AlgebraSignature(2, 1, GF(7))]


@pytest.mark.parametrize("sig", SIGS, ids=lambda s: f"n{s.n}m{s.m}{s.ring}")
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_render_parse_round_trip(sig, data):
    a = data.draw(elements(sig, max_deg=5))
    text = render(a)
    assert parse(text, sig) == a
    assert render(parse(text, sig)) == text
