import pytest
from hypothesis import given, settings

from bsideal.core import MultiPoly, Signature, to_string
from bsideal.parser import ParseError, parse_poly, parse_s_poly, parse_tuple, x_signature_for

from strategies import polys

XYZ = Signature.build(x=("x", "y", "z"))


def test_cusp():
    p = parse_poly("x^2 + y^3")
    assert p.signature.names == ("x", "y")
    assert str(p) == "y^3 + x^2"


def test_difference_of_squares():
    assert str(parse_poly("(x+y)*(x-y)")) == "x^2 - y^2"


def test_rational_literals_and_unary_minus():
    assert str(parse_poly("-1/3*x + (-(y))^2")) == "y^2 - 1/3*x"


def test_indexed_variables():
    assert parse_poly("x1*x4").signature.names == ("x1", "x2", "x3", "x4")


@pytest.mark.parametrize("src, message, position", [
    ("x^-1", "negative exponent", 1),
    ("x^1/2", "fractional exponent", 2),
    ("2x", "implicit multiplication", 1),
    ("x y", "implicit multiplication", 2),
    ("(x + y", "expected ')'", 6),
    ("x + ", "unexpected", 4),
    ("x # y", "unexpected character", 2),
])
def test_syntax_errors(src, message, position):
    with pytest.raises(ParseError) as err:
        parse_poly(src)
    assert message in err.value.message
    assert err.value.position == position


@pytest.mark.parametrize("src", ["s + x", "t1", "d_x", "w"])
def test_reserved_or_unknown_names(src):
    with pytest.raises(ParseError, match="unknown variable"):
        parse_poly(src)


def test_mixed_naming_rejected():
    with pytest.raises(ParseError):
        x_signature_for(["x + x2"])


def test_tuple_shares_signature():
    f, g = parse_tuple(["x", "x*z"])
    assert f.signature == g.signature == XYZ


def test_s_polynomials():
    assert str(parse_s_poly("(s1+1)*(s2+1)", 2)) == "s1*s2 + s1 + s2 + 1"
    with pytest.raises(ParseError):
        parse_s_poly("s", 2)


@settings(max_examples=100)
@given(polys(XYZ, max_exp=3, max_terms=5))
def test_round_trip(p):
    assert parse_poly(to_string(p), XYZ) == p
    assert to_string(parse_poly(to_string(p), XYZ)) == to_string(p)
