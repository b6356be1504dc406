from fractions import Fraction

import pytest
from hypothesis import given, settings

from bsideal.core import (
    InexactDivision,
    LinearForm,
    MultiPoly,
    Signature,
    SignatureError,
    factored_string,
    linear_factorization,
    s_names,
    univariate_rational_roots,
    x_names,
)
from bsideal.parser import parse_poly, parse_s_poly

from strategies import polys

XY = Signature.build(x=("x", "y"))
S1 = Signature.build(s=("s",))
S2 = Signature.build(s=("s1", "s2"))


def test_variable_naming():
    assert x_names(2) == ("x", "y")
    assert x_names(4) == ("x1", "x2", "x3", "x4")
    assert s_names(1) == ("s",)
    assert s_names(3) == ("s1", "s2", "s3")


def test_expansion_and_canonical_string():
    p = parse_poly("(x+y)*(x-y)")
    assert str(p) == "x^2 - y^2"
    assert str(parse_poly("x^2 + 2*x*y - 1/3 + y*x")) == "x^2 + 3*x*y - 1/3"


def test_signature_mismatch_rejected():
    with pytest.raises(SignatureError):
        MultiPoly.var(XY, "x") + MultiPoly.var(S1, "s")


def test_division():
    p = parse_poly("x^3 - y^3", XY)
    q = parse_poly("x - y", XY)
    assert p.exact_divide(q) == parse_poly("x^2 + x*y + y^2", XY)
    with pytest.raises(InexactDivision):
        p.exact_divide(parse_poly("x + y", XY))


def test_diff_and_substitute():
    p = parse_poly("x^2*y + 3*y", XY)
    assert p.diff("x") == parse_poly("2*x*y", XY)
    assert p.substitute({"y": 2}) == parse_poly("2*x^2 + 6", XY)


def test_linear_factorization_constant():
    p = parse_s_poly("6*s^2 + 9*s + 3", 1)
    fac = linear_factorization(p)
    assert fac.constant == 3
    assert [(f.coefficients, f.constant) for f in fac.forms] == [((1,), 1), ((2,), 1)]
    assert fac.expand(S1) == p


def test_linear_factorization_keeps_irreducible_remainder():
    fac = linear_factorization(parse_s_poly("(s^2 + 1)*(s + 2)", 1))
    assert fac.remainder == parse_s_poly("s^2 + 1", 1)
    assert len(fac.forms) == 1


def test_linear_form_normalization():
    f = LinearForm.normalized([-2, -4], -6)
    assert (f.coefficients, f.constant) == ((1, 2), 3)


def test_rational_roots():
    b = parse_s_poly("(s+1)^2*(s+1/2)*(s^2+1)", 1)
    assert univariate_rational_roots(b) == [(Fraction(-1, 2), 1), (Fraction(-1), 2)]


@pytest.mark.parametrize("src, r, expected", [
    ("(s+1)*(s+1/2)", 1, "(s+1)*(s+1/2)"),
    ("(s+5/6)*(s+1)*(s+7/6)", 1, "(s+7/6)*(s+1)*(s+5/6)"),
    ("(s2+1)*(s1+1)", 2, "(s1+1)*(s2+1)"),
    ("2*s + 3", 1, "2*(s+3/2)"),
    ("s^2 + 1", 1, "(s^2+1)"),
])
def test_factored_string(src, r, expected):
    p = parse_s_poly(src, r)
    assert factored_string(p) == expected
    assert parse_s_poly(expected, r) == p


@settings(max_examples=60)
@given(polys(XY), polys(XY), polys(XY))
def test_ring_axioms(p, q, u):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * u == p * (q * u)
    assert p * (q + u) == p * q + p * u
    assert p - p == MultiPoly.zero(XY)


@settings(max_examples=60)
@given(polys(XY), polys(XY))
def test_division_recovers_product(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_divide(q) == p


@settings(max_examples=40)
@given(polys(S2, max_exp=1, max_terms=3), polys(S2, max_exp=1, max_terms=3))
def test_factorization_reconstructs(p, q):
    g = p * q
    if g.is_zero():
        return
    assert linear_factorization(g).expand(S2) == g
