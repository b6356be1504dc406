from fractions import Fraction

import pytest

from bsideal.core import factored_string
from bsideal.parser import parse_poly, parse_s_poly, parse_tuple
from bsideal.pipeline import (
    InputTuple,
    InvalidInput,
    MultiIndex,
    annihilator_fs,
    bfunction,
    bs_ideal,
    lct,
    membership,
)
from bsideal.weyl import TwistedElement, weyl_apply_twisted


def tup(*srcs):
    return InputTuple(tuple(parse_tuple(srcs)))


@pytest.mark.parametrize("f, b", [
    ("x", "(s+1)"),
    ("x^2", "(s+1)*(s+1/2)"),
    ("x^3", "(s+1)*(s+2/3)*(s+1/3)"),
    ("x*y", "(s+1)^2"),
    ("x^2 + y^2", "(s+1)^2"),
    ("x^2 + y^3", "(s+7/6)*(s+1)*(s+5/6)"),
])
def test_bfunction(f, b):
    assert factored_string(bfunction(parse_poly(f))) == b


def test_annihilator_of_coordinate():
    assert [str(a) for a in annihilator_fs(tup("x"))] == ["x*d_x - s"]


def test_annihilator_operators_kill_fs():
    F = tup("x^2 + y^3")
    ann = annihilator_fs(F)
    assert "x*d_x + 2/3*y*d_y - 2*s" in [str(a) for a in ann]
    fs = TwistedElement.power(F.F, F.signature.poly_signature())
    assert all(weyl_apply_twisted(a, F.F, fs).numerator.is_zero() for a in ann)


@pytest.mark.parametrize("srcs, m, expected", [
    (("x", "y"), (1, 1), "(s1+1)*(s2+1)"),
    (("x", "y"), (1, 0), "(s1+1)"),
    (("x", "x + y"), (1, 1), "(s1+1)*(s2+1)"),
    (("x", "x*y"), (1, 1), "(s1+s2+1)*(s1+s2+2)*(s2+1)"),
    (("x", "x*y"), (1, 0), "(s1+s2+1)"),
    (("x", "x*y"), (0, 1), "(s1+s2+1)*(s2+1)"),
])
def test_bs_ideal(srcs, m, expected):
    B = bs_ideal(tup(*srcs), m)
    assert B.is_principal()
    assert factored_string(B.generators[0]) == expected


def test_repeated_polynomial_gives_both_factors():
    # setting s1 + s2 = -1 specializes to x^(-1), which has no polynomial
    # preimage, so (s1+s2+1) must divide every element of B
    B = bs_ideal(tup("x", "x"), (1, 1))
    assert factored_string(B.generators[0]) == "(s1+s2+1)*(s1+s2+2)"


def test_membership():
    F = tup("x", "y")
    assert membership(parse_s_poly("(s1+1)*(s2+1)*s1", 2), F, (1, 1))
    assert not membership(parse_s_poly("s1+1", 2), F, (1, 1))


def test_lct():
    assert lct(parse_poly("x^2 + y^3")) == Fraction(5, 6)
    assert lct(parse_poly("x*y")) == 1


@pytest.mark.parametrize("srcs, m", [
    (("x", "y"), (1,)),
    (("x", "y"), (-1, 1)),
    (("x", "1"), (0, 1)),
])
def test_invalid_multi_index(srcs, m):
    with pytest.raises(InvalidInput):
        bs_ideal(tup(*srcs), MultiIndex(m) if min(m) >= 0 else m)


def test_invalid_tuples():
    with pytest.raises(InvalidInput):
        InputTuple(())
    with pytest.raises(InvalidInput):
        tup("1", "2")
    with pytest.raises(InvalidInput):
        InputTuple((parse_poly("0"),))


def test_determinism():
    a = bs_ideal(tup("x", "x*y"), (1, 1)).generators
    b = bs_ideal(tup("x", "x*y"), (1, 1)).generators
    assert [str(g) for g in a] == [str(g) for g in b]
