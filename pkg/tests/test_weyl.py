from fractions import Fraction

import pytest
from hypothesis import given, settings

from bsideal.parser import parse_poly, parse_tuple
from bsideal.weyl import (
    TwistedElement,
    WeightError,
    WeylElement,
    WeylSignature,
    substitute_s,
    weyl_apply_twisted,
)

from strategies import operators

SIG = WeylSignature(2, 1)
EXT = WeylSignature(1, 1, extended=True)


def _commutator_with_d(P: WeylElement, i: int) -> WeylElement:
    """d_i * P - P * d_i computed directly: differentiate coefficients in x_i."""
    xi = SIG.x_index(i)
    out = {}
    for mono, c in P.terms.items():
        if mono[xi]:
            e = list(mono)
            e[xi] -= 1
            out[tuple(e)] = out.get(tuple(e), 0) + c * mono[xi]
    return WeylElement(SIG, out)


def _commutator_with_x(P: WeylElement, i: int) -> WeylElement:
    """P * x_i - x_i * P: differentiate in d_i."""
    di = SIG.d_index(i)
    out = {}
    for mono, c in P.terms.items():
        if mono[di]:
            e = list(mono)
            e[di] -= 1
            out[tuple(e)] = out.get(tuple(e), 0) + c * mono[di]
    return WeylElement(SIG, out)


def test_basic_relation():
    x, d = SIG.x(0), SIG.d(0)
    assert str(d * x) == "x*d_x + 1"
    assert str(d * d * x) == "x*d_x^2 + 2*d_x"
    assert (x * d) ** 2 == x * x * d * d + x * d
    assert SIG.d(1) * x == x * SIG.d(1)


def test_s_is_central():
    s = SIG.s()
    for g in (SIG.x(0), SIG.d(0), SIG.x(1), SIG.d(1)):
        assert s * g == g * s


def test_operator_string_groups_s():
    P = SIG.x(0) * SIG.d(0) - SIG.s() - 1
    assert str(P) == "x*d_x - s - 1"


@settings(max_examples=400)
@given(operators(SIG), operators(SIG), operators(SIG))
def test_associativity(P, Q, R):
    assert (P * Q) * R == P * (Q * R)


@settings(max_examples=150)
@given(operators(SIG, max_exp=3))
def test_commutator_with_d(P):
    for i in range(2):
        assert SIG.d(i) * P - P * SIG.d(i) == _commutator_with_d(P, i)


@settings(max_examples=150)
@given(operators(SIG, max_exp=3))
def test_commutator_with_x(P):
    for i in range(2):
        assert P * SIG.x(i) - SIG.x(i) * P == _commutator_with_x(P, i)


@settings(max_examples=100)
@given(operators(SIG))
def test_s_central_random(P):
    assert P * SIG.s() == SIG.s() * P


F_ACTION = tuple(parse_tuple(["x^2 + y", "x - y"]))
SIG2 = WeylSignature(2, 2)


@settings(max_examples=200)
@given(operators(SIG2, max_exp=1, max_terms=3), operators(SIG2, max_exp=1, max_terms=3))
def test_action_compatibility(P, Q):
    u = TwistedElement.power(F_ACTION, SIG2.poly_signature(), (1, 0))
    lhs = weyl_apply_twisted(P * Q, F_ACTION, u)
    rhs = weyl_apply_twisted(P, F_ACTION, weyl_apply_twisted(Q, F_ACTION, u))
    assert lhs == rhs


def test_action_examples():
    sig = WeylSignature(1, 1)
    f = parse_poly("x^2")
    fs1 = TwistedElement.power((f,), sig.poly_signature(), (1,))
    b = weyl_apply_twisted(sig.d() * sig.d() * Fraction(1, 4), (f,), fs1)
    expected = parse_poly("(s+1)*(s+1/2)", sig.poly_signature())
    assert b == TwistedElement((f,), expected, (0,))


def test_laplacian_on_sum_of_squares():
    sig = WeylSignature(2, 1)
    f = parse_poly("x^2 + y^2")
    lap = (sig.d(0) * sig.d(0) + sig.d(1) * sig.d(1)) * Fraction(1, 4)
    out = weyl_apply_twisted(lap, (f,), TwistedElement.power((f,), sig.poly_signature(), (1,)))
    assert out == TwistedElement((f,), parse_poly("(s+1)^2", sig.poly_signature()), (0,))


def test_substitute_s():
    t, dt = EXT.t(), EXT.dt()
    assert str(substitute_s(dt * t)) == "-s"
    assert str(substitute_s(t * dt)) == "-s - 1"
    # t^2 d_t^2 = (t d_t)(t d_t - 1)
    assert substitute_s(t * t * dt * dt) == substitute_s(t * dt) * (substitute_s(t * dt) - 1)


def test_substitute_s_rejects_nonzero_weight():
    with pytest.raises(WeightError):
        substitute_s(EXT.t())
