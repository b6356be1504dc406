import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsideal.corpus import BFUNCTIONS, MULTI_INDICES, TUPLES
from bsideal.groebner import (
    Budget,
    OrderError,
    ResourceError,
    TermOrder,
    eliminate_block,
    is_member,
    left_buchberger,
    left_normal_form,
    s_pair,
    satisfies_buchberger_criterion,
    weight_zero_part,
)
from bsideal.parser import parse_tuple
from bsideal.pipeline import InputTuple, _homogenized_malgrange, annihilator_fs
from bsideal.weyl import WeylElement, WeylSignature

from strategies import operators

SIG = WeylSignature(1, 1)
x, d, s = SIG.x(), SIG.d(), SIG.s()


def strs(G):
    return [str(g) for g in G]


def test_single_generator():
    assert strs(left_buchberger([d], TermOrder(SIG))) == ["d_x"]


def test_unit_ideal():
    assert strs(left_buchberger([x, d], TermOrder(SIG))) == ["1"]


def test_euler_operator_with_x():
    # d_x * x = x*d_x + 1 puts s + 1 in the ideal
    G = left_buchberger([x * d - s, x], TermOrder(SIG))
    assert sorted(strs(G)) == ["s + 1", "x"]


def test_normal_forms():
    G = left_buchberger([d], TermOrder(SIG))
    assert str(left_normal_form(d * x, G)) == "1"
    G = left_buchberger([x * d - s], TermOrder(SIG))
    assert str(left_normal_form(s + 1, G)) == "s + 1"


def test_elimination():
    order = TermOrder.elimination(SIG, SIG.x_block + SIG.d_block)
    G = left_buchberger([x, x * d - s], order)
    assert strs(eliminate_block(G, SIG.x_block + SIG.d_block)) == ["s + 1"]
    sig = WeylSignature(0, 2)
    G = left_buchberger([sig.s(0) - sig.s(1), sig.s(1)], TermOrder.elimination(sig, ("s2",)))
    assert strs(eliminate_block(G, ("s2",))) == ["s1"]


def test_order_rejects_non_admissible_weights():
    with pytest.raises(OrderError):
        TermOrder(SIG, [[1, -1, 0]])


def test_budget_exceeded():
    F = InputTuple(tuple(parse_tuple(["x^3 + y^4 + x*y^2"])))
    with pytest.raises(ResourceError) as err:
        annihilator_fs(F, Budget(max_pairs=3))
    assert err.value.limit == "max_pairs"


def test_weight_zero_part_shifts_generators():
    ext = WeylSignature(1, 1, extended=True)
    t, dt = ext.t(), ext.dt()
    out = weight_zero_part([t * ext.x(), dt])
    # t*x has t-weight 1: shifted by d_t on the left; d_t has weight -1: shifted by t
    assert strs(out) == [str(dt * t * ext.x()), str(t * dt)]


def _corpus_bases():
    bases = []
    for srcs in [(f,) for f in BFUNCTIONS] + list(TUPLES):
        F = InputTuple(tuple(parse_tuple(srcs)))
        hsig = F.signature.with_extension(homogenized=True)
        bases.append((f"malgrange{srcs}", left_buchberger(_homogenized_malgrange(F), TermOrder.elimination(hsig, hsig.uv_block))))
        ann = annihilator_fs(F)
        ms = [(1,)] if F.r == 1 else MULTI_INDICES
        for m in ms:
            fm = WeylElement.from_poly(F.signature, _product(F, m))
            block = F.signature.x_block + F.signature.d_block
            G = left_buchberger(list(ann) + [fm], TermOrder.elimination(F.signature, block))
            bases.append((f"B{srcs}^{m}", G))
    return bases


def _product(F, m):
    p = F.F[0] ** 0
    for f, k in zip(F.F, m):
        p = p * f ** k
    return p


CORPUS_BASES = _corpus_bases()


@pytest.mark.parametrize("name, G", CORPUS_BASES, ids=[n for n, _ in CORPUS_BASES])
def test_corpus_basis_satisfies_buchberger_criterion(name, G):
    assert satisfies_buchberger_criterion(G)
    for i in range(len(G.generators)):
        for j in range(i + 1, len(G.generators)):
            assert left_normal_form(s_pair(G, i, j), G).is_zero()


@pytest.mark.parametrize("name, G", CORPUS_BASES, ids=[n for n, _ in CORPUS_BASES])
@settings(max_examples=15)
@given(data=st.data())
def test_corpus_membership_soundness(name, G, data):
    sig = G.signature
    combo = sig.zero()
    for g in G.generators:
        P = data.draw(operators(sig, max_exp=1, max_terms=2))
        combo = combo + P * g
    assert is_member(combo, G)
