"""Annihilators of prod f_j^{s_j} and Bernstein-Sato ideals B_F^m.

Ann(f^s) is extracted from the Malgrange ideal
``<t_j - f_j, d_i + sum_j (df_j/dx_i) d_tj>``.  Its t-homogeneous part is
obtained by eliminating central variables ``u_j, v_j`` from
``<t_j - u_j f_j, d_i + sum_j u_j (df_j/dx_i) d_tj, u_j v_j - 1>``; shifting
to t-weight zero and substituting ``t_j d_tj = -s_j - 1`` lands in D_n[s].
B_F^m is then ``(Ann(f^s) + D_n[s] * prod f_j^m_j)`` intersected with Q[s].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import MultiPoly, Signature, univariate_rational_roots
from .groebner import (
    Budget,
    GroebnerBasis,
    TermOrder,
    eliminate_block,
    left_buchberger,
    left_normal_form,
    weight_zero_part,
)
from .weyl import TwistedElement, WeylElement, WeylSignature, substitute_s, weyl_apply_twisted

log = logging.getLogger(__name__)


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class InputTuple:
    """An ordered tuple F = (f_1, ..., f_r) of polynomials in the x-variables."""

    F: tuple[MultiPoly, ...]

    def __post_init__(self):
        F = tuple(self.F)
        object.__setattr__(self, "F", F)
        if not F:
            raise InvalidInput("need at least one polynomial")
        sig = F[0].signature
        if any(f.signature != sig for f in F):
            raise InvalidInput("all f_j must share one x-signature")
        if any(b != "x" for b in sig.blocks) or sig.nvars < 1:
            raise InvalidInput("f_j must be polynomials in x-variables only")
        if any(f.is_zero() for f in F):
            raise InvalidInput("f_j must be nonzero")
        if all(f.is_constant() for f in F):
            raise InvalidInput("at least one f_j must be non-constant")

    @property
    def n(self) -> int:
        return self.F[0].signature.nvars

    @property
    def r(self) -> int:
        return len(self.F)

    @property
    def signature(self) -> WeylSignature:
        return WeylSignature(self.n, self.r, xnames=self.F[0].signature.names)

    def invertible(self, j: int) -> bool:
        """Polynomials are invertible exactly when they are nonzero constants."""
        return self.F[j].is_constant()


@dataclass(frozen=True)
class MultiIndex:
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if any(v < 0 for v in self.m):
            raise InvalidInput("multi-index entries must be non-negative")

    @classmethod
    def ones(cls, r: int) -> MultiIndex:
        return cls((1,) * r)

    @classmethod
    def basis(cls, r: int, i: int) -> MultiIndex:
        return cls(tuple(int(k == i) for k in range(r)))

    def check_for(self, F: InputTuple) -> None:
        if len(self.m) != F.r:
            raise InvalidInput(f"multi-index has length {len(self.m)}, tuple has r = {F.r}")
        if not any(mi and not F.invertible(i) for i, mi in enumerate(self.m)):
            raise InvalidInput("prod f_i^m_i is invertible (constant)")


@dataclass
class BSIdeal:
    """An ideal of Q[s_1..s_r] given by a reduced Groebner basis (grevlex)."""

    generators: list[MultiPoly]
    r: int
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.generators or any(g.is_zero() for g in self.generators):
            raise ValueError("a Bernstein-Sato ideal is nonzero with nonzero generators")

    @property
    def signature(self) -> Signature:
        return self.generators[0].signature

    def is_principal(self) -> bool:
        return len(self.generators) == 1


def _signature_of(F: InputTuple) -> WeylSignature:
    return F.signature


def malgrange_ideal(F: InputTuple) -> list[WeylElement]:
    sig = F.signature.with_extension()
    gens = []
    for j, f in enumerate(F.F):
        gens.append(sig.t(j) - WeylElement.from_poly(sig, f))
    for i, xi in enumerate(F.F[0].signature.names):
        g = sig.d(i)
        for j, f in enumerate(F.F):
            df = f.diff(xi)
            if not df.is_zero():
                g = g + WeylElement.from_poly(sig, df) * sig.dt(j)
        gens.append(g)
    return gens


def _homogenized_malgrange(F: InputTuple) -> list[WeylElement]:
    sig = F.signature.with_extension(homogenized=True)
    u = [sig.var(f"u{j + 1}") for j in range(F.r)]
    v = [sig.var(f"v{j + 1}") for j in range(F.r)]
    gens = []
    for j, f in enumerate(F.F):
        gens.append(sig.t(j) - u[j] * WeylElement.from_poly(sig, f))
    for i, xi in enumerate(F.F[0].signature.names):
        g = sig.d(i)
        for j, f in enumerate(F.F):
            df = f.diff(xi)
            if not df.is_zero():
                g = g + u[j] * WeylElement.from_poly(sig, df) * sig.dt(j)
        gens.append(g)
    for j in range(F.r):
        gens.append(u[j] * v[j] - 1)
    return gens


def annihilator_fs(F: InputTuple, budget: Budget | None = None) -> list[WeylElement]:
    """Generators of Ann_{D_n[s]}(prod f_j^{s_j}), as a reduced basis (degree order)."""
    budget = budget or Budget()
    hsig = F.signature.with_extension(homogenized=True)
    order = TermOrder.elimination(hsig, hsig.uv_block)
    G = left_buchberger(_homogenized_malgrange(F), order, budget)
    esig = F.signature.with_extension()
    homog = [g.restrict(esig) for g in eliminate_block(G, hsig.uv_block)]
    ann = [substitute_s(g) for g in weight_zero_part(homog)]
    ann = [a for a in ann if not a.is_zero()]
    base = F.signature
    reduced = left_buchberger(ann, TermOrder(base), budget).generators
    fs = TwistedElement.power(F.F, base.poly_signature())
    for a in reduced:
        if not weyl_apply_twisted(a, F.F, fs).numerator.is_zero():
            raise AssertionError(f"computed operator {a} does not annihilate f^s")
    return reduced


def _s_basis(polys: Sequence[MultiPoly], budget: Budget) -> list[MultiPoly]:
    """Reduced grevlex basis of an ideal of Q[s], monic."""
    ssig = polys[0].signature
    r = len(ssig.names)
    wsig = WeylSignature(0, r)
    elems = [WeylElement.from_poly(wsig, p) for p in polys]
    G = left_buchberger(elems, TermOrder(wsig), budget)
    return [g.to_poly(ssig) for g in G.generators]


def bs_ideal(F: InputTuple, m: MultiIndex | Sequence[int] | None = None, budget: Budget | None = None,
             annihilator: list[WeylElement] | None = None) -> BSIdeal:
    """B_F^m as a reduced grevlex basis of monic s-polynomials."""
    budget = budget or Budget()
    m = MultiIndex.ones(F.r) if m is None else (m if isinstance(m, MultiIndex) else MultiIndex(tuple(m)))
    m.check_for(F)
    sig = F.signature
    ann = annihilator if annihilator is not None else annihilator_fs(F, budget)
    fm = MultiPoly.constant(F.F[0].signature, 1)
    for f, k in zip(F.F, m.m):
        fm = fm * f ** k
    gens = list(ann) + [WeylElement.from_poly(sig, fm)]
    block = sig.x_block + sig.d_block
    G = left_buchberger(gens, TermOrder.elimination(sig, block), budget)
    ssig = sig.s_signature()
    s_only = [g.to_poly(ssig) for g in eliminate_block(G, block)]
    if not s_only:
        raise AssertionError("elimination produced the zero ideal")
    basis = _s_basis(s_only, budget)
    prov = {"F": [str(f) for f in F.F], "m": list(m.m)}
    return BSIdeal(basis, F.r, prov)


def bfunction(f: MultiPoly, budget: Budget | None = None) -> MultiPoly:
    """Monic Bernstein-Sato polynomial b_f(s)."""
    F = InputTuple((f,))
    if f.is_constant():
        raise InvalidInput("the b-function needs a non-constant polynomial")
    B = bs_ideal(F, MultiIndex((1,)), budget)
    if not B.is_principal():
        raise AssertionError("an ideal of Q[s] must have a one-element reduced basis")
    return B.generators[0].monic()


def membership(b: MultiPoly, F: InputTuple, m: MultiIndex | Sequence[int] | None = None,
               budget: Budget | None = None, ideal: BSIdeal | None = None) -> bool:
    """Decide b in B_F^m by normal form against the reduced basis."""
    B = ideal if ideal is not None else bs_ideal(F, m, budget)
    ssig = B.signature
    if b.signature != ssig:
        b = b.restrict(ssig) if set(b.used_variables()) <= set(ssig.names) else b
    wsig = WeylSignature(0, B.r)
    G = GroebnerBasis([WeylElement.from_poly(wsig, g) for g in B.generators], TermOrder(wsig))
    return left_normal_form(WeylElement.from_poly(wsig, b), G).is_zero()


def roots(b: MultiPoly) -> list[tuple[Fraction, int]]:
    return univariate_rational_roots(b)


def lct(f: MultiPoly, budget: Budget | None = None, b: MultiPoly | None = None) -> Fraction:
    """Log canonical threshold: minus the largest root of b_f."""
    b = b if b is not None else bfunction(f, budget)
    rts = univariate_rational_roots(b)
    if not rts:
        raise AssertionError("b-function without rational roots")
    return -rts[0][0]
