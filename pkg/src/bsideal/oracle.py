"""Brute-force witness search for the functional equation.

Solves ``P * prod f_i^(s_i + m_i) = b(s) * prod f_i^(s_i)`` for an operator
``P`` of bounded shape by exact linear algebra over Q.  Nothing here touches
the Groebner code path; it only uses the twisted-module action.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .core import MultiPoly, Signature, linear_factorization
from .groebner import ResourceError
from .pipeline import BSIdeal, InputTuple, MultiIndex, bfunction, bs_ideal
from .weyl import TwistedElement, WeylElement, WeylSignature, _apply_derivation, weyl_apply_twisted


class OracleMismatch(AssertionError):
    """The oracle found a b of lower degree than the Groebner pipeline."""


@dataclass(frozen=True)
class AnsatzBounds:
    max_order: int = 4
    max_x_degree: int = 4
    max_s_degree: int = 1
    max_unknowns: int = 6000

    def __post_init__(self):
        if min(self.max_order, self.max_x_degree, self.max_s_degree) < 0:
            raise ValueError("ansatz bounds must be non-negative")

    def shrink(self, **kw) -> AnsatzBounds:
        return AnsatzBounds(**{**self.__dict__, **kw})

    def as_dict(self) -> dict:
        return {"max_order": self.max_order, "max_x_degree": self.max_x_degree, "max_s_degree": self.max_s_degree}


def _exponents(nvars: int, max_total: int) -> list[tuple]:
    return sorted((e for e in product(range(max_total + 1), repeat=nvars) if sum(e) <= max_total),
                  key=lambda e: (sum(e), e))


def solve_exact(columns: Sequence[dict], rhs: dict) -> list[Fraction] | None:
    """One solution of sum_k c_k columns[k] = rhs, or None when inconsistent.

    Columns and rhs are sparse maps row -> Fraction.  Gauss-Jordan over Q,
    pivoting on the entry with the smallest numerator/denominator size;
    free unknowns are set to zero.
    """
    rows: dict = {}
    for k, col in enumerate(columns):
        for row, v in col.items():
            if v:
                rows.setdefault(row, {})[k] = Fraction(v)
    for row in rhs:
        rows.setdefault(row, {})
    pivots: dict[int, tuple[dict, Fraction]] = {}
    for row in sorted(rows, key=repr):
        eq = dict(rows[row])
        b = Fraction(rhs.get(row, 0))
        for col in [c for c in eq if c in pivots]:
            coef = eq.get(col)
            if not coef:
                continue
            prow, pb = pivots[col]
            for c2, v2 in prow.items():
                v = eq.get(c2, 0) - coef * v2
                if v:
                    eq[c2] = v
                else:
                    eq.pop(c2, None)
            b -= coef * pb
        if not eq:
            if b != 0:
                return None
            continue
        pc = min(eq, key=lambda c: (abs(eq[c].numerator) + eq[c].denominator, c))
        pv = eq[pc]
        eq = {c: v / pv for c, v in eq.items()}
        b = b / pv
        for col, (prow, pb) in list(pivots.items()):
            coef = prow.get(pc)
            if coef:
                for c2, v2 in eq.items():
                    v = prow.get(c2, 0) - coef * v2
                    if v:
                        prow[c2] = v
                    else:
                        prow.pop(c2, None)
                pivots[col] = (prow, pb - coef * b)
        pivots[pc] = (eq, b)
    solution = [Fraction(0)] * len(columns)
    for col, (_, b) in pivots.items():
        solution[col] = b
    return solution


@dataclass
class _System:
    sig: WeylSignature
    psig: Signature
    shapes: list[tuple[tuple, tuple, tuple]]
    columns: list[dict]
    common: MultiPoly  # prod f_j^K_j over the (x, s) signature


def _build_system(F: InputTuple, m: MultiIndex, bounds: AnsatzBounds) -> _System:
    sig = F.signature
    psig = sig.poly_signature()
    n, r = sig.n, sig.r
    betas = _exponents(n, bounds.max_order)
    alphas = _exponents(n, bounds.max_x_degree)
    gammas = _exponents(r, bounds.max_s_degree)
    unknowns = len(betas) * len(alphas) * len(gammas)
    if unknowns > bounds.max_unknowns:
        raise ResourceError("ansatz_unknowns", unknowns, bounds.max_unknowns)
    s_vars = [MultiPoly.var(psig, name) for name in sig.s_block]
    start = TwistedElement.power(F.F, psig, m.m)
    images: dict[tuple, TwistedElement] = {(0,) * n: start}
    for beta in betas:
        if beta in images:
            continue
        i = next(k for k in range(n - 1, -1, -1) if beta[k])
        prev = list(beta)
        prev[i] -= 1
        images[beta] = _apply_derivation(images[tuple(prev)], sig.xnames[i], s_vars)
    K = [max(images[b].k[j] for b in betas) for j in range(r)]
    scaled = {b: images[b].scaled_to(K) for b in betas}
    common = TwistedElement.power(F.F, psig).scaled_to(K)
    shapes, columns = [], []
    for beta in betas:
        base = scaled[beta]
        for alpha in alphas:
            for gamma in gammas:
                mono = MultiPoly(psig, {alpha + gamma: 1})
                shapes.append((alpha, beta, gamma))
                columns.append((mono * base).terms)
    return _System(sig, psig, shapes, columns, common)


def _operator(system: _System, coeffs: Sequence[Fraction]) -> WeylElement:
    sig = system.sig
    terms = {}
    for (alpha, beta, gamma), c in zip(system.shapes, coeffs):
        if c:
            terms[alpha + beta + gamma] = c
    return WeylElement(sig, terms)


def verify_witness(P: WeylElement, b: MultiPoly, F: InputTuple, m: MultiIndex) -> bool:
    psig = F.signature.poly_signature()
    lhs = weyl_apply_twisted(P, F.F, TwistedElement.power(F.F, psig, m.m))
    rhs = TwistedElement(F.F, b.embed(psig), (0,) * F.r)
    return lhs == rhs


def _as_index(F: InputTuple, m) -> MultiIndex:
    m = MultiIndex.ones(F.r) if m is None else (m if isinstance(m, MultiIndex) else MultiIndex(tuple(m)))
    m.check_for(F)
    return m


def _solve_within(b: MultiPoly, F: InputTuple, m: MultiIndex, bounds: AnsatzBounds) -> WeylElement | None:
    system = _build_system(F, m, bounds)
    rhs = (b.embed(system.psig) * system.common).terms
    sol = solve_exact(system.columns, rhs)
    return None if sol is None else _operator(system, sol)


def find_witness(b: MultiPoly, F: InputTuple, m: MultiIndex | Sequence[int] | None = None,
                 bounds: AnsatzBounds | None = None, smallest: bool = True) -> WeylElement | None:
    """An operator P with P * f^(s+m) = b * f^s inside ``bounds``, else None.

    With ``smallest`` the box is then shrunk coordinate by coordinate
    (order, then x-degree, then s-degree) so the witness is canonical.
    """
    if b.is_zero():
        raise ValueError("b must be nonzero")
    bounds = bounds or AnsatzBounds()
    m = _as_index(F, m)
    P = _solve_within(b, F, m, bounds)
    if P is not None and smallest:
        for key in ("max_order", "max_x_degree", "max_s_degree"):
            for k in range(getattr(bounds, key)):
                Q = _solve_within(b, F, m, bounds.shrink(**{key: k}))
                if Q is not None:
                    bounds, P = bounds.shrink(**{key: k}), Q
                    break
    if P is not None and not verify_witness(P, b, F, m):
        raise AssertionError("linear solve returned an operator that fails re-verification")
    return P


def oracle_bfunction(f: MultiPoly, bounds: AnsatzBounds | None = None,
                     max_degree: int | None = None) -> MultiPoly | None:
    """Minimal-degree monic b admitting a witness inside ``bounds``."""
    if f.is_constant():
        raise ValueError("f must be non-constant")
    bounds = bounds or AnsatzBounds()
    F = InputTuple((f,))
    m = MultiIndex((1,))
    system = _build_system(F, m, bounds)
    ssig = F.signature.s_signature()
    s = MultiPoly.var(system.psig, "s")
    cap = max_degree if max_degree is not None else bounds.max_order + bounds.max_s_degree
    for d in range(cap + 1):
        b_cols = [(-(s ** i) * system.common).terms for i in range(d)]
        rhs = ((s ** d) * system.common).terms
        sol = solve_exact(system.columns + b_cols, rhs)
        if sol is None:
            continue
        k = len(system.columns)
        b = MultiPoly(ssig, {(i,): c for i, c in enumerate(sol[k:])}) + MultiPoly(ssig, {(d,): 1})
        P = _operator(system, sol[:k])
        if not verify_witness(P, b, F, m):
            raise AssertionError("oracle b-function witness fails re-verification")
        return b
    return None


@dataclass
class CrossValidation:
    F: list[str]
    m: list[int]
    verified: list[tuple[str, str]] = field(default_factory=list)
    unverified: list[str] = field(default_factory=list)
    oracle_b: str | None = None
    agrees: bool | None = None
    # proper divisors g / l of a principal generator that did get a witness
    smaller_found: list[str] = field(default_factory=list)
    divisors_checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unverified and self.agrees is not False and not self.smaller_found

    def as_dict(self) -> dict:
        return {
            "F": self.F,
            "m": self.m,
            "verified": [{"generator": g, "witness": w} for g, w in self.verified],
            "unverified": self.unverified,
            "oracle_bfunction": self.oracle_b,
            "agrees": self.agrees,
            "divisors_checked": self.divisors_checked,
            "smaller_found": self.smaller_found,
        }


def cross_validate(F: InputTuple, m: MultiIndex | Sequence[int] | None = None,
                   bounds: AnsatzBounds | None = None, ideal: BSIdeal | None = None) -> CrossValidation:
    """Check every pipeline generator against the oracle.

    At r = 1 also runs the minimality sweep; a lower-degree oracle b is a
    hard failure (:class:`OracleMismatch`).
    """
    bounds = bounds or AnsatzBounds()
    m = _as_index(F, m)
    B = ideal if ideal is not None else bs_ideal(F, m)
    report = CrossValidation([str(f) for f in F.F], list(m.m))
    for g in B.generators:
        P = find_witness(g, F, m, bounds)
        if P is None:
            report.unverified.append(str(g))
        else:
            report.verified.append((str(g), str(P)))
    if B.is_principal() and F.r > 1:
        g = B.generators[0]
        for form in linear_factorization(g).forms:
            q = g.exact_divide(form.to_poly(g.signature))
            report.divisors_checked.append(str(q))
            if find_witness(q, F, m, bounds, smallest=False) is not None:
                report.smaller_found.append(str(q))
    if F.r == 1 and m.m == (1,):
        ob = oracle_bfunction(F.F[0], bounds)
        b = B.generators[0].monic()
        if ob is not None:
            report.oracle_b = str(ob)
            if ob.total_degree() < b.total_degree():
                raise OracleMismatch(f"oracle found {ob} below the pipeline's {b}")
            report.agrees = ob == b
        else:
            report.agrees = None
    return report
