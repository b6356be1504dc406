"""Zero loci of Bernstein-Sato ideals and their images under Exp.

Roots of unity are rational angles theta mod 1 (``exp(2 pi i theta)``); no
complex floating point is used.  A torsion-translated codimension-1
subtorus ``{t : prod t_i^a_i = exp(2 pi i theta)}`` is stored with a
primitive direction ``a`` whose first nonzero entry is positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .core import LinearForm, MultiPoly, Signature, linear_factorization, univariate_rational_roots
from .pipeline import BSIdeal, MultiIndex


class LocusError(ValueError):
    pass


class UnresolvedComponents(LocusError):
    def __init__(self, unresolved: Sequence[MultiPoly]):
        super().__init__(f"components not resolved into hyperplanes: {[str(p) for p in unresolved]}")
        self.unresolved = list(unresolved)


def _frac_mod1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


@dataclass(frozen=True, order=True)
class HyperplaneComponent:
    """The hyperplane ``a . s + b = 0`` exactly as factored."""

    a: tuple[int, ...]
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if not any(self.a):
            raise ValueError("hyperplane needs a nonzero direction")

    @classmethod
    def from_form(cls, form: LinearForm) -> HyperplaneComponent:
        return cls(form.coefficients, form.constant)

    def is_type_one(self) -> bool:
        """a in N^r and b a positive integer."""
        return all(v >= 0 for v in self.a) and self.b > 0

    def canonical(self) -> HyperplaneComponent:
        g = 0
        for v in self.a + (self.b,):
            g = gcd(g, v)
        a = tuple(v // g for v in self.a)
        b = self.b // g
        if next(v for v in a if v) < 0:
            a, b = tuple(-v for v in a), -b
        return HyperplaneComponent(a, b)

    def to_poly(self, signature: Signature) -> MultiPoly:
        return LinearForm(self.a, self.b).to_poly(signature)

    def as_dict(self) -> dict:
        return {"a": list(self.a), "b": self.b}


@dataclass(frozen=True, order=True)
class TorsionSubtorus:
    direction: tuple[int, ...]
    theta: Fraction

    def __post_init__(self):
        d = tuple(int(v) for v in self.direction)
        if not any(d):
            raise LocusError("direction must be nonzero")
        g = 0
        for v in d:
            g = gcd(g, v)
        if g != 1:
            raise LocusError(f"direction {d} is not primitive")
        theta = _frac_mod1(Fraction(self.theta))
        if next(v for v in d if v) < 0:
            d = tuple(-v for v in d)
            theta = _frac_mod1(-theta)
        object.__setattr__(self, "direction", d)
        object.__setattr__(self, "theta", theta)

    @property
    def order(self) -> int:
        """Order of the translating root of unity."""
        return self.theta.denominator

    def as_dict(self) -> dict:
        return {"dir": list(self.direction), "theta": [self.theta.numerator, self.theta.denominator]}

    def __str__(self):
        lhs = "*".join(f"t{i + 1}" if v == 1 else f"t{i + 1}^{v}" for i, v in enumerate(self.direction) if v)
        return f"{{{lhs} = exp(2*pi*i*{self.theta})}}"


class SupportLocus:
    """Finite duplicate-free union of torsion-translated subtori of (C*)^r."""

    __slots__ = ("r", "components")

    def __init__(self, r: int, components: Iterable[TorsionSubtorus] = ()):
        comps = set(components)
        for c in comps:
            if len(c.direction) != r:
                raise LocusError(f"component {c} does not live in rank {r}")
        self.r = r
        self.components = tuple(sorted(comps))

    def __eq__(self, other):
        return isinstance(other, SupportLocus) and self.r == other.r and self.components == other.components

    def __hash__(self):
        return hash((self.r, self.components))

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __repr__(self):
        return f"SupportLocus(r={self.r}, {[str(c) for c in self.components]})"

    def canonical(self) -> SupportLocus:
        return SupportLocus(self.r, self.components)

    def as_list(self) -> list[dict]:
        return [c.as_dict() for c in self.components]


def locus_union(u: SupportLocus, v: SupportLocus) -> SupportLocus:
    if u.r != v.r:
        raise LocusError(f"rank mismatch {u.r} vs {v.r}")
    return SupportLocus(u.r, u.components + v.components)


def locus_equal(u: SupportLocus, v: SupportLocus) -> bool:
    if u.r != v.r:
        raise LocusError(f"rank mismatch {u.r} vs {v.r}")
    return u == v


def exp_image(h: HyperplaneComponent) -> TorsionSubtorus:
    """Exp({a.s + b = 0}) = {prod t^(a/d) = exp(-2 pi i b/d)}, d = gcd(a)."""
    d = 0
    for v in h.a:
        d = gcd(d, v)
    return TorsionSubtorus(tuple(v // d for v in h.a), Fraction(-h.b, d))


@dataclass
class LocusComponents:
    """``nonlinear``: codimension-1 factors with no rational linear split;
    ``residual``: basis of the codimension >= 2 part left after removing the
    gcd of the generators.  Both count as unresolved."""

    components: list[HyperplaneComponent]
    nonlinear: list[MultiPoly] = field(default_factory=list)
    residual: list[MultiPoly] = field(default_factory=list)
    multiplicities: dict = field(default_factory=dict)

    @property
    def unresolved(self) -> list[MultiPoly]:
        return self.nonlinear + self.residual


def _poly_gcd(polys: Sequence[MultiPoly]) -> MultiPoly:
    import sympy

    from .core import _to_sympy

    sig = polys[0].signature
    names = sig.block("s")
    g = _to_sympy(polys[0], names)
    for p in polys[1:]:
        g = sympy.gcd(g, _to_sympy(p, names))
    out = {}
    for mono, c in g.terms():
        e = [0] * sig.nvars
        for name, k in zip(names, mono):
            e[sig.index(name)] = k
        out[tuple(e)] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
    return MultiPoly(sig, out)


def locus_components(B: BSIdeal) -> LocusComponents:
    """Codimension-1 hyperplanes of Z(B) and everything not certified linear."""
    gens = list(B.generators)
    if not gens or any(g.is_zero() for g in gens):
        raise LocusError("the zero ideal has no finite component list")
    if len(gens) == 1:
        g, cofactors = gens[0], []
    else:
        g = _poly_gcd(gens)
        cofactors = [p.exact_divide(g) for p in gens]
    out = LocusComponents([])
    if not g.is_constant():
        fac = linear_factorization(g)
        for form in fac.forms:
            h = HyperplaneComponent.from_form(form)
            out.components.append(h)
            out.multiplicities[h] = form.multiplicity
        if not fac.remainder.is_constant():
            out.nonlinear.append(fac.remainder)
    if cofactors and not any(c.is_constant() for c in cofactors):
        from .groebner import Budget
        from .pipeline import _s_basis

        residual = _s_basis(cofactors, Budget())
        if not (len(residual) == 1 and residual[0].is_constant()):
            out.residual.extend(residual)
    return out


def exp_locus(B: BSIdeal) -> SupportLocus:
    """Exp(Z(B)) from the codimension-1 hyperplanes; fails on unresolved parts."""
    lc = locus_components(B)
    if lc.unresolved:
        raise UnresolvedComponents(lc.unresolved)
    return SupportLocus(B.r, (exp_image(h) for h in lc.components))


def exp_of_roots(b: MultiPoly) -> list[Fraction]:
    """Angles exp(2 pi i alpha) for the rational roots alpha of a univariate b."""
    return sorted({_frac_mod1(a) for a, _ in univariate_rational_roots(b)})


def exp_points(b: MultiPoly) -> SupportLocus:
    """Exp of the rational roots of a univariate b as a rank-1 locus."""
    return SupportLocus(1, (TorsionSubtorus((1,), a) for a in exp_of_roots(b)))


@dataclass
class SpecializationResult:
    angles: list[Fraction]
    whole_line: bool = False

    def as_dict(self) -> dict:
        return {"angles": [[a.numerator, a.denominator] for a in self.angles], "whole_line": self.whole_line}


def diagonal_specialization(L: SupportLocus, m: Sequence[int]) -> SpecializationResult:
    """Pull L back along lambda -> (lambda^m_1, ..., lambda^m_r), m_j > 0."""
    m = tuple(int(v) for v in m)
    if len(m) != L.r:
        raise LocusError("weight vector length differs from the rank")
    if any(v <= 0 for v in m):
        raise ValueError("specialization weights must be positive")
    angles: set[Fraction] = set()
    whole = False
    for comp in L:
        e = sum(a * w for a, w in zip(comp.direction, m))
        theta = comp.theta
        if e == 0:
            if theta == 0:
                whole = True
            continue
        if e < 0:
            e, theta = -e, _frac_mod1(-theta)
        for k in range(e):
            angles.add(_frac_mod1((theta + k) / e))
    return SpecializationResult(sorted(angles), whole)


# -- structure checks -------------------------------------------------------

@dataclass
class StructureReport:
    type_one: bool
    positivity: bool
    deeper_components: str  # "none", "verified", "not verified within box"
    violations: list[str] = field(default_factory=list)
    translations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.type_one and self.positivity and self.deeper_components in ("none", "verified")

    def as_dict(self) -> dict:
        return {
            "type_one": self.type_one,
            "positivity": self.positivity,
            "deeper_components": self.deeper_components,
            "violations": self.violations,
            "translations": self.translations,
        }


def _affine_pieces(gens: Sequence[MultiPoly]) -> list[tuple[list[Fraction], list[list[Fraction]]]] | None:
    """Affine subspaces whose union contains the common zeros of ``gens``.

    One linear factor is chosen per generator; returns None when some
    generator has a nonlinear factor.
    """
    import sympy

    options = []
    for g in gens:
        fac = linear_factorization(g)
        if not fac.remainder.is_constant():
            return None
        options.append(fac.forms)
    pieces = []
    for choice in product(*options):
        A = sympy.Matrix([[sympy.Integer(a) for a in f.coefficients] for f in choice])
        rhs = sympy.Matrix([-f.constant for f in choice])
        try:
            sol, params = A.gauss_jordan_solve(rhs)
        except ValueError:
            continue  # inconsistent choice: empty intersection
        zero = {p: 0 for p in params}
        base = [Fraction(str(v.subs(zero))) for v in sol]
        dirs = []
        for p in params:
            unit = {q: int(q == p) for q in params}
            dirs.append([Fraction(str(v.subs(unit))) - b for v, b in zip(sol, base)])
        pieces.append((base, dirs))
    return pieces


def _translate_into(base, dirs, h: HyperplaneComponent, box: int):
    """Integer v with ||v|| <= box and (base + span(dirs) + v) inside h, or None."""
    a = h.a
    if any(sum(Fraction(ai) * di for ai, di in zip(a, d)) != 0 for d in dirs):
        return None
    target = -h.b - sum(Fraction(ai) * bi for ai, bi in zip(a, base))
    if target.denominator != 1:
        return None
    for v in product(range(-box, box + 1), repeat=len(a)):
        if sum(ai * vi for ai, vi in zip(a, v)) == target:
            return list(v)
    return None


def check_structure(B: BSIdeal, m: MultiIndex | Sequence[int], box: int = 10) -> StructureReport:
    m = m if isinstance(m, MultiIndex) else MultiIndex(tuple(m))
    if len(m.m) != B.r:
        raise LocusError("multi-index length differs from the rank")
    lc = locus_components(B)
    violations = []
    type_one = True
    positivity = True
    for h in lc.components:
        if not h.is_type_one():
            type_one = False
            violations.append(f"{h.as_dict()} is not of type a in N^r, b > 0")
        if not any(mi and ai > 0 for mi, ai in zip(m.m, h.a)):
            positivity = False
            violations.append(f"{h.as_dict()} has a_i = 0 wherever m_i != 0")
    for p in lc.nonlinear:
        type_one = False
        violations.append(f"codimension-1 factor {p} is not a product of linear forms")
    if not lc.residual:
        status = "none" if not lc.nonlinear else "not verified within box"
        return StructureReport(type_one, positivity, status, violations)
    translations = []
    status = "verified" if not lc.nonlinear else "not verified within box"
    pieces = _affine_pieces(lc.residual)
    if pieces is None:
        status = "not verified within box"
    else:
        for base, dirs in pieces:
            found = None
            for h in lc.components:
                v = _translate_into(base, dirs, h, box)
                if v is not None:
                    found = {"point": [str(b) for b in base], "hyperplane": h.as_dict(), "shift": v}
                    break
            if found is None:
                status = "not verified within box"
            else:
                translations.append(found)
    return StructureReport(type_one, positivity, status, violations, translations)
