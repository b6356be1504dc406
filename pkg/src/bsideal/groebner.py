"""Left Groebner bases in the Weyl algebra.

The kernel works on fraction-free integer polynomials (``dict`` from
exponent tuple to ``int``) and converts to :class:`WeylElement` at the
boundary.  Pairs are processed by the normal strategy with the
Gebauer-Moeller chain criteria; the product criterion is never used since
it fails for non-commuting variables.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .core import SignatureError
from .weyl import WeightError, WeylElement, WeylSignature, _mono_mul

log = logging.getLogger(__name__)


class ResourceError(RuntimeError):
    """A configured budget was exceeded."""

    def __init__(self, limit: str, value, cap):
        super().__init__(f"budget exceeded: {limit} reached {value} (cap {cap})")
        self.limit = limit
        self.value = value
        self.cap = cap


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 50_000
    max_degree: int = 80
    max_s_degree: int = 60

    def as_dict(self) -> dict:
        return {"max_pairs": self.max_pairs, "max_degree": self.max_degree, "max_s_degree": self.max_s_degree}


class TermOrder:
    """Weight rows, then total degree, then graded reverse lexicographic.

    Rows are integer vectors over the whole layout of ``signature``.
    """

    def __init__(self, signature: WeylSignature, weights: Sequence[Sequence[int]] = ()):
        self.signature = signature
        self.weights = tuple(tuple(int(v) for v in row) for row in weights)
        for row in self.weights:
            if len(row) != signature.nvars:
                raise OrderError(f"weight row of length {len(row)} for {signature.nvars} variables")
        self._cache: dict[tuple, tuple] = {}
        self._check_admissible()

    @classmethod
    def elimination(cls, signature: WeylSignature, *blocks: Iterable[str]) -> TermOrder:
        """One weight row per block: 1 on the block, 0 elsewhere."""
        rows = []
        for block in blocks:
            idx = signature.indices(block)
            rows.append([1 if i in idx else 0 for i in range(signature.nvars)])
        return cls(signature, rows)

    def _check_admissible(self):
        one = (0,) * self.signature.nvars
        for xi, di in self.signature.pairs:
            e = [0] * self.signature.nvars
            e[xi] = e[di] = 1
            if self.key(tuple(e)) <= self.key(one):
                name = self.signature.names[xi]
                raise OrderError(f"not admissible: {name}*d_{name} does not exceed 1")
        for i in range(self.signature.nvars):
            e = [0] * self.signature.nvars
            e[i] = 1
            if self.key(tuple(e)) <= self.key(one):
                raise OrderError(f"not a well-order: {self.signature.names[i]} does not exceed 1")

    def key(self, m: tuple) -> tuple:
        k = self._cache.get(m)
        if k is None:
            w = tuple(sum(a * b for a, b in zip(row, m)) for row in self.weights)
            k = w + (sum(m),) + tuple(-v for v in reversed(m))
            self._cache[m] = k
        return k

    def eliminates(self, names: Iterable[str]) -> bool:
        block = self.signature.indices(names)
        if not block:
            return True
        for row in self.weights:
            if any(row[i] < 0 for i in block):
                return False
            if any(row[i] != 0 for i in range(len(row)) if i not in block):
                return False
            if all(row[i] > 0 for i in block):
                return True
        return False

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.signature, self.weights) == (other.signature, other.weights)

    def __hash__(self):
        return hash((self.signature, self.weights))

    def __repr__(self):
        return f"TermOrder(weights={self.weights})"


# -- fraction-free kernel ----------------------------------------------------

def _to_int(p: WeylElement) -> tuple[dict, Fraction]:
    """Return (primitive integer poly, scale) with p = scale * poly."""
    if not p.terms:
        return {}, Fraction(1)
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in p.terms.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    return {m: c // g for m, c in ints.items()}, Fraction(g, den)


def _content(p: dict) -> int:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _mul_mono(m: tuple, g: dict, pairs: tuple, coeff: int = 1) -> dict:
    out: dict = {}
    for e, c in g.items():
        for mm, k in _mono_mul(m, e, pairs):
            out[mm] = out.get(mm, 0) + c * k * coeff
    return out


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Kernel:
    def __init__(self, order: TermOrder, budget: Budget):
        self.order = order
        self.key = order.key
        self.pairs = order.signature.pairs
        self.budget = budget
        sig = order.signature
        self.s_idx = [sig.s_index(j) for j in range(sig.r)]

    def lm(self, p: dict) -> tuple:
        return max(p, key=self.key)

    def reduce(self, p: dict, basis: list[tuple[tuple, dict]], full: bool = True) -> tuple[dict, Fraction]:
        """Left-reduce p; returns (remainder, multiplier) with remainder = multiplier * NF(p)."""
        p = dict(p)
        mult = Fraction(1)
        done: set = set()
        key = self.key
        steps = 0
        while True:
            cand = [m for m in p if m not in done] if done else list(p)
            if not cand:
                break
            m = max(cand, key=key)
            for lmg, g in basis:
                if _divides(lmg, m):
                    break
            else:
                if not full:
                    break
                done.add(m)
                continue
            q = tuple(a - b for a, b in zip(m, lmg))
            cp, cg = p[m], g[lmg]
            h = gcd(cp, cg)
            a, b = cg // h, cp // h
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for k in p:
                    p[k] *= a
                mult *= a
            for e, c in g.items():
                for mm, w in _mono_mul(q, e, self.pairs):
                    v = p.get(mm, 0) - b * c * w
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
            steps += 1
            if steps % 16 == 0 and p:
                ct = _content(p)
                if ct > 1:
                    for k in p:
                        p[k] //= ct
                    mult /= ct
        if p:
            ct = _content(p)
            if self.lm_sign(p) < 0:
                ct = -ct
            if ct != 1:
                for k in p:
                    p[k] //= ct
                mult /= ct
        return p, mult

    def lm_sign(self, p: dict) -> int:
        return 1 if p[self.lm(p)] > 0 else -1

    def spoly(self, f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
        L = _lcm(lf, lg)
        cf, cg = f[lf], g[lg]
        h = gcd(cf, cg)
        a = _mul_mono(tuple(x - y for x, y in zip(L, lf)), f, self.pairs, cg // h)
        b = _mul_mono(tuple(x - y for x, y in zip(L, lg)), g, self.pairs, cf // h)
        for m, c in b.items():
            v = a.get(m, 0) - c
            if v:
                a[m] = v
            else:
                a.pop(m, None)
        return a

    def check_budget(self, p: dict):
        deg = max(sum(m) for m in p)
        if deg > self.budget.max_degree:
            raise ResourceError("max_degree", deg, self.budget.max_degree)
        if self.s_idx:
            sdeg = max(sum(m[i] for i in self.s_idx) for m in p)
            if sdeg > self.budget.max_s_degree:
                raise ResourceError("max_s_degree", sdeg, self.budget.max_s_degree)

    def buchberger(self, gens: list[dict]) -> list[dict]:
        key = self.key
        polys: list[dict] = []
        lms: list[tuple] = []
        active: list[int] = []
        heap: list = []
        processed = 0

        def basis_view():
            return [(lms[i], polys[i]) for i in active]

        def add(h: dict):
            lh = self.lm(h)
            idx = len(polys)
            polys.append(h)
            lms.append(lh)
            # Gebauer-Moeller update without the product criterion
            new = [(_lcm(lh, lms[g]), g) for g in active]
            kept = []
            for pos, (L, g) in enumerate(new):
                others = new[pos + 1 :]
                if any(_divides(L2, L) for L2, _ in others) or any(_divides(L2, L) for L2, _ in kept):
                    continue
                kept.append((L, g))
            old = []
            for item in heap:
                _, i, j, L = item
                if _divides(lh, L) and _lcm(lms[i], lh) != L and _lcm(lms[j], lh) != L:
                    continue
                old.append(item)
            heap[:] = old
            for L, g in kept:
                heap.append((key(L), g, idx, L))
            heapq.heapify(heap)
            active[:] = [g for g in active if not _divides(lh, lms[g])] + [idx]

        for g in gens:
            if not g:
                continue
            r, _ = self.reduce(g, basis_view())
            if r:
                self.check_budget(r)
                add(r)
        while heap:
            _, i, j, _L = heapq.heappop(heap)
            processed += 1
            if processed > self.budget.max_pairs:
                raise ResourceError("max_pairs", processed, self.budget.max_pairs)
            s = self.spoly(polys[i], lms[i], polys[j], lms[j])
            if not s:
                continue
            r, _ = self.reduce(s, basis_view())
            if r:
                self.check_budget(r)
                add(r)
        log.debug("buchberger: %d pairs, %d active elements", processed, len(active))
        return self.interreduce([polys[i] for i in active])

    def interreduce(self, basis: list[dict]) -> list[dict]:
        items = sorted(((self.lm(p), p) for p in basis), key=lambda t: self.key(t[0]))
        minimal = []
        for lm, p in items:
            if not any(_divides(l2, lm) for l2, _ in minimal):
                minimal.append((lm, p))
        out = []
        for k, (lm, p) in enumerate(minimal):
            others = minimal[:k] + minimal[k + 1 :]
            r, _ = self.reduce(p, others)
            out.append(r)
        return sorted(out, key=lambda p: self.key(self.lm(p)))


def _from_int(sig: WeylSignature, p: dict, scale: Fraction = Fraction(1)) -> WeylElement:
    return WeylElement(sig, {m: scale * c for m, c in p.items()})


@dataclass
class GroebnerBasis:
    generators: list[WeylElement]
    order: TermOrder
    reduced: bool = True
    budget: Budget = field(default_factory=Budget)

    @property
    def signature(self) -> WeylSignature:
        return self.order.signature

    def leading_monomial(self, g: WeylElement) -> tuple:
        return max(g.terms, key=self.order.key)

    def _int_basis(self) -> list[tuple[tuple, dict]]:
        k = _Kernel(self.order, self.budget)
        out = []
        for g in self.generators:
            p, _ = _to_int(g)
            out.append((k.lm(p), p))
        return out

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def left_buchberger(gens: Sequence[WeylElement], order: TermOrder, budget: Budget | None = None) -> GroebnerBasis:
    """Reduced left Groebner basis, generators monic and sorted by leading monomial."""
    if not gens:
        raise ValueError("need at least one generator")
    sig = order.signature
    for g in gens:
        if g.signature != sig:
            raise SignatureError("generator signature differs from the order's signature")
    budget = budget or Budget()
    kernel = _Kernel(order, budget)
    ints = [_to_int(g)[0] for g in gens]
    basis = kernel.buchberger(ints)
    out = []
    for p in basis:
        lc = p[kernel.lm(p)]
        out.append(_from_int(sig, p, Fraction(1, lc)))
    return GroebnerBasis(out, order, True, budget)


def left_normal_form(p: WeylElement, G: GroebnerBasis) -> WeylElement:
    """Remainder of full left division of p by G (exact, not rescaled)."""
    if p.signature != G.signature:
        raise SignatureError("element and basis over different signatures")
    if p.is_zero():
        return p
    kernel = _Kernel(G.order, G.budget)
    ip, scale = _to_int(p)
    r, mult = kernel.reduce(ip, G._int_basis())
    return _from_int(G.signature, r, scale / mult)


def is_member(p: WeylElement, G: GroebnerBasis) -> bool:
    return left_normal_form(p, G).is_zero()


def s_pair(G: GroebnerBasis, i: int, j: int) -> WeylElement:
    kernel = _Kernel(G.order, G.budget)
    basis = G._int_basis()
    (li, pi), (lj, pj) = basis[i], basis[j]
    return _from_int(G.signature, kernel.spoly(pi, li, pj, lj))


def satisfies_buchberger_criterion(G: GroebnerBasis) -> bool:
    """Every S-pair reduces to zero (exhaustive, for desk-scale bases)."""
    n = len(G.generators)
    for i in range(n):
        for j in range(i + 1, n):
            if not left_normal_form(s_pair(G, i, j), G).is_zero():
                return False
    return True


def eliminate_block(G: GroebnerBasis, block: Iterable[str]) -> list[WeylElement]:
    """Basis elements free of ``block``; requires an order eliminating it."""
    block = tuple(block)
    if not G.order.eliminates(block):
        raise OrderError(f"order {G.order!r} does not eliminate {block}")
    return [g for g in G.generators if not g.uses(block)]


def weight_zero_part(G: GroebnerBasis | Sequence[WeylElement]) -> list[WeylElement]:
    """Shift t-homogeneous generators to t-weight zero.

    A generator of weight ``w`` (per coordinate j: deg t_j - deg d_tj) is
    multiplied on the left by d_tj^w_j when w_j > 0 and by t_j^-w_j when
    w_j < 0.  For a left ideal generated by t-homogeneous elements these
    products generate its weight-zero part as a module over the weight-zero
    subalgebra.  Non-homogeneous generators are rejected.
    """
    gens = list(G.generators if isinstance(G, GroebnerBasis) else G)
    out = []
    for g in gens:
        sig = g.signature
        if not sig.extended:
            raise WeightError("weight_zero_part needs t-variables")
        parts = g.t_weight()
        if len(parts) != 1:
            raise WeightError(f"generator {g} is not t-homogeneous (weights {sorted(parts)})")
        (w,) = parts
        shift = sig.one()
        for j, wj in enumerate(w):
            if wj > 0:
                shift = sig.dt(j) ** wj * shift
            elif wj < 0:
                shift = sig.t(j) ** (-wj) * shift
        out.append(shift * g)
    return out
