"""Weyl algebra D_n[s_1..s_r], optionally extended by t_j, d_tj.

Elements are stored in normal order: every x and t power sits to the left of
every d and d_t power.  The s-parameters, and the auxiliary central
variables ``u_j, v_j`` used for weight homogenization, commute with
everything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, perm
from typing import Iterable, Mapping, Sequence

from .core import (
    MultiPoly,
    Signature,
    SignatureError,
    as_rational,
    monomial_string,
    s_names,
    t_names,
    to_string,
    x_names,
)


class WeightError(ValueError):
    """An element has the wrong t-weight for the requested operation."""


@dataclass(frozen=True)
class WeylSignature:
    """Variable layout of a (possibly extended) Weyl algebra.

    Exponent vectors are laid out as ``x, t, d, d_t, s, u, v``; the ``t``,
    ``d_t`` blocks exist only when ``extended`` and ``u, v`` only when
    ``homogenized``.  ``n = 0`` gives the commutative ring Q[s].
    """

    n: int
    r: int
    extended: bool = False
    homogenized: bool = False
    xnames: tuple[str, ...] | None = None
    names: tuple[str, ...] = field(init=False, compare=False, repr=False)
    pairs: tuple[tuple[int, int], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0 or self.r < 1:
            raise ValueError("need n >= 0 and r >= 1")
        if self.homogenized and not self.extended:
            raise ValueError("homogenization variables require the extended algebra")
        xs = self.xnames if self.xnames is not None else x_names(self.n)
        if len(xs) != self.n:
            raise ValueError("xnames must have length n")
        object.__setattr__(self, "xnames", tuple(xs))
        ts = t_names(self.r) if self.extended else ()
        ds = tuple(f"d_{v}" for v in xs)
        dts = tuple(f"d_{v}" for v in ts)
        ss = s_names(self.r)
        aux = ()
        if self.homogenized:
            aux = tuple(f"u{j + 1}" for j in range(self.r)) + tuple(f"v{j + 1}" for j in range(self.r))
        object.__setattr__(self, "names", tuple(xs) + ts + ds + dts + ss + aux)
        nx = self.n + len(ts)
        object.__setattr__(self, "pairs", tuple((i, nx + i) for i in range(nx)))

    # -- index helpers ----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def _nt(self) -> int:
        return self.r if self.extended else 0

    def x_index(self, i: int) -> int:
        return i

    def t_index(self, j: int) -> int:
        self._need_ext()
        return self.n + j

    def d_index(self, i: int) -> int:
        return self.n + self._nt + i

    def dt_index(self, j: int) -> int:
        self._need_ext()
        return 2 * self.n + self._nt + j

    def s_index(self, j: int) -> int:
        return 2 * (self.n + self._nt) + j

    def u_index(self, j: int) -> int:
        return 2 * (self.n + self._nt) + self.r + j

    def v_index(self, j: int) -> int:
        return 2 * (self.n + self._nt) + 2 * self.r + j

    def _need_ext(self):
        if not self.extended:
            raise SignatureError("t-variables need an extended signature")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SignatureError(f"{name!r} not in {self.names}") from None

    def indices(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(n) for n in names)

    @property
    def x_block(self) -> tuple[str, ...]:
        return self.names[: self.n]

    @property
    def d_block(self) -> tuple[str, ...]:
        return self.names[self.n + self._nt : 2 * self.n + self._nt]

    @property
    def t_block(self) -> tuple[str, ...]:
        return self.names[self.n : self.n + self._nt]

    @property
    def dt_block(self) -> tuple[str, ...]:
        return self.names[2 * self.n + self._nt : 2 * (self.n + self._nt)]

    @property
    def s_block(self) -> tuple[str, ...]:
        k = 2 * (self.n + self._nt)
        return self.names[k : k + self.r]

    @property
    def uv_block(self) -> tuple[str, ...]:
        return self.names[2 * (self.n + self._nt) + self.r :]

    def poly_signature(self) -> Signature:
        """Commutative (x, s) signature for twisted-module numerators."""
        return Signature.build(x=self.xnames, s=s_names(self.r))

    def x_signature(self) -> Signature:
        return Signature.build(x=self.xnames)

    def s_signature(self) -> Signature:
        return Signature.build(s=s_names(self.r))

    def base(self) -> WeylSignature:
        return WeylSignature(self.n, self.r, xnames=self.xnames)

    def with_extension(self, homogenized: bool = False) -> WeylSignature:
        return WeylSignature(self.n, self.r, True, homogenized, self.xnames)

    # -- generators ---------------------------------------------------------
    def _unit(self, i: int) -> WeylElement:
        e = [0] * self.nvars
        e[i] = 1
        return WeylElement(self, {tuple(e): 1})

    def one(self) -> WeylElement:
        return WeylElement(self, {(0,) * self.nvars: 1})

    def zero(self) -> WeylElement:
        return WeylElement(self, {})

    def x(self, i: int = 0) -> WeylElement:
        return self._unit(self.x_index(i))

    def d(self, i: int = 0) -> WeylElement:
        return self._unit(self.d_index(i))

    def s(self, j: int = 0) -> WeylElement:
        return self._unit(self.s_index(j))

    def t(self, j: int = 0) -> WeylElement:
        return self._unit(self.t_index(j))

    def dt(self, j: int = 0) -> WeylElement:
        return self._unit(self.dt_index(j))

    def var(self, name: str) -> WeylElement:
        return self._unit(self.index(name))


@lru_cache(maxsize=1 << 18)
def _mono_mul(a: tuple, b: tuple, pairs: tuple) -> tuple:
    """Normal-ordered product of two monomials as ((exps, int coeff), ...).

    Uses d^p x^q = sum_k C(p,k) q!/(q-k)! x^(q-k) d^(p-k) on each pair.
    """
    base = [i + j for i, j in zip(a, b)]
    per_pair = []
    for xi, di in pairs:
        p, q = a[di], b[xi]
        if p and q:
            per_pair.append([(xi, di, k, comb(p, k) * perm(q, k)) for k in range(min(p, q) + 1)])
    if not per_pair:
        return ((tuple(base), 1),)
    out = []
    for choice in product(*per_pair):
        e = list(base)
        c = 1
        for xi, di, k, w in choice:
            e[xi] -= k
            e[di] -= k
            c *= w
        out.append((tuple(e), c))
    return tuple(out)


def mono_mul(sig: WeylSignature, a: tuple, b: tuple) -> tuple:
    return _mono_mul(a, b, sig.pairs)


class WeylElement:
    """Normally ordered operator with rational coefficients.

    ``terms`` maps exponent tuples (layout of :class:`WeylSignature`) to
    nonzero Fractions.  ``*`` is the Weyl product.
    """

    __slots__ = ("signature", "terms")

    def __init__(self, signature: WeylSignature, terms: Mapping[tuple, object] | None = None):
        self.signature = signature
        clean = {}
        for m, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                if len(m) != signature.nvars:
                    raise ValueError("exponent vector length does not match signature")
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, signature, terms):
        w = object.__new__(cls)
        w.signature = signature
        w.terms = terms
        return w

    @classmethod
    def from_poly(cls, signature: WeylSignature, p: MultiPoly) -> WeylElement:
        """Embed a commutative polynomial in x (and s, t) as a multiplication operator."""
        idx = [signature.index(n) for n in p.signature.names]
        out = {}
        for m, c in p.terms.items():
            e = [0] * signature.nvars
            for i, k in zip(idx, m):
                e[i] += k
            out[tuple(e)] = c
        return cls._raw(signature, out)

    def _check(self, other: WeylElement):
        if self.signature != other.signature:
            raise SignatureError("Weyl elements over different signatures")

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return WeylElement(self.signature, {(0,) * self.signature.nvars: other})
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return WeylElement._raw(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.signature, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WeylElement(self.signature, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        result = self.signature.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.signature == other.signature and self.terms == other.terms

    def __hash__(self):
        return hash((self.signature, frozenset(self.terms.items())))

    # -- structure ------------------------------------------------------------
    def t_weight(self) -> dict[tuple, WeylElement]:
        """Split into t-homogeneous parts keyed by weight vectors (deg t_j - deg d_tj)."""
        sig = self.signature
        parts: dict[tuple, dict] = {}
        for m, c in self.terms.items():
            w = tuple(m[sig.t_index(j)] - m[sig.dt_index(j)] for j in range(sig.r)) if sig.extended else ()
            parts.setdefault(w, {})[m] = c
        return {w: WeylElement._raw(sig, t) for w, t in parts.items()}

    def uses(self, names: Iterable[str]) -> bool:
        idx = self.signature.indices(names)
        return any(m[i] for m in self.terms for i in idx)

    def s_coefficients(self) -> dict[tuple, MultiPoly]:
        """Group terms by operator monomial; values are polynomials in s."""
        sig = self.signature
        ssig = sig.s_signature()
        s0 = sig.s_index(0)
        out: dict[tuple, dict] = {}
        for m, c in self.terms.items():
            key = m[:s0] + m[s0 + sig.r :]
            out.setdefault(key, {})[m[s0 : s0 + sig.r]] = c
        return {k: MultiPoly(ssig, v) for k, v in out.items()}

    def to_poly(self, signature: Signature) -> MultiPoly:
        """Read an element free of d, d_t (and u, v) as a commutative polynomial."""
        sig = self.signature
        idx = {}
        for k, name in enumerate(sig.names):
            if name in signature.names:
                idx[k] = signature.index(name)
        out = {}
        for m, c in self.terms.items():
            e = [0] * signature.nvars
            for k, v in enumerate(m):
                if v:
                    if k not in idx:
                        raise SignatureError(f"{sig.names[k]} cannot be read into {signature.names}")
                    e[idx[k]] = v
            out[tuple(e)] = c
        return MultiPoly(signature, out)

    def restrict(self, signature: WeylSignature) -> WeylElement:
        """Move to another layout sharing every used variable name."""
        src = self.signature
        target = {name: k for k, name in enumerate(signature.names)}
        out = {}
        for m, c in self.terms.items():
            e = [0] * signature.nvars
            for k, v in enumerate(m):
                if v:
                    name = src.names[k]
                    if name not in target:
                        raise SignatureError(f"{name} is not available in the target signature")
                    e[target[name]] = v
            out[tuple(e)] = c
        return WeylElement._raw(signature, out)

    def __str__(self) -> str:
        return operator_string(self)

    def __repr__(self) -> str:
        return f"WeylElement({operator_string(self)!r})"


def weyl_mul(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.signature != v.signature:
        raise SignatureError("Weyl elements over different signatures")
    sig = u.signature
    pairs = sig.pairs
    out: dict[tuple, Fraction] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            cab = ca * cb
            for m, k in _mono_mul(a, b, pairs):
                out[m] = out.get(m, 0) + cab * k
    return WeylElement._raw(sig, {m: c for m, c in out.items() if c})


def operator_string(P: WeylElement) -> str:
    """Render with s-coefficients grouped per operator monomial, e.g. ``(s + 1)*d_x - s``."""
    if P.is_zero():
        return "0"
    sig = P.signature
    op_names = tuple(n for n in sig.names if n not in sig.s_block)
    groups = P.s_coefficients()
    pieces: list[tuple[str, bool]] = []
    for key in sorted(groups, key=lambda m: (sum(m), m), reverse=True):
        coeff = groups[key]
        mono = monomial_string(op_names, key)
        if not mono or len(coeff.terms) == 1:
            for cm, c in coeff.sorted_terms():
                cstr = to_string(MultiPoly(coeff.signature, {cm: abs(c)}))
                if not mono:
                    body = cstr
                else:
                    body = mono if cstr == "1" else f"{cstr}*{mono}"
                pieces.append((body, c < 0))
        else:
            pieces.append((f"({to_string(coeff)})*{mono}", False))
    out = []
    for body, negative in pieces:
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


# -- twisted module Q[x, s, 1/f] * prod f_j^{s_j} --------------------------

class TwistedElement:
    """``numerator * prod_j f_j^(s_j - k_j)`` for a fixed tuple ``F``.

    Stored reduced: whenever ``k_j > 0`` the factor ``f_j`` does not divide
    the numerator.  Entries of ``F`` live over the x-signature; the
    numerator lives over the (x, s) signature.
    """

    __slots__ = ("F", "numerator", "k")

    def __init__(self, F: Sequence[MultiPoly], numerator: MultiPoly, k: Sequence[int]):
        self.F = tuple(F)
        if len(k) != len(self.F):
            raise ValueError("one denominator exponent per f_j")
        if any(f.is_zero() for f in self.F):
            raise ValueError("entries of F must be nonzero")
        self.numerator = numerator
        self.k = tuple(int(v) for v in k)
        self._reduce()

    @classmethod
    def power(cls, F: Sequence[MultiPoly], signature: Signature, shift: Sequence[int] | None = None) -> TwistedElement:
        """``prod f_j^(s_j + shift_j)`` with ``shift`` defaulting to zero."""
        F = tuple(F)
        shift = tuple(shift) if shift is not None else (0,) * len(F)
        num = MultiPoly.constant(signature, 1)
        k = []
        for f, m in zip(F, shift):
            if m >= 0:
                num = num * f.embed(signature) ** m
                k.append(0)
            else:
                k.append(-m)
        return cls(F, num, k)

    def _lifted(self) -> list[MultiPoly]:
        sig = self.numerator.signature
        return [f.embed(sig) for f in self.F]

    def _reduce(self):
        fs = self._lifted()
        k = list(self.k)
        num = self.numerator
        changed = True
        while changed and not num.is_zero():
            changed = False
            for j, f in enumerate(fs):
                if k[j] > 0:
                    q, rem = num.divmod(f)
                    if rem.is_zero():
                        num = q
                        k[j] -= 1
                        changed = True
        if num.is_zero():
            k = [0] * len(k)
        self.numerator = num
        self.k = tuple(k)

    def scaled_to(self, K: Sequence[int]) -> MultiPoly:
        """Numerator over the common denominator prod f_j^K_j (K >= k)."""
        fs = self._lifted()
        num = self.numerator
        for f, kj, Kj in zip(fs, self.k, K):
            if Kj < kj:
                raise ValueError("target exponent below current exponent")
            if Kj > kj:
                num = num * f ** (Kj - kj)
        return num

    def __eq__(self, other):
        if not isinstance(other, TwistedElement):
            return NotImplemented
        if self.F != other.F:
            return False
        K = [max(a, b) for a, b in zip(self.k, other.k)]
        return self.scaled_to(K) == other.scaled_to(K)

    def __hash__(self):
        return hash((self.F, self.k, self.numerator))

    def __repr__(self):
        return f"TwistedElement(numerator={to_string(self.numerator)!r}, k={self.k})"


def _apply_derivation(u: TwistedElement, i_name: str, s_vars: list[MultiPoly]) -> TwistedElement:
    """d/dx_i of numerator * prod f_j^(s_j - k_j)."""
    sig = u.numerator.signature
    fs = u._lifted()
    g = u.numerator
    # d(g prod f^(s-k)) = (dg * prod f + sum_j (s_j - k_j) g df_j prod_{l != j} f_l) * prod f^(s-k-1)
    all_f = MultiPoly.constant(sig, 1)
    for f in fs:
        all_f = all_f * f
    total = g.diff(i_name) * all_f
    for j, f in enumerate(fs):
        dfj = f.diff(i_name)
        if dfj.is_zero():
            continue
        others = MultiPoly.constant(sig, 1)
        for l, fl in enumerate(fs):
            if l != j:
                others = others * fl
        total = total + (s_vars[j] - u.k[j]) * g * dfj * others
    return TwistedElement(u.F, total, [kj + 1 for kj in u.k])


def weyl_apply_twisted(P: WeylElement, F: Sequence[MultiPoly], u: TwistedElement) -> TwistedElement:
    """Formal action of an operator in D_n[s] on the twisted module."""
    sig = P.signature
    if sig.extended:
        raise SignatureError("operators with t or d_t cannot act on the twisted module")
    F = tuple(F)
    if F != u.F:
        raise ValueError("twisted element was built for a different tuple F")
    psig = u.numerator.signature
    if psig.names != sig.poly_signature().names:
        raise SignatureError("twisted numerator signature does not match the operator's")
    s_vars = [MultiPoly.var(psig, name) for name in sig.s_block]
    n = sig.n
    cache: dict[tuple, TwistedElement] = {(0,) * n: u}

    def d_power(beta: tuple) -> TwistedElement:
        if beta in cache:
            return cache[beta]
        i = next(k for k in range(n - 1, -1, -1) if beta[k])
        prev = list(beta)
        prev[i] -= 1
        res = _apply_derivation(d_power(tuple(prev)), sig.xnames[i], s_vars)
        cache[beta] = res
        return res

    # group by d-monomial: sum_beta c_beta(x, s) * d^beta(u)
    groups: dict[tuple, dict] = {}
    d0 = sig.d_index(0)
    s0 = sig.s_index(0)
    for m, c in P.terms.items():
        beta = m[d0 : d0 + n]
        xs = m[:n] + m[s0 : s0 + sig.r]
        groups.setdefault(beta, {})[xs] = c
    parts = []
    for beta, coeff in groups.items():
        v = d_power(beta)
        parts.append((MultiPoly(psig, coeff) * v.numerator, v.k))
    if not parts:
        return TwistedElement(F, MultiPoly.zero(psig), [0] * len(F))
    K = [max(k[j] for _, k in parts) for j in range(len(F))]
    fs = u._lifted()
    total = MultiPoly.zero(psig)
    for num, k in parts:
        for f, kj, Kj in zip(fs, k, K):
            if Kj > kj:
                num = num * f ** (Kj - kj)
        total = total + num
    return TwistedElement(F, total, K)


def substitute_s(P: WeylElement) -> WeylElement:
    """Rewrite a t-weight-zero element of the extended algebra into D_n[s].

    Uses d_tj t_j = -s_j, hence t_j^a d_tj^a = prod_{k<a} (-s_j - 1 - k).
    """
    sig = P.signature
    if not sig.extended or sig.homogenized:
        raise SignatureError("substitute_s expects the extended (non-homogenized) signature")
    base = sig.base()
    out = base.zero()
    for m, c in P.terms.items():
        e = [0] * base.nvars
        factor = base.one() * c
        for j in range(sig.r):
            a, b = m[sig.t_index(j)], m[sig.dt_index(j)]
            if a != b:
                raise WeightError(f"term {m} has nonzero t-weight in coordinate {j}")
            sj = base.s(j)
            for k in range(a):
                factor = factor * (-sj - (1 + k))
        for i in range(sig.n):
            e[base.x_index(i)] = m[sig.x_index(i)]
            e[base.d_index(i)] = m[sig.d_index(i)]
        for j in range(sig.r):
            e[base.s_index(j)] = m[sig.s_index(j)]
        out = out + factor * WeylElement._raw(base, {tuple(e): Fraction(1)})
    return out
