"""Exact rational arithmetic and multivariate polynomials over Q.

Polynomials carry an immutable :class:`Signature`: an ordered tuple of
variable names, each tagged with a block label (``"x"``, ``"s"`` or ``"t"``).
Monomials are exponent tuples aligned with the signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator, Mapping, NamedTuple

Rational = Fraction
Monomial = tuple  # exponent tuple aligned with a Signature

BLOCKS = ("x", "s", "t")


class SignatureError(ValueError):
    """Operands live over different variable signatures."""


class InexactDivision(ArithmeticError):
    pass


def as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def s_names(r: int) -> tuple[str, ...]:
    return ("s",) if r == 1 else tuple(f"s{j + 1}" for j in range(r))


def t_names(r: int) -> tuple[str, ...]:
    return ("t",) if r == 1 else tuple(f"t{j + 1}" for j in range(r))


def x_names(n: int) -> tuple[str, ...]:
    return ("x", "y", "z")[:n] if n <= 3 else tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Signature:
    names: tuple[str, ...]
    blocks: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) != len(self.blocks):
            raise ValueError("names and blocks must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for b in self.blocks:
            if b not in BLOCKS:
                raise ValueError(f"unknown block {b!r}")

    @classmethod
    def build(cls, x: Iterable[str] = (), s: Iterable[str] = (), t: Iterable[str] = ()) -> Signature:
        x, s, t = tuple(x), tuple(s), tuple(t)
        return cls(x + s + t, ("x",) * len(x) + ("s",) * len(s) + ("t",) * len(t))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SignatureError(f"variable {name!r} not in signature {self.names}") from None

    def block(self, label: str) -> tuple[str, ...]:
        return tuple(n for n, b in zip(self.names, self.blocks) if b == label)

    def block_indices(self, label: str) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.blocks) if b == label)


class MultiPoly:
    """Immutable polynomial with rational coefficients.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction` coefficients.
    """

    __slots__ = ("signature", "terms", "_hash")

    def __init__(self, signature: Signature, terms: Mapping[tuple, object] | None = None):
        self.signature = signature
        clean: dict[tuple, Fraction] = {}
        if terms:
            nv = signature.nvars
            for mono, c in terms.items():
                c = as_rational(c)
                if c == 0:
                    continue
                mono = tuple(mono)
                if len(mono) != nv or any(e < 0 for e in mono):
                    raise ValueError(f"bad exponent vector {mono} for {signature.names}")
                clean[mono] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, signature: Signature, c=1) -> MultiPoly:
        return cls(signature, {(0,) * signature.nvars: c})

    @classmethod
    def zero(cls, signature: Signature) -> MultiPoly:
        return cls(signature)

    @classmethod
    def var(cls, signature: Signature, name: str) -> MultiPoly:
        e = [0] * signature.nvars
        e[signature.index(name)] = 1
        return cls(signature, {tuple(e): 1})

    @classmethod
    def _raw(cls, signature: Signature, terms: dict) -> MultiPoly:
        p = object.__new__(cls)
        p.signature = signature
        p.terms = terms
        p._hash = None
        return p

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.signature.nvars, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, name: str) -> int:
        i = self.signature.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * self.signature.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.signature.names, used) if u)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in descending graded-lex order (the canonical display order)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1] if self.terms else Fraction(0)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: MultiPoly) -> None:
        if self.signature != other.signature:
            raise SignatureError(f"signature mismatch: {self.signature.names} vs {other.signature.names}")

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.signature, other)
        return NotImplemented

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
        return MultiPoly._raw(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.signature, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MultiPoly.zero(self.signature)
            return MultiPoly._raw(self.signature, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly._raw(self.signature, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.signature, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self * (1 / Fraction(c))
        if isinstance(c, MultiPoly):
            return self.exact_divide(c)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.signature, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.signature == other.signature and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.signature, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def divmod(self, q: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Division by a single polynomial under lex order.

        ``{q}`` is a Groebner basis of the principal ideal it generates, so
        the remainder vanishes exactly when ``q`` divides ``self``.
        """
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm_q = max(q.terms)
        lc_q = q.terms[lm_q]
        quot: dict[tuple, Fraction] = {}
        rem: dict[tuple, Fraction] = {}
        p = dict(self.terms)
        while p:
            m = max(p)
            c = p[m]
            if all(a >= b for a, b in zip(m, lm_q)):
                qm = tuple(a - b for a, b in zip(m, lm_q))
                qc = c / lc_q
                quot[qm] = quot.get(qm, 0) + qc
                for mq, cq in q.terms.items():
                    mm = tuple(a + b for a, b in zip(qm, mq))
                    v = p.get(mm, 0) - qc * cq
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
            else:
                rem[m] = c
                del p[m]
        return MultiPoly(self.signature, quot), MultiPoly._raw(self.signature, rem)

    def exact_divide(self, q: MultiPoly) -> MultiPoly:
        quot, rem = self.divmod(q)
        if rem:
            raise InexactDivision(f"{q} does not divide {self}")
        return quot

    def divides(self, p: MultiPoly) -> bool:
        return not p.divmod(self)[1]

    # -- calculus and substitution --------------------------------------
    def diff(self, name: str) -> MultiPoly:
        i = self.signature.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MultiPoly._raw(self.signature, out)

    def substitute(self, values: Mapping[str, object]) -> MultiPoly:
        """Replace variables by polynomials (same signature) or rationals."""
        subs = {}
        for name, v in values.items():
            i = self.signature.index(name)
            subs[i] = v if isinstance(v, MultiPoly) else MultiPoly.constant(self.signature, v)
        result = MultiPoly.zero(self.signature)
        powers: dict[tuple[int, int], MultiPoly] = {}
        for m, c in self.terms.items():
            kept = tuple(0 if i in subs else e for i, e in enumerate(m))
            term = MultiPoly._raw(self.signature, {kept: c})
            for i, v in subs.items():
                if m[i]:
                    key = (i, m[i])
                    if key not in powers:
                        powers[key] = v ** m[i]
                    term = term * powers[key]
            result = result + term
        return result

    def embed(self, signature: Signature) -> MultiPoly:
        """Re-express over a signature that contains every used variable."""
        idx = [signature.index(n) for n in self.signature.names]
        out = {}
        for m, c in self.terms.items():
            e = [0] * signature.nvars
            for i, k in zip(idx, m):
                e[i] = k
            out[tuple(e)] = c
        return MultiPoly._raw(signature, out)

    def restrict(self, signature: Signature) -> MultiPoly:
        """Drop to a smaller signature; fails if a dropped variable is used."""
        used = set(self.used_variables())
        missing = used - set(signature.names)
        if missing:
            raise SignatureError(f"variables {sorted(missing)} not in target signature")
        idx = [self.signature.index(n) for n in signature.names]
        return MultiPoly._raw(signature, {tuple(m[i] for i in idx): c for m, c in self.terms.items()})

    def content(self) -> Fraction:
        """Positive rational c with self / c primitive in Z[vars]."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> MultiPoly:
        if not self.terms:
            return self
        p = self / self.content()
        return -p if p.leading_coefficient() < 0 else p

    def monic(self) -> MultiPoly:
        if not self.terms:
            return self
        return self / self.leading_coefficient()

    def __iter__(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self.sorted_terms())

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"MultiPoly({to_string(self)!r})"


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def monomial_string(names: tuple[str, ...], mono: tuple) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_string(p: MultiPoly) -> str:
    """Canonical expanded form, parseable back by the input parser."""
    if p.is_zero():
        return "0"
    out = []
    for mono, c in p.sorted_terms():
        ms = monomial_string(p.signature.names, mono)
        mag = abs(c)
        if not ms:
            body = _format_rational(mag)
        elif mag == 1:
            body = ms
        else:
            body = f"{_format_rational(mag)}*{ms}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out)


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "exact_divide":
        return p.exact_divide(q)
    raise ValueError(f"unknown operation {op!r}")


# -- linear forms ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class LinearForm:
    """Integer linear form ``a . s + b`` raised to ``multiplicity``.

    Normalized: gcd(a, b) = 1 and the first nonzero entry of ``a`` positive.
    """

    coefficients: tuple[int, ...]
    constant: int
    multiplicity: int = 1

    def __post_init__(self):
        if not any(self.coefficients):
            raise ValueError("linear form needs a nonzero s-coefficient")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @classmethod
    def normalized(cls, coefficients: Iterable[int], constant: int, multiplicity: int = 1) -> LinearForm:
        a = [int(v) for v in coefficients]
        b = int(constant)
        g = 0
        for v in a + [b]:
            g = gcd(g, v)
        a = [v // g for v in a]
        b //= g
        if next(v for v in a if v) < 0:
            a = [-v for v in a]
            b = -b
        return cls(tuple(a), b, multiplicity)

    def to_poly(self, signature: Signature) -> MultiPoly:
        """The form ``a . s + b`` (multiplicity not applied)."""
        s = signature.block("s")
        if len(s) != len(self.coefficients):
            raise SignatureError("linear form arity does not match the s-block")
        p = MultiPoly.constant(signature, self.constant)
        for name, a in zip(s, self.coefficients):
            if a:
                p = p + MultiPoly.var(signature, name) * a
        return p


class Factorization(NamedTuple):
    constant: Fraction
    forms: list[LinearForm]
    remainder: MultiPoly

    def expand(self, signature: Signature) -> MultiPoly:
        p = self.remainder * self.constant
        for f in self.forms:
            p = p * f.to_poly(signature) ** f.multiplicity
        return p


def _require_s_only(p: MultiPoly) -> None:
    bad = [n for n in p.used_variables() if p.signature.blocks[p.signature.index(n)] != "s"]
    if bad:
        raise ValueError(f"expected a polynomial in the s-block only, found {bad}")


def _to_sympy(p: MultiPoly, names: tuple[str, ...]):
    import sympy

    gens = sympy.symbols(names)
    idx = [p.signature.index(n) for n in names]
    d = {tuple(m[i] for i in idx): sympy.Rational(c.numerator, c.denominator) for m, c in p.terms.items()}
    return sympy.Poly.from_dict(d, *gens, domain="QQ")


def linear_factorization(p: MultiPoly) -> Factorization:
    """Split off every rational linear factor of an s-polynomial.

    Returns ``(c, forms, remainder)`` with ``p = c * prod(form^mult) * remainder``;
    the remainder is primitive with positive leading coefficient and has no
    linear factor over Q.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    _require_s_only(p)
    sig = p.signature
    s = sig.block("s")
    if p.is_constant():
        return Factorization(p.constant_term(), [], MultiPoly.constant(sig, 1))
    import sympy

    _, factors = _to_sympy(p, s).factor_list()
    forms: list[LinearForm] = []
    rest = MultiPoly.constant(sig, 1)
    for fac, mult in factors:
        d = {}
        for mono, coeff in fac.terms():
            e = [0] * sig.nvars
            for name, k in zip(s, mono):
                e[sig.index(name)] = k
            d[tuple(e)] = Fraction(int(sympy.numer(coeff)), int(sympy.denom(coeff)))
        q = MultiPoly(sig, d)
        if q.total_degree() == 1:
            a = [q.terms.get(tuple(int(i == sig.index(n)) for i in range(sig.nvars)), Fraction(0)) for n in s]
            den = 1
            for v in a + [q.constant_term()]:
                den = den * v.denominator // gcd(den, v.denominator)
            forms.append(LinearForm.normalized([int(v * den) for v in a], int(q.constant_term() * den), mult))
        else:
            rest = rest * q.primitive() ** mult
    product = rest
    for f in forms:
        product = product * f.to_poly(sig) ** f.multiplicity
    c = p.exact_divide(product).constant_term()
    forms.sort(key=lambda f: (f.coefficients, f.constant))
    return Factorization(c, forms, rest)


# -- univariate rational roots --------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _coefficient_list(p: MultiPoly) -> list[Fraction]:
    """Coefficients in ascending degree of a univariate polynomial."""
    used = p.used_variables()
    if len(used) > 1:
        raise ValueError(f"expected a univariate polynomial, found variables {used}")
    if not used:
        return [p.constant_term()]
    i = p.signature.index(used[0])
    deg = p.degree(used[0])
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[i]] += c
    return coeffs


def _synthetic_divide(coeffs: list[Fraction], root: Fraction) -> tuple[list[Fraction], Fraction]:
    """Divide ascending-order coeffs by (v - root); return (quotient, remainder)."""
    desc = coeffs[::-1]
    out = [desc[0]]
    for c in desc[1:]:
        out.append(c + out[-1] * root)
    rem = out.pop()
    return out[::-1], rem


def univariate_rational_roots(p: MultiPoly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicity, in descending order."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    coeffs = _coefficient_list(p)
    roots: list[tuple[Fraction, int]] = []
    zero_mult = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(coeffs) > 1:
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        candidates = set()
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                candidates.add(Fraction(a, b))
                candidates.add(Fraction(-a, b))
        for cand in sorted(candidates):
            mult = 0
            while len(coeffs) > 1:
                q, rem = _synthetic_divide(coeffs, cand)
                if rem != 0:
                    break
                coeffs = q
                mult += 1
            if mult:
                roots.append((cand, mult))
    roots.sort(key=lambda rm: rm[0], reverse=True)
    return roots


# -- canonical factored strings --------------------------------------------

def _compact(p: MultiPoly) -> str:
    return to_string(p).replace(" ", "")


def factored_string(p: MultiPoly) -> str:
    """Canonical factored rendering of an s-polynomial, e.g. ``(s+1)*(s+1/2)``.

    In one variable each linear factor is made monic and factors are listed
    by increasing root; with several variables the factors are primitive
    integer forms listed by decreasing coefficient vector.  Irreducible
    nonlinear factors come last, in expanded form.
    """
    fac = linear_factorization(p)
    sig = p.signature
    univariate = len(sig.block("s")) == 1
    c = fac.constant
    pieces = []
    if univariate:
        forms = sorted(fac.forms, key=lambda f: Fraction(f.constant, f.coefficients[0]), reverse=True)
        for f in forms:
            a = f.coefficients[0]
            c *= Fraction(a) ** f.multiplicity
            pieces.append((MultiPoly.var(sig, sig.block("s")[0]) + Fraction(f.constant, a), f.multiplicity))
    else:
        forms = sorted(fac.forms, key=lambda f: (tuple(-v for v in f.coefficients), f.constant))
        pieces = [(f.to_poly(sig), f.multiplicity) for f in forms]
    if not fac.remainder.is_constant():
        pieces.append((fac.remainder, 1))
    body = "*".join(f"({_compact(q)})" + (f"^{k}" if k > 1 else "") for q, k in pieces)
    if not body:
        return _format_rational(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{_format_rational(c)}*{body}"
