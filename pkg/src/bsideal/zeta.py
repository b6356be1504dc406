"""Candidate poles of the multivariable motivic zeta function.

Given numerical data (N_k, nu_k) of an embedded resolution, each divisor
contributes the hyperplane ``sum_j N_kj s_j + nu_k = 0``.  The containment
check tests these against the zero locus of a Bernstein-Sato ideal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .core import MultiPoly
from .pipeline import BSIdeal
from .torus import HyperplaneComponent


class ResolutionDataError(ValueError):
    pass


@dataclass(frozen=True)
class Divisor:
    N: tuple[int, ...]
    nu: int
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(int(v) for v in self.N))
        if any(v < 0 for v in self.N):
            raise ResolutionDataError(f"multiplicities must be non-negative: {self.N}")
        if int(self.nu) < 1:
            raise ResolutionDataError(f"nu must be at least 1, got {self.nu}")


@dataclass
class ResolutionData:
    r: int
    divisors: list[Divisor]
    label: str = ""

    def __post_init__(self):
        for d in self.divisors:
            if len(d.N) != self.r:
                raise ResolutionDataError(f"divisor {d.label!r} has {len(d.N)} multiplicities, expected {self.r}")
        # divisors along which no f_j vanishes contribute no pole
        self.divisors = [d for d in self.divisors if any(d.N)]

    @classmethod
    def from_dict(cls, doc: dict) -> ResolutionData:
        try:
            r = int(doc["r"])
            divs = [Divisor(tuple(d["N"]), int(d["nu"]), str(d.get("label", ""))) for d in doc["divisors"]]
        except (KeyError, TypeError) as exc:
            raise ResolutionDataError(f"malformed resolution data: {exc}") from exc
        return cls(r, divs, str(doc.get("label", "")))

    @classmethod
    def load(cls, path: str | Path) -> ResolutionData:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "divisors": [{"N": list(d.N), "nu": d.nu, "label": d.label} for d in self.divisors],
            "label": self.label,
        }


def polar_candidates(R: ResolutionData) -> list[HyperplaneComponent]:
    """Content-normalized, duplicate-free hyperplanes N_k . s + nu_k."""
    seen = set()
    out = []
    for d in R.divisors:
        h = HyperplaneComponent(d.N, d.nu).canonical()
        if h not in seen:
            seen.add(h)
            out.append(h)
    return sorted(out)


def hyperplane_in_zero_locus(h: HyperplaneComponent, generators: Sequence[MultiPoly]) -> bool:
    """Exact test: every generator restricts to zero on a . s + b = 0."""
    sig = generators[0].signature
    names = sig.block("s")
    if len(names) != len(h.a):
        raise ResolutionDataError("hyperplane rank differs from the ideal's rank")
    j = next(i for i, a in enumerate(h.a) if a)
    # s_j = -(b + sum_{i != j} a_i s_i) / a_j
    repl = MultiPoly.constant(sig, Fraction(-h.b, h.a[j]))
    for i, a in enumerate(h.a):
        if i != j and a:
            repl = repl + MultiPoly.var(sig, names[i]) * Fraction(-a, h.a[j])
    return all(g.substitute({names[j]: repl}).is_zero() for g in generators)


@dataclass
class ConjectureReport:
    contained: list[HyperplaneComponent] = field(default_factory=list)
    candidate_only: list[HyperplaneComponent] = field(default_factory=list)

    @property
    def all_contained(self) -> bool:
        return not self.candidate_only

    def as_dict(self) -> dict:
        return {
            "contained": [h.as_dict() for h in self.contained],
            "candidate_only": [h.as_dict() for h in self.candidate_only],
            "all_contained": self.all_contained,
            "note": "candidate-only hyperplanes are not counterexamples: candidate poles may cancel",
        }


def conjecture_check(R: ResolutionData, B: BSIdeal) -> ConjectureReport:
    if R.r != B.r:
        raise ResolutionDataError(f"rank mismatch: resolution data r={R.r}, ideal r={B.r}")
    report = ConjectureReport()
    for h in polar_candidates(R):
        (report.contained if hyperplane_in_zero_locus(h, B.generators) else report.candidate_only).append(h)
    return report
