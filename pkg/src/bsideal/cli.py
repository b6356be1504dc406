"""``bsideal`` command line.

Every command prints one JSON document (see ``result.schema.json``).
Exit status: 0 success, 1 bad input, 2 resource budget exceeded,
3 a ``suite`` check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .cache import ResultCache, cache_key
from .core import factored_string, to_string, univariate_rational_roots
from .corpus import BFUNCTIONS, MULTI_INDICES, RESOLUTIONS, TUPLES, UNION_TUPLES
from .groebner import Budget, ResourceError
from .oracle import AnsatzBounds, cross_validate, find_witness, oracle_bfunction
from .parser import ParseError, parse_s_poly, parse_tuple
from .pipeline import BSIdeal, InputTuple, InvalidInput, MultiIndex, annihilator_fs, bfunction, bs_ideal
from .torus import (
    LocusError,
    SupportLocus,
    check_structure,
    diagonal_specialization,
    exp_image,
    exp_of_roots,
    locus_components,
    locus_equal,
    locus_union,
)
from .zeta import ResolutionData, ResolutionDataError, conjecture_check, polar_candidates

log = logging.getLogger("bsideal")

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_CHECK = 0, 1, 2, 3
COMMANDS = ("bfun", "ann", "tuple", "verify", "oracle-bfun", "exp-locus", "zeta", "suite")


@dataclass
class JobSpec:
    command: str
    F: tuple[str, ...] = ()
    m: tuple[int, ...] | None = None
    budget: Budget = field(default_factory=Budget)
    bounds: AnsatzBounds | None = None
    b: str | None = None
    resolution: dict | None = None
    check_union: bool = False
    output: str | None = None
    use_cache: bool = True
    jobs: int = 1

    def normalized(self) -> dict:
        """Canonical form used for the cache key; output and cache toggle excluded."""
        F = [to_string(f) for f in parse_tuple(self.F)] if self.F else []
        if self.m is not None and len(self.m) != len(F):
            raise InvalidInput(f"m has length {len(self.m)} but {len(F)} polynomials were given")
        doc = {
            "command": self.command,
            "F": F,
            "m": list(self.m) if self.m is not None else None,
            "budget": self.budget.as_dict(),
            "bounds": self.bounds.as_dict() if self.bounds else None,
            "b": to_string(parse_s_poly(self.b, len(F))) if self.b else None,
            "resolution": self.resolution,
            "check_union": self.check_union,
        }
        return doc


# -- result assembly ---------------------------------------------------------

def _roots(b) -> list[list[int]]:
    return [[a.numerator, a.denominator, k] for a, k in sorted(univariate_rational_roots(b))]


def _locus_fields(B: BSIdeal) -> tuple[list, list, list]:
    lc = locus_components(B)
    comps = [h.as_dict() for h in lc.components]
    locus = SupportLocus(B.r, (exp_image(h) for h in lc.components))
    return comps, locus.as_list(), [to_string(p) for p in lc.unresolved]


def _document(job: JobSpec, norm: dict, engine_version: str, **fields) -> dict:
    budget = job.budget.as_dict()
    if job.bounds is not None:
        budget["oracle"] = job.bounds.as_dict()
    doc = {
        "input": {k: v for k, v in norm.items() if k in ("command", "F", "m") and v is not None},
        "generators": [],
        "roots": [],
        "components": [],
        "exp_locus": [],
        "reports": {},
        "budget": budget,
        "engine_version": engine_version,
    }
    doc.update(fields)
    return doc


def _tuple_and_m(job: JobSpec) -> tuple[InputTuple, MultiIndex]:
    F = InputTuple(tuple(parse_tuple(job.F)))
    m = MultiIndex(job.m) if job.m is not None else MultiIndex.ones(F.r)
    m.check_for(F)
    return F, m


def _single(job: JobSpec):
    if len(job.F) != 1:
        raise InvalidInput(f"{job.command} takes exactly one polynomial")
    return parse_tuple(job.F)[0]


def _cmd_bfun(job: JobSpec) -> dict:
    f = _single(job)
    b = bfunction(f, job.budget)
    B = BSIdeal([b], 1)
    comps, locus, unresolved = _locus_fields(B)
    rts = univariate_rational_roots(b)
    rational = sum(k for _, k in rts) == b.total_degree()
    lct = -max(a for a, _ in rts)
    reports = {
        "lct": [lct.numerator, lct.denominator],
        "roots_negative_rational": rational and all(a < 0 for a, _ in rts),
        "degree": b.total_degree(),
        "unresolved": unresolved,
    }
    return dict(generators=[factored_string(b)], roots=_roots(b), components=comps, exp_locus=locus, reports=reports)


def _cmd_ann(job: JobSpec) -> dict:
    F = InputTuple(tuple(parse_tuple(job.F)))
    ann = annihilator_fs(F, job.budget)
    return dict(generators=[str(a) for a in ann], reports={"count": len(ann)})


def _ideal_fields(B: BSIdeal) -> dict:
    comps, locus, unresolved = _locus_fields(B)
    out = dict(generators=[factored_string(g) for g in B.generators], components=comps, exp_locus=locus)
    if B.r == 1:
        out["roots"] = _roots(B.generators[0])
    out["reports"] = {"principal": B.is_principal(), "unresolved": unresolved}
    return out


def _cmd_tuple(job: JobSpec) -> dict:
    F, m = _tuple_and_m(job)
    B = bs_ideal(F, m, job.budget)
    out = _ideal_fields(B)
    out["reports"]["structure"] = check_structure(B, m).as_dict()
    return out


def _cmd_exp_locus(job: JobSpec) -> dict:
    F, m = _tuple_and_m(job)
    B = bs_ideal(F, m, job.budget)
    out = _ideal_fields(B)
    if job.check_union:
        if m.m != (1,) * F.r:
            raise InvalidInput("--check-union needs m = (1, ..., 1)")
        parts = SupportLocus(F.r)
        for i in range(F.r):
            e = MultiIndex.basis(F.r, i)
            if F.invertible(i):
                continue
            parts = locus_union(parts, SupportLocus(F.r, (exp_image(h) for h in locus_components(bs_ideal(F, e, job.budget)).components)))
        whole = SupportLocus(F.r, (exp_image(h) for h in locus_components(B).components))
        out["reports"]["union_formula"] = {"union_of_basis_loci": parts.as_list(), "holds": locus_equal(whole, parts)}
    return out


def _cmd_verify(job: JobSpec) -> dict:
    F, m = _tuple_and_m(job)
    b = parse_s_poly(job.b, F.r)
    P = find_witness(b, F, m, job.bounds)
    return dict(generators=[factored_string(b)],
                reports={"found": P is not None, "witness": str(P) if P is not None else None})


def _cmd_oracle_bfun(job: JobSpec) -> dict:
    f = _single(job)
    b = oracle_bfunction(f, job.bounds)
    if b is None:
        return dict(reports={"found": False})
    return dict(generators=[factored_string(b)], roots=_roots(b), reports={"found": True})


def _cmd_zeta(job: JobSpec) -> dict:
    if job.resolution is None:
        raise InvalidInput("zeta needs --resolution")
    R = ResolutionData.from_dict(job.resolution)
    F, m = _tuple_and_m(job)
    if m.m != (1,) * F.r:
        raise InvalidInput("zeta compares against B_F with m = (1, ..., 1)")
    B = bs_ideal(F, m, job.budget)
    out = _ideal_fields(B)
    out["reports"]["candidates"] = [h.as_dict() for h in polar_candidates(R)]
    out["reports"]["containment"] = conjecture_check(R, B).as_dict()
    return out


# -- suite -----------------------------------------------------------------

def _suite_entry(kind: str, arg, budget: Budget) -> dict:
    checks: dict[str, bool] = {}
    if kind == "bfun":
        F = InputTuple(tuple(parse_tuple([arg])))
        b = bfunction(F.F[0], budget)
        rts = univariate_rational_roots(b)
        checks["roots_negative_rational"] = sum(k for _, k in rts) == b.total_degree() and all(a < 0 for a, _ in rts)
        cv = cross_validate(F, None, ideal=BSIdeal([b], 1))
        checks["oracle_verified"] = not cv.unverified
        checks["oracle_agrees"] = cv.agrees is True
        result = factored_string(b)
        name = f"b[{arg}]"
    elif kind == "tuple":
        srcs, m = arg
        F = InputTuple(tuple(parse_tuple(srcs)))
        B = bs_ideal(F, m, budget)
        checks["structure"] = check_structure(B, m).ok
        checks["resolved"] = not locus_components(B).unresolved
        cv = cross_validate(F, m, ideal=B)
        checks["oracle_verified"] = not cv.unverified
        checks["no_smaller_divisor"] = not cv.smaller_found
        result = ", ".join(factored_string(g) for g in B.generators)
        name = f"B[{', '.join(srcs)}]^{m}"
    elif kind == "union":
        F = InputTuple(tuple(parse_tuple(arg)))
        loci = {}
        for m in MULTI_INDICES:
            B = bs_ideal(F, m, budget)
            loci[m] = SupportLocus(F.r, (exp_image(h) for h in locus_components(B).components))
        checks["union_formula"] = locus_equal(loci[(1, 1)], locus_union(loci[(1, 0)], loci[(0, 1)]))
        result = str(sorted(map(str, loci[(1, 1)])))
        name = f"union[{', '.join(arg)}]"
    elif kind == "diagonal":
        F = InputTuple(tuple(parse_tuple(arg)))
        B = bs_ideal(F, (1, 1), budget)
        L = SupportLocus(2, (exp_image(h) for h in locus_components(B).components))
        spec = diagonal_specialization(L, (1, 1))
        product = parse_tuple(["*".join(f"({s})" for s in arg)])[0]
        expected = exp_of_roots(bfunction(product, budget))
        checks["diagonal"] = spec.angles == expected and not spec.whole_line
        result = str([str(a) for a in spec.angles])
        name = f"diagonal[{', '.join(arg)}]"
    elif kind == "zeta":
        entry = RESOLUTIONS[arg]
        F = InputTuple(tuple(parse_tuple(entry["F"])))
        R = ResolutionData.from_dict(entry["data"])
        report = conjecture_check(R, bs_ideal(F, None, budget))
        checks["candidates_contained"] = report.all_contained
        result = str([h.as_dict() for h in report.contained])
        name = f"zeta[{arg}]"
    else:
        raise ValueError(kind)
    return {"name": name, "result": result, "checks": checks, "passed": all(checks.values())}


def _suite_plan() -> list[tuple[str, object]]:
    plan: list[tuple[str, object]] = [("bfun", f) for f in BFUNCTIONS]
    plan += [("tuple", (F, m)) for F in TUPLES for m in MULTI_INDICES]
    plan += [("union", F) for F in UNION_TUPLES]
    plan += [("diagonal", ("x", "y"))]
    plan += [("zeta", k) for k in sorted(RESOLUTIONS)]
    return plan


def _cmd_suite(job: JobSpec) -> dict:
    plan = _suite_plan()
    if job.jobs > 1:
        with ProcessPoolExecutor(max_workers=job.jobs) as pool:
            entries = list(pool.map(_suite_entry, *zip(*[(k, a, job.budget) for k, a in plan])))
    else:
        entries = [_suite_entry(k, a, job.budget) for k, a in plan]
    return dict(reports={"entries": entries, "all_passed": all(e["passed"] for e in entries)})


_HANDLERS = {
    "bfun": _cmd_bfun,
    "ann": _cmd_ann,
    "tuple": _cmd_tuple,
    "verify": _cmd_verify,
    "oracle-bfun": _cmd_oracle_bfun,
    "exp-locus": _cmd_exp_locus,
    "zeta": _cmd_zeta,
    "suite": _cmd_suite,
}


@lru_cache(maxsize=1)
def result_schema() -> dict:
    return json.loads(resources.files("bsideal").joinpath("result.schema.json").read_text())


def validate_document(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, result_schema())


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run_job(job: JobSpec, engine_version: str = __version__,
            cache: ResultCache | None = None) -> tuple[int, str]:
    """Execute ``job``; returns (exit status, JSON text or error message)."""
    try:
        norm = job.normalized()
        key = cache_key(norm, engine_version)
        if job.use_cache:
            cache = cache or ResultCache()
            hit = cache.get(key)
            if hit is not None:
                log.info("served from cache: %s", key)
                return EXIT_OK, hit
        doc = _document(job, norm, engine_version, **_HANDLERS[job.command](job))
    except (ParseError, InvalidInput, ResolutionDataError, LocusError) as exc:
        return EXIT_INPUT, f"error: {exc}"
    except ResourceError as exc:
        return EXIT_RESOURCE, f"resource limit: {exc}"
    validate_document(doc)
    text = dumps(doc)
    if job.use_cache:
        try:
            cache.put(key, text)
        except OSError as exc:
            log.warning("cache write failed: %s", exc)
    status = EXIT_CHECK if job.command == "suite" and not doc["reports"]["all_passed"] else EXIT_OK
    return status, text


# -- argument parsing -----------------------------------------------------------

def _m_vector(text: str) -> tuple[int, ...]:
    try:
        m = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in m):
        raise argparse.ArgumentTypeError("m entries must be non-negative")
    return m


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
    common.add_argument("--max-pairs", type=int, default=Budget.max_pairs, help="Groebner pair budget")
    common.add_argument("--max-gb-degree", type=int, default=Budget.max_degree, help="Groebner degree budget")
    common.add_argument("--max-gb-s-degree", type=int, default=Budget.max_s_degree, help="Groebner s-degree budget")
    common.add_argument("-v", "--verbose", action="store_true")

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--max-order", type=int, default=AnsatzBounds.max_order)
    oracle.add_argument("--max-x-degree", type=int, default=AnsatzBounds.max_x_degree)
    oracle.add_argument("--max-s-degree", type=int, default=AnsatzBounds.max_s_degree)
    oracle.add_argument("--max-unknowns", type=int, default=AnsatzBounds.max_unknowns)

    tup = argparse.ArgumentParser(add_help=False)
    tup.add_argument("-F", dest="F", action="append", required=True, metavar="POLY", help="repeat once per f_j")
    tup.add_argument("-m", type=_m_vector, help="multi-index, e.g. 1,0 (default all ones)")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("-f", dest="f", required=True, metavar="POLY")

    p = argparse.ArgumentParser(prog="bsideal", description="Bernstein-Sato polynomials and ideals over Q.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("bfun", parents=[common, single], help="b-function of one polynomial")
    a = sub.add_parser("ann", parents=[common], help="annihilator of prod f_j^s_j")
    a.add_argument("-F", "-f", dest="F", action="append", required=True, metavar="POLY")
    sub.add_parser("tuple", parents=[common, tup], help="B_F^m with locus and structure report")
    v = sub.add_parser("verify", parents=[common, tup, oracle], help="search a witness operator for b")
    v.add_argument("-b", required=True, metavar="POLY_IN_S")
    sub.add_parser("oracle-bfun", parents=[common, single, oracle], help="b-function by ansatz search")
    e = sub.add_parser("exp-locus", parents=[common, tup], help="Exp of the zero locus of B_F^m")
    e.add_argument("--check-union", action="store_true", help="compare with the union over unit multi-indices")
    z = sub.add_parser("zeta", parents=[common, tup], help="candidate poles from resolution data vs B_F")
    z.add_argument("--resolution", required=True, metavar="JSON")
    s = sub.add_parser("suite", parents=[common], help="run the reference corpus checks")
    s.add_argument("-j", "--jobs", type=int, default=1)
    return p


def job_from_args(args: argparse.Namespace) -> JobSpec:
    budget = Budget(args.max_pairs, args.max_gb_degree, args.max_gb_s_degree)
    bounds = None
    if hasattr(args, "max_order"):
        bounds = AnsatzBounds(args.max_order, args.max_x_degree, args.max_s_degree, args.max_unknowns)
    F = tuple(getattr(args, "F", None) or ([args.f] if getattr(args, "f", None) else []))
    resolution = None
    if getattr(args, "resolution", None):
        try:
            resolution = json.loads(Path(args.resolution).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ResolutionDataError(f"cannot read {args.resolution}: {exc}") from exc
    return JobSpec(
        command=args.command,
        F=F,
        m=getattr(args, "m", None),
        budget=budget,
        bounds=bounds,
        b=getattr(args, "b", None),
        resolution=resolution,
        check_union=getattr(args, "check_union", False),
        output=args.output,
        use_cache=not args.no_cache,
        jobs=getattr(args, "jobs", 1),
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        job = job_from_args(args)
    except ResolutionDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    status, text = run_job(job)
    if status in (EXIT_INPUT, EXIT_RESOURCE):
        print(text, file=sys.stderr)
        return status
    if job.output:
        Path(job.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
