"""Candidate poles of the motivic zeta function against B_F.

Each exceptional divisor of an embedded resolution with data (N, nu) gives a
candidate pole N . s + nu = 0.  Here every candidate lies in the zero locus
of the Bernstein-Sato ideal.
"""

from bsideal import ResolutionData, bs_ideal, conjecture_check, parse_tuple, polar_candidates
from bsideal.corpus import RESOLUTIONS
from bsideal.pipeline import InputTuple

for name, entry in RESOLUTIONS.items():
    F = InputTuple(tuple(parse_tuple(entry["F"])))
    R = ResolutionData.from_dict(entry["data"])
    report = conjecture_check(R, bs_ideal(F))
    print(f"{name}: {R.label}")
    for h in polar_candidates(R):
        where = "contained" if h in report.contained else "candidate only"
        print(f"  {h.a} . s + {h.b} = 0   {where}")
