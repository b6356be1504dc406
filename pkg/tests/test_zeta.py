import json

import pytest

from bsideal.corpus import RESOLUTIONS
from bsideal.parser import parse_tuple
from bsideal.pipeline import InputTuple, bs_ideal
from bsideal.torus import HyperplaneComponent
from bsideal.zeta import ResolutionData, ResolutionDataError, conjecture_check, polar_candidates


def ideal_for(name):
    F = InputTuple(tuple(parse_tuple(RESOLUTIONS[name]["F"])))
    return bs_ideal(F)


def test_cusp_candidates_contained():
    R = ResolutionData.from_dict(RESOLUTIONS["cusp"]["data"])
    assert polar_candidates(R) == [HyperplaneComponent((1,), 1), HyperplaneComponent((6,), 5)]
    report = conjecture_check(R, ideal_for("cusp"))
    assert report.all_contained and len(report.contained) == 2


def test_axes_candidates_contained():
    R = ResolutionData.from_dict(RESOLUTIONS["axes"]["data"])
    assert [h.as_dict() for h in polar_candidates(R)] == [{"a": [0, 1], "b": 1}, {"a": [1, 0], "b": 1}]
    assert conjecture_check(R, ideal_for("axes")).all_contained


def test_candidate_outside_the_zero_locus():
    R = ResolutionData.from_dict({"r": 1, "divisors": [{"N": [2], "nu": 3}]})
    report = conjecture_check(R, ideal_for("cusp"))
    assert [h.as_dict() for h in report.candidate_only] == [{"a": [2], "b": 3}]


def test_divisors_without_multiplicity_are_dropped():
    R = ResolutionData.from_dict({"r": 2, "divisors": [{"N": [0, 0], "nu": 2}, {"N": [1, 0], "nu": 1}]})
    assert len(R.divisors) == 1


@pytest.mark.parametrize("doc", [
    {"r": 1, "divisors": [{"N": [1, 2], "nu": 1}]},
    {"r": 1, "divisors": [{"N": [-1], "nu": 1}]},
    {"r": 1, "divisors": [{"N": [1], "nu": 0}]},
    {"divisors": []},
])
def test_malformed_resolution_data(doc):
    with pytest.raises(ResolutionDataError):
        ResolutionData.from_dict(doc)


def test_rank_mismatch():
    R = ResolutionData.from_dict(RESOLUTIONS["axes"]["data"])
    with pytest.raises(ResolutionDataError):
        conjecture_check(R, ideal_for("cusp"))


def test_load_round_trip(tmp_path):
    path = tmp_path / "res.json"
    path.write_text(json.dumps(RESOLUTIONS["cusp"]["data"]))
    R = ResolutionData.load(path)
    assert R.as_dict()["divisors"][3] == {"N": [6], "nu": 5, "label": "E3"}
