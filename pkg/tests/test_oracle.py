import pytest

from bsideal.core import factored_string
from bsideal.groebner import ResourceError
from bsideal.oracle import AnsatzBounds, cross_validate, find_witness, oracle_bfunction, solve_exact
from bsideal.parser import parse_poly, parse_s_poly, parse_tuple
from bsideal.pipeline import InputTuple


def tup(*srcs):
    return InputTuple(tuple(parse_tuple(srcs)))


def test_solve_exact():
    cols = [{0: 1, 1: 1}, {0: 1, 1: -1}]
    assert solve_exact(cols, {0: 3, 1: 1}) == [2, 1]
    assert solve_exact([{0: 1}, {0: 2}], {1: 1}) is None


@pytest.mark.parametrize("b, srcs, m, witness", [
    ("s+1", ("x",), (1,), "d_x"),
    ("(s+1)*(s+1/2)", ("x^2",), (1,), "1/4*d_x^2"),
    ("(s1+1)*(s2+1)", ("x", "y"), (1, 1), "d_x*d_y"),
])
def test_known_witnesses(b, srcs, m, witness):
    F = tup(*srcs)
    assert str(find_witness(parse_s_poly(b, F.r), F, m)) == witness


def test_no_witness_within_bounds():
    F = tup("x^2")
    assert find_witness(parse_s_poly("s+1", 1), F, (1,), AnsatzBounds(2, 2, 1)) is None


def test_oversized_system_is_a_resource_error():
    with pytest.raises(ResourceError):
        find_witness(parse_s_poly("s+1", 1), tup("x*y"), (1,), AnsatzBounds(4, 4, 1, max_unknowns=10))


@pytest.mark.parametrize("f, bounds, expected", [
    ("x", AnsatzBounds(1, 1, 0), "(s+1)"),
    ("x^3", AnsatzBounds(3, 3, 0), "(s+1)*(s+2/3)*(s+1/3)"),
    ("x^2 + y^3", AnsatzBounds(3, 3, 0), "(s+7/6)*(s+1)*(s+5/6)"),
])
def test_oracle_bfunction(f, bounds, expected):
    assert factored_string(oracle_bfunction(parse_poly(f), bounds)) == expected


def test_monotone_bounds():
    F = tup("x^2")
    b = parse_s_poly("(s+1)*(s+1/2)", 1)
    found = [find_witness(b, F, (1,), AnsatzBounds(k, k, 1)) is not None for k in range(5)]
    assert found == sorted(found)


def test_cross_validation_reports():
    rep = cross_validate(tup("x", "y"), (1, 1))
    assert rep.ok
    assert rep.verified == [("s1*s2 + s1 + s2 + 1", "d_x*d_y")]
    assert sorted(rep.divisors_checked) == ["s1 + 1", "s2 + 1"]
    rep = cross_validate(tup("x^2 + y^3"))
    assert rep.agrees and rep.ok


def test_single_factor_for_repeated_entry_has_no_witness():
    # the smaller candidate s1+s2+2 is not reached even with generous bounds
    F = tup("x", "x")
    assert find_witness(parse_s_poly("s1+s2+2", 2), F, (1, 1), AnsatzBounds(4, 4, 2)) is None
    assert find_witness(parse_s_poly("(s1+s2+1)*(s1+s2+2)", 2), F, (1, 1)) is not None
