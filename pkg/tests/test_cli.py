import json
import logging
from pathlib import Path

import pytest

from bsideal.cache import ResultCache, cache_key
from bsideal.cli import JobSpec, main, result_schema, run_job, validate_document
from bsideal.corpus import RESOLUTIONS
from bsideal.groebner import Budget

ROOT = Path(__file__).resolve().parents[1]


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_bfun(capsys):
    status, out, _ = run(capsys, "bfun", "-f", "x^2")
    doc = json.loads(out)
    assert status == 0
    assert doc["generators"] == ["(s+1)*(s+1/2)"]
    assert doc["roots"] == [[-1, 1, 1], [-1, 2, 1]]
    assert doc["reports"]["lct"] == [1, 2]


def test_tuple(capsys):
    status, out, _ = run(capsys, "tuple", "-F", "x", "-F", "y", "-m", "1,1")
    doc = json.loads(out)
    assert doc["generators"] == ["(s1+1)*(s2+1)"]
    assert len(doc["exp_locus"]) == 2
    assert doc["reports"]["structure"]["type_one"]


def test_verify(capsys):
    _, out, _ = run(capsys, "verify", "-b", "(s1+1)*(s2+1)", "-F", "x", "-F", "y", "-m", "1,1", "--max-order", "2")
    assert json.loads(out)["reports"]["witness"] == "d_x*d_y"


def test_oracle_bfun(capsys):
    _, out, _ = run(capsys, "oracle-bfun", "-f", "x^3", "--max-order", "3", "--max-x-degree", "3", "--max-s-degree", "0")
    assert json.loads(out)["generators"] == ["(s+1)*(s+2/3)*(s+1/3)"]


def test_ann(capsys):
    _, out, _ = run(capsys, "ann", "-f", "x")
    assert json.loads(out)["generators"] == ["x*d_x - s"]


def test_exp_locus_union(capsys):
    _, out, _ = run(capsys, "exp-locus", "-F", "x", "-F", "x*y", "--check-union")
    assert json.loads(out)["reports"]["union_formula"]["holds"]


def test_zeta(capsys, tmp_path):
    path = tmp_path / "cusp.json"
    path.write_text(json.dumps(RESOLUTIONS["cusp"]["data"]))
    _, out, _ = run(capsys, "zeta", "-F", "x^2 + y^3", "--resolution", str(path))
    assert json.loads(out)["reports"]["containment"]["all_contained"]


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    status, out, _ = run(capsys, "bfun", "-f", "x", "-o", str(target))
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["generators"] == ["(s+1)"]


@pytest.mark.parametrize("argv", [
    ["bfun", "-f", "x^-1"],
    ["bfun", "-f", "2x"],
    ["bfun", "-f", "3"],
    ["tuple", "-F", "x", "-F", "y", "-m", "1,1,1"],
    ["tuple", "-F", "x", "-m", "0"],
    ["zeta", "-F", "x", "--resolution", "/nonexistent.json"],
    ["verify", "-b", "s3", "-F", "x", "-F", "y"],
])
def test_input_errors_exit_1(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 1 and out == "" and "error" in err


def test_resource_error_exit_2(capsys):
    status, _, err = run(capsys, "bfun", "-f", "x^5 + y^4", "--max-pairs", "4", "--no-cache")
    assert status == 2 and "max_pairs" in err


def test_byte_identical_reruns(capsys):
    argv = ["tuple", "-F", "x", "-F", "x*y", "--no-cache"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_every_command_output_validates(capsys, tmp_path):
    path = tmp_path / "axes.json"
    path.write_text(json.dumps(RESOLUTIONS["axes"]["data"]))
    commands = [
        ["bfun", "-f", "x*y"],
        ["ann", "-F", "x", "-F", "y"],
        ["tuple", "-F", "x", "-F", "x + y", "-m", "1,0"],
        ["verify", "-b", "s+1", "-F", "x^2", "--max-order", "1"],
        ["oracle-bfun", "-f", "x^2"],
        ["exp-locus", "-F", "x", "-F", "y"],
        ["zeta", "-F", "x", "-F", "y", "--resolution", str(path)],
    ]
    for argv in commands:
        status, out, _ = run(capsys, *argv)
        assert status == 0
        validate_document(json.loads(out))


def test_published_schema_matches_package_data():
    assert json.loads((ROOT / "docs" / "result.schema.json").read_text()) == result_schema()


def test_cache_replay_is_byte_identical(isolated_cache, caplog):
    job = JobSpec("bfun", ("x^2 + y^3",))
    first = run_job(job)
    with caplog.at_level(logging.INFO, logger="bsideal"):
        second = run_job(job)
    assert first == second
    assert "served from cache" in caplog.text


def test_cache_key_sensitivity():
    base = JobSpec("bfun", ("x^2",)).normalized()
    changed = JobSpec("bfun", ("x^2",), budget=Budget(max_pairs=10)).normalized()
    assert cache_key(base, "1") != cache_key(changed, "1")
    assert cache_key(base, "1") != cache_key(base, "2")
    # normalization: spelling differences share a key
    assert cache_key(JobSpec("bfun", ("x*x",)).normalized(), "1") == cache_key(base, "1")


def test_engine_version_change_misses(isolated_cache, caplog):
    job = JobSpec("bfun", ("x",))
    run_job(job, engine_version="0.0.1")
    with caplog.at_level(logging.INFO, logger="bsideal"):
        _, text = run_job(job, engine_version="0.0.2")
    assert "served from cache" not in caplog.text
    assert json.loads(text)["engine_version"] == "0.0.2"


def test_corrupt_entry_is_recomputed(isolated_cache, caplog):
    job = JobSpec("bfun", ("x",))
    _, good = run_job(job)
    cache = ResultCache()
    path = cache.path(cache_key(job.normalized(), json.loads(good)["engine_version"]))
    path.write_text("{not json")
    with caplog.at_level(logging.WARNING):
        status, text = run_job(job)
    assert status == 0 and text == good
    assert "corrupt" in caplog.text
    assert path.read_text() == good


def test_suite_parallel_matches_serial():
    serial = run_job(JobSpec("suite", use_cache=False))
    parallel = run_job(JobSpec("suite", use_cache=False, jobs=2))
    assert serial == parallel
    assert serial[0] == 0
    assert json.loads(serial[1])["reports"]["all_passed"]
