import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest

from motss import validate_bounds
from motss.cli import main
from motss.harness import ExperimentConfig, dumps, generate_random_instances, run_experiment

FIXTURE = str(Path(__file__).parent / "fixtures" / "two_extremes.txt")


def _json(capsys):
    return json.loads(capsys.readouterr().out)


# -- random instances -------------------------------------------------------

def test_seed_determinism():
    b = validate_bounds((1, 2), (9, 5))
    a = generate_random_instances(b, 6, 10, seed=7)
    c = generate_random_instances(b, 6, 10, seed=7)
    assert [tuple(s) for s in a] == [tuple(s) for s in c]
    assert [tuple(s) for s in a] != [tuple(s) for s in generate_random_instances(b, 6, 10, seed=8)]


def test_singletons_within_bounds():
    b = validate_bounds((1, 2), (9, 5))
    seqs = generate_random_instances(b, 1, 3, seed=0)
    assert len(seqs) == 3
    for s in seqs:
        assert len(s) == 1 and b.contains(s[0])


def test_degenerate_interval():
    b = validate_bounds((3, 2), (3, 2))
    for s in generate_random_instances(b, 4, 5, seed=1):
        assert all(p == b.p_min for p in s)


def test_log_uniform_coverage():
    # half the mass of a log-uniform draw on [1, 100] sits below 10
    b = validate_bounds((1,), (100,))
    xs = np.array([s[0][0] for s in generate_random_instances(b, 1, 4000, seed=3)])
    assert abs(np.mean(xs < 10) - 0.5) < 0.03


def test_bad_counts():
    with pytest.raises(ValueError):
        generate_random_instances(validate_bounds((1,), (2,)), 0, 3, seed=0)


# -- serialization ----------------------------------------------------------

def test_float_round_trip():
    rng = np.random.default_rng(0)
    xs = list(rng.uniform(0, 1e6, 200)) + [0.1, 1 / 3, 2.927050983124842, 1e-300]
    back = json.loads(dumps({"x": xs}))["x"]
    assert all(a == b for a, b in zip(xs, back))


# -- CLI modes --------------------------------------------------------------

def test_simulate_accept_first_takes_extreme(capsys):
    assert main(["simulate", "--f", "max", "--instance", FIXTURE, "--policy", "accept-first"]) == 0
    out = capsys.readouterr().out
    result, trace = out.split("\n\n")
    rows = list(csv.DictReader(io.StringIO(result)))
    assert rows[0]["decision"] == "AcceptedAt(1)"
    assert (rows[0]["r1"], rows[0]["r2"]) == ("1.0", "2.0")
    assert len(list(csv.DictReader(io.StringIO(trace)))) == 1


def test_simulate_bpp_trace(capsys):
    assert main(["simulate", "--f", "max", "--instance", FIXTURE]) == 0
    trace = list(csv.DictReader(io.StringIO(capsys.readouterr().out.split("\n\n")[1])))
    assert [r["t"] for r in trace] == ["1"]
    assert trace[0]["test"] == "True"


def test_front_mode(capsys):
    assert main(["front", "--instance", FIXTURE]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [(r["p1"], r["p2"]) for r in rows] == [("1.0", "2.0"), ("2.0", "1.0")]


def test_ratio_mode(capsys):
    assert main(["ratio", "--f", "max", "--instance", FIXTURE, "--policy", "reject-all"]) == 0
    data = _json(capsys)
    assert data["decision"] == "RejectedAll" and data["value"] == 2.0


def test_zvalue_mode(capsys):
    assert main(["zvalue", "--f", "gmean", "--bounds", "1,1", "9,4"]) == 0
    data = _json(capsys)
    assert data["value"] == pytest.approx(2.449490, abs=1e-6)
    assert data["method"] == "closed"


def test_zvalue_numeric_mode(capsys):
    assert main(["zvalue", "--f", "amean", "--bounds", "1,1", "9,4", "--method", "numeric",
                 "--resolution", "256"]) == 0
    assert _json(capsys)["value"] == pytest.approx(2.927050983124842, abs=1e-3)


def test_zvalue_canonicalize(capsys):
    assert main(["zvalue", "--f", "max", "--bounds", "1,1", "4,9"]) == 2
    assert _json(capsys)["error"] == "NotCanonical"
    assert main(["zvalue", "--f", "max", "--bounds", "1,1", "4,9", "--canonicalize"]) == 0
    data = _json(capsys)
    assert data["value"] == 4.0 and data["permutation"] == [2, 1]


def test_adversary_mode(capsys):
    assert main(["adversary", "--f", "min", "--bounds", "1,1", "9,4", "--policy", "accept-first"]) == 0
    data = _json(capsys)
    assert data["value"] == 2.0 and data["realized_instance"][-1] == [9.0, 4.0]


def test_verify_mode(capsys):
    assert main(["verify", "--f", "max", "--bounds", "1,1", "4,4", "--grid", "3,3", "--horizon", "2"]) == 0
    data = _json(capsys)
    assert data["bpp_is_optimal"] and data["instance_space_size"] == 90


def test_verify_over_budget(capsys):
    code = main(["verify", "--f", "max", "--bounds", "1,1", "4,4", "--horizon", "3", "--budget", "50"])
    assert code != 0
    assert _json(capsys)["error"] == "BudgetExceeded"


def test_sweep_mode(capsys, tmp_path):
    args = ["sweep", "--f", "gmean", "--phis", "4,9", "--count", "200", "--horizon", "5",
            "--resolution", "64", "--seed", "3", "--out", str(tmp_path)]
    assert main(args) == 0
    data = _json(capsys)
    assert data["pairs"] == 3 and data["upper_bound_held"]
    rows = list(csv.DictReader((tmp_path / "detail.csv").open()))
    assert len(rows) == 3 and set(rows[0]) >= {"phi1", "phi2", "z_closed", "bpp_worst_random"}


def test_bad_config_error_json(capsys):
    assert run_experiment(ExperimentConfig(mode="zvalue", f="gmean")) == 2
    assert set(_json(capsys)) == {"error", "message"}


def test_missing_instance_file(capsys, tmp_path):
    assert main(["front", "--instance", str(tmp_path / "nope.txt")]) == 2
    assert _json(capsys)["error"] == "FileNotFoundError"


# -- artifacts --------------------------------------------------------------

def test_byte_identical_summaries(tmp_path, capsys):
    args = ["sweep", "--f", "max", "--phis", "2,5", "--count", "100", "--horizon", "4",
            "--resolution", "32", "--seed", "11"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    capsys.readouterr()
    for name in ("summary.json", "detail.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    meta = json.loads((tmp_path / "a" / "metadata.json").read_text())
    assert "created" in meta and meta["config"]["seed"] == 11
