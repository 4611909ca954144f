import csv
import io
import json

import numpy as np
import pytest

from ptsextic.cli import main
from ptsextic.verify import VerificationReport, evaluate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--g", "1e4", "--epsilon-frac", "1.0", "--n-max", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1 and doc["command"] == "spectrum" and doc["passed"]
    assert doc["config"]["g"] == 1e4
    assert doc["config"]["R"] == pytest.approx(11.4720269, rel=1e-8)
    assert len(doc["results"]) == 4
    for row in doc["results"]:
        assert abs(row["im_e"]) <= 1e-8 * abs(row["re_e"])


def test_spectrum_csv_file(tmp_path, capsys):
    out = tmp_path / "levels.csv"
    code, stdout, _ = run(capsys, "spectrum", "--R", "20", "--n-max", "2", "--format", "csv", "--out", str(out))
    assert code == 0
    assert "n=0" in stdout
    raw = out.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.reader(io.StringIO(raw.decode("utf-8"))))
    assert rows[0] == ["n", "re_e", "im_e", "residual", "method"]
    assert len(rows) == 3
    assert '"' not in raw.decode()


def test_taylor_exact_forms(capsys):
    code, out, _ = run(capsys, "taylor", "--R", "100", "--k-max", "10")
    assert code == 0
    res = json.loads(out)["results"]
    assert [r["exact"] for r in res][3] == "-56i/(3R)"
    assert res[9]["exact"] == "+2002i/(3R^7)"
    assert res[3]["im_c"] == pytest.approx(-56 / 300, rel=1e-15)


@pytest.mark.parametrize("eps_flag", [["--epsilon-frac", "0.01"], ["--epsilon-frac", "1"], ["--epsilon-abs", "0.37"]])
def test_profile_symmetry(tmp_path, capsys, eps_flag):
    out = tmp_path / "w.csv"
    code, _, _ = run(capsys, "potential-profile", "--R", "100", *eps_flag, "--rescale", "1e15", "--out", str(out))
    assert code == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    s, re, im = data.T
    assert np.array_equal(s, -s[::-1])
    scale = np.max(np.abs(data[:, 1:]))
    assert np.max(np.abs(re - re[::-1])) <= 1e-12 * scale
    assert np.max(np.abs(im + im[::-1])) <= 1e-12 * scale


def test_profile_rescaled_magnitude(tmp_path, capsys):
    out = tmp_path / "w.csv"
    run(capsys, "potential-profile", "--R", "100", "--epsilon-frac", "0.01", "--rescale", "1e15", "--out", str(out))
    re = np.loadtxt(out, delimiter=",", skiprows=1)[:, 1]
    assert 0.1 <= np.max(np.abs(re)) <= 10


def test_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, stdout, _ = run(capsys, "verify", "--g", "1e4", "--claim", "epsilon_independence", "--out", str(out))
    assert code == 0 and "PASS" in stdout
    doc = json.loads(out.read_text())
    reports = [VerificationReport.from_dict(d) for d in doc["results"]]
    assert all(evaluate(r) == r.passed for r in reports)
    assert doc["passed"] == all(r.passed for r in reports)


def test_verify_failure_exit_code(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify", "--R", "2", "--claim", "perturbation_match", "--out", str(out))
    assert code == 3
    assert json.loads(out.read_text())["passed"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--g", "1e4", "--R", "3"],
        ["spectrum"],
        ["spectrum", "--g", "1e4", "--epsilon-abs", "-1"],
        ["spectrum", "--g", "1e4", "--epsilon-frac", "0"],
        ["potential-profile", "--R", "10", "--rescale", "0"],
        ["spectrum", "--g", "1e4", "--grid-points", "100", "--method", "fd"],
        ["verify", "--g", "1e4", "--claim", "scaling", "--g-list", "1e4,1e4,1e5"],
        ["spectrum", "--g", "abc"],
        ["nonsense"],
    ],
)
def test_bad_input_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_stationary(capsys):
    code, out, _ = run(capsys, "stationary", "--g", "1e8")
    assert code == 0
    for row in json.loads(out)["results"]:
        assert row["abs_v_prime_over_R"] <= 1e-10
        assert abs(row["re_v_second"] - 16) <= 1e-10


def test_solver_failure_exit_2(capsys):
    code, _, err = run(capsys, "spectrum", "--g", "1e4", "--epsilon-frac", "0.7", "--n-max", "1")
    assert code == 2
    assert "solver failure" in err
