import json
import subprocess
import sys

import pytest

from qmacdonald.cli import VERIFY_TARGETS, main
from qmacdonald.qfield import ONE, Q, QRat


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_compute_p_single_term(capsys):
    code, data = run_json(capsys, "compute-p", "--lambda", "1", "--n", "2", "--k", "2", "--cache", "")
    assert code == 0
    assert [(e["mu"], QRat.from_json(e["c"])) for e in data["m_basis"]] == [([1, 0], ONE)]


def test_compute_p_lambda2(capsys):
    code, data = run_json(capsys, "compute-p", "--lambda", "2", "--n", "2", "--k", "2", "--cache", "")
    assert code == 0
    got = [(e["mu"], QRat.from_json(e["c"])) for e in data["m_basis"]]
    t = Q**2
    assert got == [([2, 0], ONE), ([1, 1], (ONE - t) * (ONE + Q) / (ONE - Q * t))]


def test_compute_p_too_long(capsys):
    code, _, err = run(capsys, "compute-p", "--lambda", "1,1,1", "--n", "2", "--cache", "")
    assert code == 2
    assert err


def test_bad_arguments(capsys):
    assert run(capsys, "compute-p", "--lambda", "1,2", "--cache", "")[0] == 2
    assert run(capsys, "norm", "--k", "0", "--cache", "")[0] == 2
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "unknown verify target" in err


@pytest.mark.parametrize(
    "lam,n,k,expected",
    [("0", 2, 2, ONE + Q + Q**2), ("1", 2, 1, ONE), ("2,1", 3, 2, None)],
)
def test_norm(capsys, lam, n, k, expected):
    code, data = run_json(capsys, "norm", "--lambda", lam, "--n", str(n), "--k", str(k), "--cache", "")
    assert code == 0
    ct = QRat.from_json(data["ct"])
    assert ct == QRat.from_json(data["formula"])
    assert data["equal"] is True
    if expected is not None:
        assert ct == expected


def test_norm_text(capsys):
    code, out, _ = run(capsys, "norm", "--lambda", "0", "--n", "2", "--k", "2", "--cache", "")
    assert code == 0
    assert "1 + q + q^2" in out and "equal: True" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["theorem", "--n", "2", "--k", "2", "--max-weight", "4"],
        ["blambda", "--max-weight", "6"],
        ["eq33", "--lambda", "2,1", "--n", "2", "--k", "2", "--samples", "3", "--seed", "7"],
        ["ct"],
        ["orthogonality", "--n", "3", "--k", "2", "--max-weight", "3"],
        ["normforms"],
        ["cauchy", "--degree", "2"],
        ["eq31"],
        ["lemma1"],
        ["ressum"],
    ],
)
def test_verify_targets_pass(capsys, argv):
    code, out, _ = run(capsys, "verify", *argv, "--cache", "")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("PASS")


def test_every_target_covered():
    assert set(VERIFY_TARGETS) == {
        "theorem", "ct", "orthogonality", "blambda", "normforms", "cauchy", "eq31", "lemma1", "eq33", "ressum"
    }


def test_eq33_json_schema(capsys):
    code, data = run_json(
        capsys, "verify", "eq33", "--lambda", "1", "--n", "2", "--k", "2", "--samples", "3", "--seed", "7", "--cache", ""
    )
    assert code == 0
    rep = data["reports"][0]
    assert rep["identity"] == "eq33" and rep["lambda"] == [1, 0] and rep["seed"] == 7
    assert len(rep["samples"]) == 3 and all(s["pass"] for s in rep["samples"])


def test_cache_written_and_reused(capsys, tmp_path):
    cache = str(tmp_path / "c")
    code, first = run_json(capsys, "compute-p", "--lambda", "2,1", "--n", "3", "--k", "2", "--cache", cache)
    assert code == 0
    files = list((tmp_path / "c").glob("macdonald_n3_k2_v*.json"))
    assert len(files) == 1
    code, second = run_json(capsys, "compute-p", "--lambda", "2,1", "--n", "3", "--k", "2", "--cache", cache)
    assert first == second


def test_byte_identical_json_subprocess(tmp_path):
    argv = [
        sys.executable, "-m", "qmacdonald", "verify", "eq33", "--lambda", "2,1", "--n", "2", "--k", "2",
        "--samples", "3", "--seed", "123", "--json", "--cache", "",
    ]
    a = subprocess.run(argv, capture_output=True, cwd=tmp_path, check=True).stdout
    b = subprocess.run(argv, capture_output=True, cwd=tmp_path, check=True).stdout
    assert a == b and a
