import json
import subprocess
import sys

import pytest

from conelight.cli import dispatch


def run_cli(capsys, argv):
    code = dispatch(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def shear2_file(tmp_path):
    path = tmp_path / "shear2.json"
    path.write_text(json.dumps({"type": "shear2"}))
    return str(path)


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "matrix.json"
    path.write_text(json.dumps({"type": "matrix", "data": [[2, 1], [1, 2]]}))
    return str(path)


def test_illuminate_optimal(capsys):
    code, doc = run_cli(capsys, ["illuminate-optimal", "-n", "4"])
    assert code == 0
    assert doc["count"] == 6
    assert len(doc["directions"]) == 6
    assert all(len(w) == 3 for w in doc["directions"])


def test_output_is_byte_identical_across_runs(capsys, matrix_file):
    dispatch(["illuminate-optimal", "-n", "5"])
    first = capsys.readouterr().out
    dispatch(["illuminate-optimal", "-n", "5"])
    second = capsys.readouterr().out
    assert first == second

    detect_args = ["detect", "--map", matrix_file, "--seed", "42"]
    dispatch(detect_args)
    first = capsys.readouterr().out
    dispatch(detect_args)
    second = capsys.readouterr().out
    assert first == second


def test_chains_d1(capsys):
    code, doc = run_cli(capsys, ["chains", "-d", "1"])
    assert code == 0
    assert doc == {"command": "chains", "d": 1, "count": 1, "chains": [[[0], [1]]]}


def test_illuminate_number(capsys):
    code, doc = run_cli(capsys, ["illuminate-number", "-n", "3"])
    assert code == 0
    assert doc["illumination_number"] == 3


def test_illuminate_number_bad_workers_env(capsys, monkeypatch):
    monkeypatch.setenv("CONELIGHT_WORKERS", "lots")
    code, doc = run_cli(capsys, ["illuminate-number", "-n", "3"])
    assert code == 1
    assert doc["error"]["type"] == "usage"


def test_certificate(capsys):
    code, doc = run_cli(capsys, ["certificate", "-n", "3"])
    assert code == 0
    assert doc["size"] == 3
    assert doc["all_unshareable"] is True
    assert len(doc["pairs"]) == 3


def test_illuminate_verify(capsys, tmp_path):
    dirs_file = tmp_path / "dirs.json"
    code, doc = run_cli(capsys, ["illuminate-optimal", "-n", "3"])
    dirs_file.write_text(json.dumps(doc["directions"]))
    code, doc = run_cli(capsys, ["illuminate-verify", "-n", "3", "--directions", str(dirs_file)])
    assert code == 0
    assert doc["covered"] is True

    single = tmp_path / "single.json"
    single.write_text(json.dumps([[-2.0, -1.0]]))
    code, doc = run_cli(capsys, ["illuminate-verify", "-n", "3", "--directions", str(single)])
    assert code == 0
    assert doc["covered"] is False
    assert doc["unilluminated"]


def test_detect_budget_exhausted_is_exit_2(capsys, shear2_file):
    code, doc = run_cli(
        capsys,
        ["detect", "--map", shear2_file, "--mode", "log-uniform",
         "--max-iters", "1000", "--seed", "7"],
    )
    assert code == 2
    assert doc["halted"] is False
    assert doc["recorded_count"] == 1
    assert doc["total_subsets"] == 2


def test_detect_halts_is_exit_0(capsys, matrix_file):
    code, doc = run_cli(capsys, ["detect", "--map", matrix_file, "--seed", "5"])
    assert code == 0
    assert doc["halted"] is True
    assert doc["eigenvector_estimate"]["eigenvalue"] == pytest.approx(3.0, abs=1e-8)


def test_detect_scheduled_mode(capsys, matrix_file):
    code, doc = run_cli(
        capsys, ["detect", "--map", matrix_file, "--mode", "scheduled", "--beta", "1000"]
    )
    assert code == 0
    assert doc["samples_used"] == 2


def test_detect_history_csv(capsys, matrix_file, tmp_path):
    csv_path = tmp_path / "history.csv"
    code, doc = run_cli(
        capsys,
        ["detect", "--map", matrix_file, "--seed", "5", "--history-csv", str(csv_path)],
    )
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "index,point,ratios,recorded"
    assert len(lines) == doc["samples_used"] + 1


def test_detect_invalid_map_is_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"type": "matrix", "data": [[1, 0], [0, 0]]}))
    code, doc = run_cli(capsys, ["detect", "--map", str(bad)])
    assert code == 1
    assert doc["error"]["type"] == "invalid_map"
    assert doc["error"]["violation"] == "zero_row"


def test_detect_missing_map_file_is_exit_1(capsys, tmp_path):
    code, doc = run_cli(capsys, ["detect", "--map", str(tmp_path / "nope.json")])
    assert code == 1
    assert doc["error"]["violation"] == "unreadable_file"


def test_eigen_command(capsys, matrix_file):
    code, doc = run_cli(
        capsys, ["eigen", "--map", matrix_file, "--x0", "1,0.3", "--tol", "1e-10"]
    )
    assert code == 0
    assert doc["converged"] is True
    assert doc["eigenvalue"] == pytest.approx(3.0, abs=1e-8)


def test_eigen_non_convergence_is_status_not_failure(capsys, shear2_file):
    code, doc = run_cli(capsys, ["eigen", "--map", shear2_file, "--max-iters", "100"])
    assert code == 0
    assert doc["converged"] is False


def test_eigen_bad_x0_is_exit_1(capsys, matrix_file):
    code, doc = run_cli(capsys, ["eigen", "--map", matrix_file, "--x0", "1,zap"])
    assert code == 1
    assert doc["error"]["type"] == "usage"


def test_bad_arguments_are_exit_1(capsys):
    code, doc = run_cli(capsys, ["illuminate-optimal"])
    assert code == 1
    assert doc["error"]["type"] == "usage"


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "conelight", "chains", "-d", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["count"] == 2
