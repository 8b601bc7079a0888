import csv
import json
import subprocess
import sys

import pytest

from subleading.cli import BATCH_COLUMNS, main
from subleading.fixtures import CATALOG, catalog_csv


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_analyze_rank_zero(capsys):
    code, out = run_cli(capsys, "analyze", "--curve", "0,-1,1,-10,-20")
    data = json.loads(out)
    assert code == 0
    assert data["conductor"] == 11 and data["rank"] == 0 and data["epsilon"] == 1
    assert data["conductor_factorization"] == [[11, 1]]
    assert abs(data["a_r"] - 0.2538418609) < 1e-9
    assert data["theorem"]["pass"] is True
    assert "timings" not in data


def test_analyze_non_minimal_input(capsys):
    # 11a1 scaled by u = 2.
    code, out = run_cli(capsys, "analyze", "--curve", "0,-4,8,-160,-1280")
    data = json.loads(out)
    assert code == 0 and data["conductor"] == 11
    assert data["source"]["minimal_model"] == [0, -1, 1, -10, -20]


def test_analyze_singular(capsys):
    code, out = run_cli(capsys, "analyze", "--curve", "0,0,0,0,0")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "singular-curve"


def test_analyze_malformed_curve(capsys):
    code, out = run_cli(capsys, "analyze", "--curve", "1,2,3")
    assert code == 1 and "error" in json.loads(out)


def test_coefficient_mode_matches_curve_mode(capsys, tmp_path):
    path = tmp_path / "a.txt"
    code, _ = run_cli(capsys, "coeffs", "--curve", "0,-1,1,-10,-20", "--out", str(path))
    assert code == 0
    _, curve_out = run_cli(capsys, "analyze", "--curve", "0,-1,1,-10,-20", "--sign", "+1")
    code, coeff_out = run_cli(capsys, "analyze", "--coeffs", str(path), "--conductor", "11", "--sign", "+1")
    assert code == 0
    a, b = json.loads(curve_out), json.loads(coeff_out)
    for key in ("conductor", "epsilon", "rank", "a_r", "a_r1", "f1", "fprime1", "lambda_derivatives", "theorem"):
        assert a[key] == b[key], key
    assert b["sign_source"] == "override"


def test_coefficient_mode_requires_sign(capsys, tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("1\n-2\n")
    code, out = run_cli(capsys, "analyze", "--coeffs", str(path), "--conductor", "11")
    assert code == 1 and json.loads(out)["error"]["code"] == "invalid-request"


def test_too_few_coefficients(capsys, tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("1\n-2\n-1\n")
    code, out = run_cli(capsys, "analyze", "--coeffs", str(path), "--conductor", "11", "--sign", "+1")
    assert code == 1 and json.loads(out)["error"]["code"] == "insufficient-coefficients"


def test_output_is_deterministic(capsys):
    outs = {run_cli(capsys, "analyze", "--curve", "0,1,1,-2,0")[1] for _ in range(3)}
    assert len(outs) == 1


def test_digits_rounds_output(capsys):
    _, out = run_cli(capsys, "analyze", "--curve", "0,0,1,-1,0", "--digits", "4")
    assert json.loads(out)["a_r"] == 0.306


def test_timings_opt_in(capsys):
    _, out = run_cli(capsys, "analyze", "--curve", "0,0,1,-1,0", "--timings")
    assert "total" in json.loads(out)["timings"]


def test_tight_tolerance_can_fail(capsys):
    code, out = run_cli(capsys, "analyze", "--curve", "0,0,1,-1,0", "--tol", "0")
    data = json.loads(out)
    assert (code == 2) == (not data["theorem"]["pass"])


def test_batch_catalog(capsys, tmp_path):
    src, dst = tmp_path / "in.csv", tmp_path / "out.csv"
    src.write_text(catalog_csv())
    code, out = run_cli(capsys, "batch", str(src), str(dst))
    assert code == 0 and out.strip() == f"pass={len(CATALOG)} fail=0 error=0"
    with open(dst) as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == BATCH_COLUMNS
    for fx, row in zip(CATALOG, rows):
        assert int(row["conductor"]) == fx.conductor and int(row["rank"]) == fx.rank


def test_batch_empty(capsys, tmp_path):
    src, dst = tmp_path / "in.csv", tmp_path / "out.csv"
    src.write_text("label,a1,a2,a3,a4,a6\n")
    code, out = run_cli(capsys, "batch", str(src), str(dst))
    assert code == 0 and out.strip() == "pass=0 fail=0 error=0"


def test_batch_isolates_errors(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SUBLEADING_THREADS", "2")
    src, dst = tmp_path / "in.csv", tmp_path / "out.csv"
    src.write_text("label,a1,a2,a3,a4,a6\n11a1,0,-1,1,-10,-20\nbad,0,0,0,0,0\n37a1,0,0,1,-1,0\n")
    code, out = run_cli(capsys, "batch", str(src), str(dst))
    assert code == 1 and out.strip() == "pass=2 fail=0 error=1"
    with open(dst) as fh:
        rows = list(csv.DictReader(fh))
    assert [r["status"] for r in rows] == ["pass", "error", "pass"]
    assert rows[1]["error"] == "singular-curve"


@pytest.mark.parametrize("N,threshold_side", [(11, 1), (126, -1), (1, 1)])
def test_ratio(capsys, N, threshold_side):
    code, out = run_cli(capsys, "ratio", "--conductor", str(N))
    data = json.loads(out)
    assert code == 0 and data["sign_threshold"] == 126
    assert (data["rho"] > 0) == (threshold_side > 0)


def test_ratio_values(capsys):
    _, out = run_cli(capsys, "ratio", "--conductor", "11")
    assert abs(json.loads(out)["rho"] - 1.216145095) < 1e-9
    _, out = run_cli(capsys, "ratio", "--conductor", "1")
    assert abs(json.loads(out)["rho"] - 2.415092731) < 1e-9


def test_ratio_rejects_bad_disc(capsys):
    code, out = run_cli(capsys, "ratio", "--conductor", "11", "--disc", "5")
    assert code == 1 and "error" in json.loads(out)


def test_bad_sign_argument():
    with pytest.raises(SystemExit):
        main(["analyze", "--curve", "0,0,1,-1,0", "--sign", "2"])


def test_selftest_and_canaries(capsys):
    code, out = run_cli(capsys, "selftest")
    assert code == 0 and out.strip().endswith("12/12 suites passed")
    code, out = run_cli(capsys, "selftest", "--canary-gamma-shift", "1e-6")
    assert code == 2 and "FAIL  theorem-residual" in out
    code, out = run_cli(capsys, "selftest", "--canary-wrong-sign")
    assert code == 2 and "FAIL  t0-invariance" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "subleading", "ratio", "--conductor", "37"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["conductor"] == 37
