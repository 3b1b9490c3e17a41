import json
import math
import os
import subprocess

import pytest

CLI = os.environ["WIGNER_CLI"]


def run(args, **kw):
    return subprocess.run([CLI] + args, capture_output=True, text=True, **kw)


def read_table(path):
    meta, header, rows = {}, None, []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                k, _, v = line[1:].strip().partition("=")
                meta[k] = v
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(c) for c in line.split(",")])
    return meta, header, rows


def test_unknown_subcommand_is_a_usage_error():
    assert run(["frobnicate"]).returncode == 64


def test_bad_flag_is_a_usage_error():
    assert run(["fredholm", "--no-such-flag"]).returncode == 64


def test_validate_law_gaussian_passes():
    r = run(["validate-law", "--law", "gaussian", "--variance", "0.5"])
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["pass"] is True
    assert abs(doc["measured_variance"] - 0.5) < 1e-8
    assert len(doc["config_hash"]) == 16


def test_validate_law_unknown_law_is_an_input_error():
    assert run(["validate-law", "--law", "cauchy"]).returncode == 1


def test_fredholm_table(tmp_path):
    out = tmp_path / "fred.csv"
    r = run(["fredholm", "--out", str(out)])
    assert r.returncode == 0
    meta, header, rows = read_table(out)
    assert header == ["alpha", "det", "p", "int_p"]
    assert len(rows) == 81  # 0 to 4 in steps of 0.05
    assert rows[0][0] == 0.0 and rows[0][1] == 1.0
    dets = [row[1] for row in rows]
    assert all(a >= b for a, b in zip(dets, dets[1:]))
    assert all(row[2] >= 0.0 for row in rows)
    assert rows[-1][3] <= 1.0 + 1e-6
    manifest = json.loads((tmp_path / "fred.csv.manifest.json").read_text())
    assert manifest["status"] == "done"
    assert manifest["config_hash"] == meta["config_hash"]
    assert manifest["wall_seconds"] >= 0.0


def test_sample_spectrum_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sample-spectrum", "--N", "40", "--samples", "2", "--seed", "11"]
    assert run(args + ["--out", str(a)]).returncode == 0
    assert run(args + ["--out", str(b), "--workers", "2"]).returncode == 0
    assert a.read_bytes() == b.read_bytes()
    _, header, rows = read_table(a)
    assert header == ["sample", "index", "eigenvalue"]
    assert len(rows) == 80


def test_reverse_reports_the_expected_slope(tmp_path):
    out = tmp_path / "rev.csv"
    r = run(["reverse", "--order", "3", "--out", str(out)])
    assert r.returncode == 0
    meta, _, rows = read_table(out)
    assert abs(float(meta["loglog_slope"]) - 6.0) < 0.2
    assert len(rows) == 9


def test_gaps_small_run(tmp_path):
    out = tmp_path / "gaps.csv"
    r = run(["gaps", "--N", "60", "--samples", "8", "--s", "1", "2",
             "--out", str(out)])
    assert r.returncode == 0
    _, header, rows = read_table(out)
    assert header == ["s", "lambda", "stderr", "samples"]
    assert [row[0] for row in rows] == [1.0, 2.0]
    assert rows[0][1] <= rows[1][1]  # gap count grows with s
    assert all(row[3] == 8 for row in rows)


def test_compare_pass_and_fail(tmp_path):
    x = tmp_path / "x.csv"
    y = tmp_path / "y.csv"
    x.write_text("# note=a\nalpha,v\n0,1\n1,2\n")
    y.write_text("alpha,v\n0,1.01\n1,2.01\n")
    ok = run(["compare", "--table", str(x), "--reference", str(y),
              "--tolerance", "0.05"])
    assert ok.returncode == 0
    assert json.loads(ok.stdout)["pass"] is True
    bad = run(["compare", "--table", str(x), "--reference", str(y),
               "--tolerance", "0.001"])
    assert bad.returncode == 1
    assert json.loads(bad.stdout)["pass"] is False
    z = tmp_path / "z.csv"
    z.write_text("alpha,v\n0.5,1\n1,2\n")
    mismatch = run(["compare", "--table", str(x), "--reference", str(z)])
    assert mismatch.returncode == 1


def test_sc_check_small_run(tmp_path):
    out = tmp_path / "sc.csv"
    r = run(["sc-check", "--N", "300", "--samples", "2", "--tol", "0.4",
             "--eta", "0.2", "--out", str(out)])
    assert r.returncode == 0
    _, header, rows = read_table(out)
    assert header == ["sample", "worst_deviation", "max_abs_eigenvalue", "pass"]
    assert len(rows) == 2
    assert all(row[3] == 1.0 for row in rows)


def test_flow_moments_table(tmp_path):
    out = tmp_path / "flow.csv"
    r = run(["flow", "--N", "80", "--t", "0.5", "--out", str(out)])
    assert r.returncode == 0
    with open(out) as f:
        body = [l for l in f if not l.startswith("#")]
    names = [l.split(",")[0] for l in body[1:]]
    assert names == ["offdiag_mean", "offdiag_var", "diag_mean", "diag_var"]


def test_kernel_sweep_small(tmp_path):
    out = tmp_path / "kernel.csv"
    r = run(["kernel", "--N", "120", "--tau-sweep", "0.5:1:0.5",
             "--out", str(out)])
    assert r.returncode == 0, r.stderr
    _, header, rows = read_table(out)
    assert header == ["tau", "kernel", "saddle_approx", "sinc", "abs_error"]
    assert len(rows) == 2
    for row in rows:
        assert abs(row[3] - math.sin(math.pi * row[0]) / (math.pi * row[0])) < 1e-12
        assert row[4] < 0.2


def test_paircorr_small(tmp_path):
    out = tmp_path / "pc.csv"
    r = run(["paircorr", "--N", "200", "--samples", "10", "--bins", "6",
             "--half-width", "0.1", "--out", str(out)])
    assert r.returncode == 0
    _, header, rows = read_table(out)
    assert header == ["tau_lo", "tau_hi", "density", "stderr", "counts"]
    assert len(rows) == 6
    assert all(row[2] >= 0.0 for row in rows)
