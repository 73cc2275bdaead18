from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

from grasstc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zcl_json(capsys):
    code, out, _ = run(capsys, "zcl", "-k", "2", "-n", "4", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d == {"k": 2, "n": 4, "mode": "basic", "zcl": 4, "witness": {"m": [3, 1]}, "tc_lower": 5}


def test_zcl_exact_has_a_side_monomial(capsys):
    code, out, _ = run(capsys, "zcl", "-k", "2", "-n", "5", "--exact", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["mode"] == "exact" and d["witness"]["y"] == ["1", "1"]


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "-k", "2", "-n", "13", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["tc"]["upper"] == 43
    # the engine's lower bound sits inside the closed-form sandwich [23, 43]
    assert 23 <= d["tc"]["lower"] <= d["tc"]["upper"]
    assert d["closed_form"]["zcl"] == 22
    code, out, _ = run(capsys, "bounds", "-k", "2", "-n", "4")
    assert "TC  in [5, 7]" in out


def test_ring_height_cuplength(capsys):
    code, out, _ = run(capsys, "ring", "-k", "2", "-n", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [int(r["basis_size"]) for r in rows] == [1, 1, 2, 1, 1]
    code, out, _ = run(capsys, "height", "-k", "2", "-n", "6", "--class", "w1", "--format", "json")
    assert json.loads(out)["height"] == 6
    code, out, _ = run(capsys, "cuplength", "-k", "2", "-n", "6", "--format", "json")
    d = json.loads(out)
    assert (d["cup_length"], d["witness_text"]) == (7, "w1^6*w2")


def test_cells(capsys):
    code, out, _ = run(capsys, "cells", "-k", "2", "-n", "4", "--format", "json")
    assert json.loads(out)["counts"] == [1, 1, 2, 1, 1]
    code, out, _ = run(capsys, "cells", "-k", "2", "-n", "4", "--dimension", "2")
    assert out.splitlines() == ["2 cells of dimension 2", "(0,2)", "(1,1)"]


def test_nonzero_with_certificate(capsys):
    code, out, _ = run(capsys, "nonzero", "-k", "2", "-n", "6", "--class", "w1^4*w2", "--certificate",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["nonzero"] and d["certificate"]["nonzero"]
    assert d["certificate"]["multiplier"] and d["certificate"]["permutation"]
    code, out, _ = run(capsys, "nonzero", "-k", "2", "-n", "6", "--class", "w1^4*w2^2", "--format", "json")
    assert json.loads(out)["nonzero"] is False


def test_monotonicity(capsys):
    code, out, _ = run(capsys, "monotonicity", "-k", "2", "-m", "7", "-n", "9")
    assert code == 0
    assert "TC  [closed-form] lower 16 vs threshold 16: criterion not met (inconclusive)" in out


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--k-range", "2:3", "--n-range", "4:7", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [(r["k"], r["n"]) for r in rows] == [("2", "4"), ("2", "5"), ("2", "6"), ("2", "7"), ("3", "6"),
                                                 ("3", "7")]
    assert rows[0]["tc_lower"] == "5" and rows[0]["tc_upper"] == "7"


def test_table_with_workers_matches_serial(capsys):
    _, serial, _ = run(capsys, "table", "--k-range", "2", "--n-range", "4:8", "--format", "csv")
    _, pooled, _ = run(capsys, "table", "--k-range", "2", "--n-range", "4:8", "--format", "csv", "--jobs", "2")
    assert serial == pooled


def test_verify_reports_the_closed_form_conflicts(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "paper", "--max-k", "2", "--max-n", "6", "--format", "json")
    d = json.loads(out)
    assert code == 3
    failed = {r["claim"] for r in d["records"] if r["status"] == "fail"}
    assert failed == {"zcl-g2/k2n5/zcl-basic", "zcl-g2/k2n5/zcl-exact", "zcl-g2/k2n6/zcl-basic",
                      "zcl-g2/k2n6/zcl-exact"}
    rec = next(r for r in d["records"] if r["claim"] == "zcl-g2/k2n5/zcl-basic")
    assert (rec["expected"], rec["computed"], rec["provenance"]) == (7, 8, "stated")


def test_usage_errors(capsys):
    assert run(capsys, "zcl", "-k", "2")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "--help")[0] == 0
    code, _, err = run(capsys, "ring", "-k", "4", "-n", "6")
    assert code == 1 and "--complement" in err
    assert run(capsys, "height", "-k", "2", "-n", "6", "--class", "w1 + w2")[0] == 1
    assert run(capsys, "height", "-k", "2", "-n", "6", "--class", "w9")[0] == 1
    assert run(capsys, "table", "--k-range", "5", "--n-range", "4:6")[0] == 1


def test_complement_note(capsys):
    code, out, _ = run(capsys, "ring", "-k", "4", "-n", "6", "--complement")
    assert code == 0 and "complement" in out


def test_infeasible_exit_code(capsys):
    code, _, err = run(capsys, "ring", "-k", "3", "-n", "12", "--max-degree-cap", "1000")
    assert code == 2 and "infeasible" in err


def test_output_is_deterministic(capsys):
    argv = ["bounds", "-k", "3", "-n", "9", "--format", "json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
    _, stamped, _ = run(capsys, *argv, "--timestamp")
    assert "timestamp" in json.loads(stamped)
    _, plain, _ = run(capsys, *argv, "--no-timestamp")
    assert "timestamp" not in json.loads(plain)


def test_cache_dir_flag(capsys, tmp_path):
    argv = ["ring", "-k", "2", "-n", "7", "--cache-dir", str(tmp_path)]
    first = run(capsys, *argv)[1]
    assert (tmp_path / "G2_7.v1.nf").exists()
    assert run(capsys, *argv)[1] == first


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "grasstc.cli", "zcl", "-k", "2", "-n", "4", "--format", "json"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["tc_lower"] == 5
    out = subprocess.run([sys.executable, "-m", "grasstc.cli", "zcl", "-k", "x", "-n", "4"],
                         capture_output=True, text=True)
    assert out.returncode == 1
