import json
import os
import shutil
import subprocess

import pytest

import stickel


def test_cubic_313():
    r = stickel.annihilate("cyclic-prime", 313, 7, 1, d=3)
    assert r["columns"] == [41, 41, 48]
    assert r["summary"]["nj"] == "2"
    assert r["pN"] == 49
    assert r["certification"] == [("A'_K", "theorem")]


def test_quadratic_flag_and_halving():
    r = stickel.annihilate("quadratic", 8, 2, 0)
    assert r["summary"]["A'"] == "1"
    assert "flag" in r["summary"]
    r = stickel.annihilate("quadratic", 1217, 2, 4)
    assert r["columns"] == [16, 48]


def test_quartic_233_not_certified():
    r = stickel.annihilate("cyclic-prime", 233, 2, 1, d=4)
    assert r["columns"] == [4, 0, 0, 4]
    assert ("A''_K", "not-certified") in r["certification"]


def test_bad_field_raises():
    with pytest.raises(ValueError):
        stickel.annihilate("cyclic-prime", 314, 7, 1, d=3)


def test_lambda_antisymmetry():
    fn, c = 313 * 49, 323
    for a in (1, 2, 100, 5000):
        assert stickel.lambda_coeff(a, c, fn) + stickel.lambda_coeff(fn - a, c, fn) == c - 1


def test_analytic_valuation():
    v = stickel.analytic_valuation("cyclic-prime", 313, 7, 4, d=3)
    assert v["product_valuation"] == 2
    assert v["total"] == 2


def test_crosscheck_quadratic():
    assert stickel.crosscheck("quadratic", 5, 3, 1, 7)["ok"]


def test_golden_tables():
    ids = stickel.golden_tables()
    assert "cubic-p7" in ids
    rows = stickel.run_golden("cubic-p13", [1033])
    assert rows and all(r["pass"] for r in rows)
    assert rows[0]["got"] == [311, 455, 919]


def _cli():
    path = os.environ.get("STICKEL_CLI") or shutil.which("stickel")
    if not path or not os.path.exists(path):
        pytest.skip("command-line tool not available")
    return path


def test_cli_json_and_exit_codes():
    cli = _cli()
    out = subprocess.run([cli, "annihilate", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7",
                          "--ex", "1", "--format", "json"], capture_output=True, text=True, check=True)
    rep = json.loads(out.stdout)
    assert rep["columns"] == [41, 41, 48]
    bad = subprocess.run([cli, "annihilate", "--family", "cyclic-prime", "--f", "314", "--d", "3", "--p", "7",
                          "--ex", "1"], capture_output=True, text=True)
    assert bad.returncode == 2


def test_cli_lp_lines():
    cli = _cli()
    out = subprocess.run([cli, "lp", "--family", "cyclic-prime", "--f", "313", "--d", "3", "--p", "7"],
                         capture_output=True, text=True, check=True)
    lines = [json.loads(x) for x in out.stdout.splitlines() if x.strip()]
    chars = [x for x in lines if "f_chi" in x]
    assert len(chars) == 2
    assert all(x["f_chi"] == 313 and x["d"] == 3 for x in chars)
    assert lines[-1]["product_valuation"] == 2


def test_cli_deterministic_across_threads():
    cli = _cli()
    base = [cli, "annihilate", "--family", "quadratic", "--f", "1201", "--p", "2", "--ex", "11"]
    a = subprocess.run(base + ["--threads", "1"], capture_output=True, text=True, check=True).stdout
    b = subprocess.run(base + ["--threads", "4"], capture_output=True, text=True, check=True).stdout
    assert a == b
    assert "7752\t3656" in a
