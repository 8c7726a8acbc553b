from __future__ import annotations

import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from conftest import GOLDEN
from hermite_pade import wild
from hermite_pade.cli import parse_and_run
from hermite_pade.poly import parse_poly, parse_ratpoly


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = parse_and_run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_twin_csv_matches_table1():
    code, text, _ = run(["twin", "--l", "1,3", "--format", "csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    golden = json.loads((GOLDEN / "table1.json").read_text())["rows"]
    assert len(rows) == 1 + len(golden)
    for row, g in zip(rows[1:], golden):
        assert parse_poly(row[1], 2) == parse_poly(g["b_i"], 2)
        assert parse_poly(row[2], 2) == parse_poly(g["twin"], 2)


def test_gcd_minors_json_example():
    code, text, _ = run(["gcd-minors", "--l", "1,1", "--nu", "1,1", "--convention", "falling"])
    assert code == 0
    d = json.loads(text)
    assert d["schema"] == 1
    assert parse_poly(d["gcd"], 2) == parse_poly("3*(a1-a2)", 2)
    assert [parse_poly(q, 2) for q in d["quotients"]] == [parse_poly(q, 2) for q in ["6", "2*(a1+a2)", "a1*a2"]]


def test_siegel_json_example():
    code, text, _ = run(["siegel", "--a", "1,2", "--l", "1,2", "--nu", "1,1"])
    assert code == 0
    d = json.loads(text)
    assert d["fg_bound"] == "54" and d["schema"] == 1


def test_tame_text_example():
    code, text, _ = run(["tame", "--l0", "1", "--l", "1", "--a", "1", "--format", "text"])
    assert code == 0
    assert "b_0 = -2" in text and "order 3" in text


@pytest.mark.parametrize("which", [1, 2, 3])
def test_tables_check(which):
    code, text, err = run(["tables", "--which", str(which), "--check", str(GOLDEN / f"table{which}.json")])
    if which == 2:
        # the printed table carries one erroneous quotient, see test_table2_erratum
        assert code == 2 and err.strip() == "mismatch: table 2 row 5 quotient 2"
    else:
        assert code == 0 and err == ""
    assert json.loads(text)["schema"] == 1


def test_table2_erratum():
    """The printed V[2]/GCD for l = (1, 4) lacks the term -28*a1^2*a2^2."""
    golden = json.loads((GOLDEN / "table2.json").read_text())["rows"][4]
    printed = parse_poly(golden["quotients"][2], 2)
    code, text, _ = run(["gcd-minors", "--l", "1,4"])
    computed = parse_poly(json.loads(text)["quotients"][2], 2)
    # the missing term sits inside a factor -14*a2
    assert computed - printed == parse_poly("-14*a2", 2) * parse_poly("28*a1^2*a2^2", 2)
    # the corrected quotient makes the Cramer vector a kernel vector of V
    V = wild.build_V(wild.WildProblem((1, 4)))
    quotients = [parse_poly(q, 2) for q in json.loads(text)["quotients"]]
    for r in range(V.rows):
        total = parse_poly("0", 2)
        for h in range(V.cols):
            total = total + V[r, h] * quotients[h] * (-1) ** h
        assert not total.terms


def test_table3_row3_quotients_marked_derived():
    code, text, _ = run(["tables", "--which", "3"])
    rows = json.loads(text)["rows"]
    assert rows[2]["quotients_status"] == "derived"
    frozen = json.loads((GOLDEN / "table3_row3_quotients.json").read_text())["quotients"]
    assert [parse_poly(q, 3) for q in rows[2]["quotients"]] == [parse_poly(q, 3) for q in frozen]


def test_tables_check_reports_mismatch(tmp_path):
    bad = json.loads((GOLDEN / "table1.json").read_text())
    bad["rows"][0]["b_i"] = "25"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(["tables", "--which", "1", "--check", str(path)])
    assert code == 2 and "row 0" in err


@pytest.mark.parametrize("argv", [
    ["twin", "--l", "1,3"],
    ["gcd-minors", "--l", "2,2", "--format", "csv"],
    ["siegel", "--a", "1,-1", "--l", "2,2", "--nu", "1,1", "--format", "text"],
    ["certify", "--what", "claimed-factor", "--trials", "3", "--seed", "5"],
    ["tables", "--which", "2", "--format", "csv"],
])
def test_output_is_byte_identical(argv):
    first = run(argv)
    second = run(argv)
    assert first == second and first[0] == 0


def _poly_strings(obj):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if k in ("convention", "schema", "quotients_status", "fg_bound", "bv_bound",
                     "fg_bound_exact", "bv_bound_exact", "f", "g", "order", "what"):
                continue
            yield from _poly_strings(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _poly_strings(v)
    elif isinstance(obj, str):
        yield obj


@pytest.mark.parametrize("argv,m", [
    (["twin", "--l", "1,3"], 2),
    (["gcd-minors", "--l", "1,1,2"], 3),
    (["tame", "--l0", "1", "--l", "1,2"], 2),
    (["tables", "--which", "2"], 2),
])
def test_emitted_polynomials_round_trip(argv, m):
    code, text, _ = run(argv)
    assert code == 0
    strings = list(_poly_strings(json.loads(text)))
    assert strings
    for s in strings:
        r = parse_ratpoly(s, m)
        assert parse_ratpoly(r.to_str(), m) == r


@pytest.mark.parametrize("argv", [
    [],
    ["twin"],
    ["twin", "--l", "x"],
    ["twin", "--l", "1,1", "--nu", "3"],
    ["siegel", "--a", "1", "--l", "1,2", "--nu", "1,1"],
    ["tables", "--which", "4"],
])
def test_usage_errors_exit_1(argv):
    code, _, err = run(argv)
    assert code == 1 and err


@pytest.mark.parametrize("argv", [
    ["twin", "--l", "0,1"],
    ["siegel", "--a", "1,2", "--l", "1,1", "--nu", "1,1"],
    ["siegel", "--a", "2,2", "--l", "1,2", "--nu", "1,1"],
])
def test_precondition_errors_exit_1(argv):
    code, _, err = run(argv)
    assert code == 1 and err.startswith("error")


def test_falsified_certificate_exits_2(monkeypatch):
    real = wild.claimed_factor
    monkeypatch.setattr(wild, "claimed_factor", lambda nu: real(nu) * real(nu) * parse_poly("a1 + 7", len(nu)))
    code, _, err = run(["certify", "--what", "claimed-factor", "--trials", "2"])
    assert code == 2 and "falsified" in err


def test_certify_all_passes():
    code, text, _ = run(["certify", "--what", "all", "--trials", "2", "--format", "json"])
    assert code == 0
    assert json.loads(text)["schema"] == 1


@pytest.mark.skipif(shutil.which("hermite-pade") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["hermite-pade", "gcd-minors", "--l", "1,1", "--convention", "falling"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["gcd"] == "3*a1 - 3*a2"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hermite_pade", "twin", "--l", "1,1", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout
