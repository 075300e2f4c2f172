import json
import subprocess
import sys

import pytest

from walkqc import cli
from walkqc.walkops import program_from_text


def report(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_verify_gates(capsys):
    code, rep = report(capsys, "verify-gates", "--n", "3")
    assert code == cli.EXIT_OK
    assert rep["schema"] == cli.SCHEMA and rep["schema_version"] == cli.SCHEMA_VERSION
    assert rep["results"]["passed"] == rep["results"]["total"] == 18
    assert rep["discrepancy_records"]
    assert set(rep) >= {"results", "tolerances", "discrepancy_records", "timings", "ok"}


def test_verify_gates_alt(capsys):
    code, rep = report(capsys, "verify-gates", "--n", "4", "--backend", "alt")
    assert code == cli.EXIT_OK
    assert any(r["construction"].startswith("ALT_") for r in rep["discrepancy_records"])


def test_verify_gates_binary_fails_with_report(capsys):
    code, rep = report(capsys, "verify-gates", "--n", "3", "--convention", "binary")
    assert code == cli.EXIT_FAIL
    assert rep["ok"] is False
    assert rep["results"]["passed"] < rep["results"]["total"]


def test_grover(capsys):
    code, rep = report(capsys, "grover", "--target", "011", "--iterations", "2")
    assert code == cli.EXIT_OK
    assert abs(rep["results"]["target_probability"] - 0.945) < 0.001


def test_qft3_and_qpe(capsys):
    code, rep = report(capsys, "qft3", "--input", "5")
    assert code == cli.EXIT_OK and rep["results"]["matrix_matches_dft"]
    code, rep = report(capsys, "qpe", "--phi", "0.75")
    assert code == cli.EXIT_OK and rep["results"]["estimate"] == 0.75
    code, rep = report(capsys, "qpe", "--phi", "0.3333")
    assert code == cli.EXIT_OK and rep["results"]["estimate"] == 0.25


def test_qec(capsys):
    code, rep = report(capsys, "qec", "--code", "five-one", "--sweep")
    assert code == cli.EXIT_OK
    assert len(rep["results"]["fidelity_by_error"]) == 16
    assert len(rep["results"]["recovery_table"]) == 15


def test_cost(capsys):
    code, rep = report(capsys, "cost", "--artifact", "qft", "--model", "walk")
    assert code == cli.EXIT_OK
    assert rep["results"]["rows"][0]["time_steps"] == 9


def test_cost_table(capsys):
    assert cli.run(["cost", "--artifact", "grover", "--table"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "walk" in out and "72" in out


def test_dump_program_roundtrip(capsys):
    code, rep = report(capsys, "dump-program", "--program", "qft3")
    assert code == cli.EXIT_OK
    assert program_from_text(rep["results"]["text"]).name == "qft3"


def test_dump_gates_file(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("H 2\nCNOT 2 3\n")
    code, rep = report(capsys, "dump-program", "--gates", str(f), "--n", "3", "--what", "matrix")
    assert code == cli.EXIT_OK
    assert len(rep["results"]["matrix"]) == 64


def test_output_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert cli.run(["cost", "--artifact", "x", "--output", str(out)]) == cli.EXIT_OK
    capsys.readouterr()
    assert json.loads(out.read_text())["command"] == "cost"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["grover", "--target", "0112"],
    ["verify-gates"],
    ["verify-gates", "--n", "1"],
    ["qft3", "--input", "9"],
    ["cost", "--artifact", "swap", "--model", "walk"],
    ["dump-program", "--gates", "/nonexistent", "--n", "3"],
])
def test_usage_errors(capsys, argv):
    assert cli.run(argv) == cli.EXIT_USAGE
    capsys.readouterr()


def test_reports_are_deterministic(capsys):
    _, a = report(capsys, "grover", "--target", "101")
    _, b = report(capsys, "grover", "--target", "101")
    a.pop("timings"), b.pop("timings")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "walkqc", "cost", "--artifact", "qft", "--model", "walk"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["rows"][0]["time_steps"] == 9
