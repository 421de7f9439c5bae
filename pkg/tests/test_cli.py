import json
import subprocess
import sys

import pytest

from apnext.cli import EXIT_FAIL, EXIT_USAGE, main
from apnext.tableio import read_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["command"] == argv[0]
    return code, doc, err


def test_analyze_gold(capsys):
    code, doc, _ = run_json(capsys, "analyze", "--n", "5", "--family", "gold", "--t", "1")
    assert code == 0 and doc["status"] == "ok"
    assert doc["payload"]["is_apn"] and doc["payload"]["linearity"] == 8


def test_extend_search_witness(capsys):
    code, doc, err = run_json(capsys, "extend-search", "--n", "5", "--family", "gold", "--t", "1")
    assert code == 0
    w = doc["payload"]["witness"]
    assert len(w["L"]) == 5 and w["a"] == "1"
    assert "values of a tried" in err


def test_expect_none_guards(capsys):
    code, doc, _ = run_json(capsys, "extend-search", "--n", "7", "--family", "gold", "--t", "3", "--expect", "none")
    assert code == 0 and doc["payload"]["expectation_met"] and not doc["payload"]["extendable"]
    code, doc, _ = run_json(capsys, "extend-search", "--n", "5", "--family", "gold", "--t", "1", "--expect", "none")
    assert code == EXIT_FAIL and not doc["payload"]["expectation_met"]
    code, _, _ = run_json(capsys, "extend-search", "--n", "6", "--family", "gold", "--t", "1", "--expect", "witness")
    assert code == EXIT_FAIL


def test_extend_search_all_a_and_jobs(capsys):
    code, doc, _ = run_json(capsys, "extend-search", "--n", "5", "--family", "switched_cube", "--mu", "2:6",
                            "--all-a", "--jobs", "2", "--frobenius-pruning")
    assert code == 0 and len(doc["payload"]["feasible_a"]) == 31


def test_ortho_and_build_round_trip(capsys, tmp_path):
    src = tmp_path / "f.txt"
    pi_path = tmp_path / "pi.txt"
    code, doc, _ = run_json(capsys, "extend-build", "--n", "4", "--family", "monomial", "--d", "3",
                            "--L", "0,0,0,0", "--a", "1", "--out", str(src))
    assert code == 0 and read_table(src).n_in == 5
    from apnext.field import field_new
    from apnext.tableio import write_table
    from apnext.vecfun import from_monomial
    write_table(src, from_monomial(field_new(5), 3))
    code, doc, _ = run_json(capsys, "ortho", "--in", str(src), "--out", str(pi_path))
    assert code == 0
    pi = read_table(pi_path)
    ctx = field_new(5)
    assert pi.table.tolist() == ctx.pow_vec(ctx.elements(), 28).tolist()
    code, doc, _ = run_json(capsys, "extend-build", "--in", str(src), "--L", "1,0,0,0,1", "--a", "1")
    assert "table" in doc["payload"] and doc["payload"]["table"].startswith("n=6 m=6")


def test_verify_lemmas(capsys):
    code, doc, _ = run_json(capsys, "verify-lemmas", "--n-max", "16")
    assert code == 0 and doc["payload"]["passed"] and len(doc["payload"]["lemmas"]) == 6


def test_verify_relations_deterministic(capsys):
    args = ("verify-relations", "--n", "9", "--trials", "5", "--seed", "4")
    _, a, _ = run_json(capsys, *args)
    _, b, _ = run_json(capsys, *args)
    assert a["payload"] == b["payload"] and a["payload"]["passed"]
    code, c, _ = run_json(capsys, *args, "--jobs", "2")
    assert code == 0 and c["payload"] == a["payload"]


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "--n", "1", "--family", "gold", "--t", "1"],
    ["analyze", "--n", "6", "--family", "gold", "--t", "2"],
    ["analyze", "--n", "6", "--modulus", "7f", "--family", "gold", "--t", "1"],
    ["analyze", "--n", "6", "--modulus", "zz", "--family", "gold", "--t", "1"],
    ["analyze", "--in", "/nonexistent/table.txt"],
    ["extend-build", "--n", "5", "--family", "gold", "--t", "1", "--L", "1,0", "--a", "1"],
    ["extend-build", "--n", "5", "--family", "gold", "--t", "1", "--L", "1,0,0,0,0", "--a", "0"],
    ["extend-search", "--n", "5", "--family", "gold", "--t", "1", "--jobs", "0"],
    ["verify-lemmas", "--n-max", "1"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE
    out, err = capsys.readouterr()
    assert out == "" and err


def test_runtime_error_reports_status(capsys):
    code, doc, err = run_json(capsys, "ortho", "--n", "5", "--family", "monomial", "--d", "7")
    assert code == EXIT_FAIL and doc["status"] == "error" and doc["payload"]["type"] == "NotQuadraticError"


def test_reproduce_quick_json(capsys):
    code, doc, err = run_json(capsys, "reproduce", "--quick", "--json")
    assert code == 0 and doc["payload"]["passed"] and len(doc["payload"]["rows"]) == 10
    assert "reproduce:" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "apnext", "analyze", "--n", "3", "--family", "gold", "--t", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["payload"]["linearity"] == 4
