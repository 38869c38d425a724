import io
import json
import subprocess
import sys

import pytest

from limp.cli import EXIT_FAULT, EXIT_NO, EXIT_OK, EXIT_USAGE, main

from conftest import CORPUS


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_run_resolution():
    code, out, _ = run("run", str(CORPUS / "resolution.lim"))
    assert code == EXIT_OK
    assert out.strip() == "true : Bool"


def test_check_prints_type():
    code, out, _ = run("check", str(CORPUS / "chained.lim"))
    assert code == EXIT_OK and out.strip() == "Int & Bool"


def test_run_rejected_program():
    code, _, err = run("run", str(CORPUS / "environment_overlapping.lim"))
    assert code == EXIT_NO
    assert "not disjoint" in err


def test_sub_with_trace():
    code, out, _ = run("sub", "Int & (Int -> Bool)", "Bool", "--trace")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "subtype"
    assert lines[1] == r"coercion: \x0:(Int * (Int -> Bool)). snd x0 (fst x0)"
    assert sum(line.startswith("A-MP") for line in lines) == 1


def test_sub_negative():
    code, out, _ = run("sub", "Bool", "Int")
    assert code == EXIT_NO and out.strip() == "not a subtype"


def test_disjoint():
    assert run("disjoint", "Int", "Bool")[0] == EXIT_OK
    code, out, _ = run("disjoint", "Int", "Int -> Int")
    assert code == EXIT_NO and "produce Int" in out


def test_usage_errors():
    assert run()[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("sub", "Int ->", "Int")[0] == EXIT_USAGE
    assert run("compare", "--max-size", "0")[0] == EXIT_USAGE


def test_missing_file_is_a_fault():
    assert run("run", "/nonexistent/x.lim")[0] == EXIT_FAULT


def test_compare_json():
    code, out, _ = run("compare", "--max-size", "2", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["command"] == "compare" and doc["verdict"] == "pass"
    assert doc["report"]["disagreements"] == 0


def test_json_is_stable():
    first = run("coherence", "--max-size", "3", "--json")[1]
    second = run("coherence", "--max-size", "3", "--json")[1]
    assert first == second
    assert json.loads(first)["report"]["passed"] is True


def test_sub_json_trace():
    doc = json.loads(run("sub", "Int & Bool", "Int", "--json", "--trace")[1])
    assert doc["verdict"] == "subtype"
    assert [s["rule"] for s in doc["trace"]] == ["A-Lookup", "A-ProjL", "A-Base"]


def test_timing_only_when_asked():
    assert "timing_seconds" not in json.loads(run("sub", "Int", "Top", "--json")[1])
    assert "timing_seconds" in json.loads(run("sub", "Int", "Top", "--json", "--timing")[1])


def test_corpus_command():
    code, out, _ = run("corpus", str(CORPUS))
    assert code == EXIT_OK
    assert out.splitlines()[-1].endswith("failures=0")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "limp", "sub", "Int", "Top"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.startswith("subtype")


def test_color(monkeypatch):
    monkeypatch.setenv("LIMP_COLOR", "1")
    assert "\x1b[32m" in run("sub", "Int", "Top")[1]
