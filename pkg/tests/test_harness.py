import json

import pytest

from limp.harness import (
    check_trace,
    coherence_scan,
    compare_subtyping,
    distinct_value,
    random_pairs,
    run_corpus,
    termination_scan,
    to_json,
    well_formed,
)
from limp.oracle import SearchBudget, enumerate_types
from limp.parser import parse_type
from limp.subtyping import alg_subtype_trace
from limp.syntax import INT
from limp.target import VBool, VClosure, VInt, VPair, VUnit, canonical_value

from conftest import CORPUS


def T(text):
    return parse_type(text)


def test_canonical_values():
    assert canonical_value(INT) == VInt(1)
    assert canonical_value(T("Bool & Top")) == VPair(VBool(True), VUnit())
    assert isinstance(canonical_value(T("Int -> Bool")), VClosure)


def test_distinct_values():
    assert distinct_value(T("Int & Int")) == VPair(VInt(1), VInt(2))


def test_well_formed():
    assert well_formed(T("Int & Bool"))
    assert not well_formed(T("Int & Int"))
    assert not well_formed(T("Bool -> (Int & (Bool -> Int))"))


def test_compare_size_one():
    report = compare_subtyping(1)
    assert report.total_pairs == 9
    # Int, Bool and Top are each below themselves and Top
    assert report.both_yes == 5
    assert report.both_no == 4
    assert report.passed and report.disagreement_list == []


def test_compare_size_three():
    report = compare_subtyping(3)
    assert report.total_pairs == len(enumerate_types(3)) ** 2
    assert report.disagreements == 0


def test_compare_rejects_size_zero():
    with pytest.raises(ValueError):
        compare_subtyping(0)


def test_termination_scan():
    report = termination_scan(random_pairs(500, 9, seed=1))
    assert report.runs == 500
    assert report.passed, report.violations[:3]


def test_check_trace_detects_increase():
    _, trace = alg_subtype_trace(T("Int & (Int -> Bool)"), T("Bool"))
    assert check_trace(trace) == []
    # swapping two steps puts a child above its parent's measure
    broken = [trace[1], trace[0]] + trace[2:]
    assert check_trace(broken)


def test_coherence_canonical_small():
    report = coherence_scan(3)
    assert report.passed
    assert report.pairs_with_multiple_coercions > 0
    assert "canonical probes" in report.summary()


def test_distinct_probes_flag_ill_formed_types():
    report = coherence_scan(1, probe="distinct", types=[T("Int & Int"), INT])
    assert not report.passed
    assert set(report.mismatches[0].values) == {"1", "2"}


def test_distinct_probes_on_well_formed_types():
    types = [t for t in enumerate_types(3) if well_formed(t)]
    assert coherence_scan(3, probe="distinct", types=types).passed


def test_corpus():
    report = run_corpus(CORPUS)
    assert report.passed, [r for r in report.results if r.status == "fail"]
    by_name = {r.path: r for r in report.results}
    assert by_name["resolution.lim"].value == "true"
    assert by_name["environment_overlapping.lim"].status == "expected-error"


def test_corpus_empty_dir(tmp_path):
    with pytest.raises(FileNotFoundError):
        run_corpus(tmp_path)


def test_corpus_reports_failures(tmp_path):
    (tmp_path / "bad.lim").write_text("-- result: 2\n1\n")
    report = run_corpus(tmp_path)
    assert report.failures == 1


def test_reports_serialise():
    doc = json.loads(to_json(compare_subtyping(1).to_dict()))
    assert doc["passed"] is True and doc["total_pairs"] == 9
