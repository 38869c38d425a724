"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py``; the lines are printed in the
"acceptance criteria" section at the end of the session.
"""

import itertools
import time

import conftest
from conftest import CORPUS
from limp.checker import TypeCheckError, elaborate
from limp.harness import (
    coherence_scan,
    compare_subtyping,
    generate_programs,
    generate_target_terms,
    random_pairs,
    run_corpus,
    run_source,
    termination_from,
    termination_scan,
    to_json,
)
from limp.oracle import SearchBudget, enumerate_types
from limp.subtyping import is_subtype
from limp.syntax import And, Arrow, erase_type, pretty_print
from limp.target import eval_term, show_value, target_typecheck, value_has_type

TIME_LIMIT = 600.0  # seconds, criterion 1
COMPARE_SIZE = 5
RANDOM_PAIRS, RANDOM_SIZE = 10_000, 12
TRIPLE_SIZE = 4
MP_SIZE = 4
COHERENCE_SIZE = 4
GENERATED = 1000

RESOLUTION = r"(1 ,, ((\x . true) : Int -> Bool)) : Bool"
ENVIRONMENT = (
    r"((\f . f (2 ,, ((\x . x) : Int -> Int))) : ((Int & (Int -> Int)) -> Int) -> Int) "
    r"((\env . env : Int) : (Int & (Int -> Int)) -> Int)"
)


def record(key, passed, detail):
    conftest.ACCEPTANCE_LINES[key] = f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}"
    return passed


# Each criterion returns (passed, detail, report); the report is what
# criterion 9 compares across runs.


def criterion_1(derivations=None):
    budget = SearchBudget(fuel=8, universe_size=4, max_coercions=8)
    start = time.perf_counter()
    report = compare_subtyping(COMPARE_SIZE, budget, escalations=2, derivations=derivations)
    elapsed = time.perf_counter() - start
    ok = report.disagreements == 0 and elapsed < TIME_LIMIT
    return ok, f"{report.summary()} elapsed={elapsed:.1f}s limit={TIME_LIMIT:.0f}s", report.to_dict()


def criterion_2(derivations):
    from_compare = termination_from(derivations)
    from_random = termination_scan(random_pairs(RANDOM_PAIRS, RANDOM_SIZE, seed=2024))
    ok = from_compare.passed and from_random.passed
    detail = f"compare traces: {from_compare.summary()}; random: {from_random.summary()}"
    return ok, detail, {"compare": from_compare.to_dict(), "random": from_random.to_dict()}


def criterion_3():
    types = enumerate_types(TRIPLE_SIZE)
    sub = {(a, b): is_subtype(a, b) for a in types for b in types}
    violations = [
        (pretty_print(a), pretty_print(b), pretty_print(c))
        for a, b, c in itertools.product(types, repeat=3)
        if sub[a, b] and sub[b, c] and not sub[a, c]
    ]
    detail = f"triples={len(types) ** 3} violations={len(violations)}"
    return not violations, detail, {"violations": violations}


def criterion_4():
    types = enumerate_types(MP_SIZE)
    failures = [(pretty_print(a), pretty_print(b)) for a in types for b in types if not is_subtype(And(Arrow(a, b), a), b)]
    return not failures, f"pairs={len(types) ** 2} failures={len(failures)}", {"failures": failures}


def criterion_5():
    corpus = run_corpus(CORPUS)
    faults = []
    for i, e in enumerate(generate_programs(GENERATED, seed=5)):
        try:
            run_source_expr(e)
        except Exception as err:  # any fault here is a preservation failure
            faults.append(f"program {i}: {type(err).__name__}: {err}")
    for i, (t, ty) in enumerate(generate_target_terms(GENERATED, seed=5)):
        try:
            if target_typecheck({}, t) != ty or not value_has_type(eval_term(t), ty):
                faults.append(f"target term {i}: shape mismatch")
        except Exception as err:
            faults.append(f"target term {i}: {type(err).__name__}: {err}")
    ok = corpus.passed and not faults
    detail = f"corpus {corpus.summary()}; generated programs={GENERATED} target terms={GENERATED} faults={len(faults)}"
    return ok, detail, {"corpus": corpus.to_dict(), "faults": faults}


def run_source_expr(e):
    ty, term = elaborate(e)
    got = target_typecheck({}, term)
    if got != erase_type(ty):
        raise AssertionError(f"{pretty_print(got)} != {pretty_print(erase_type(ty))}")
    if not value_has_type(eval_term(term), got):
        raise AssertionError("value shape")
    return ty, term


def criterion_6():
    report = coherence_scan(COHERENCE_SIZE, SearchBudget(fuel=8, universe_size=4, max_coercions=8))
    return report.passed, report.summary(), report.to_dict()


def criterion_7():
    outcome = run_source(RESOLUTION)
    resolution = (pretty_print(outcome.type), show_value(outcome.value))
    first = resolution == ("Bool", "true")
    try:
        env = run_source(ENVIRONMENT)
        environment = show_value(env.value)
    except TypeCheckError as err:
        environment = f"{type(err).__name__}: {err}"
    second = environment == "2"
    detail = f"resolution -> {resolution[1]} : {resolution[0]}; environment -> {environment}"
    return first and second, detail, {"resolution": list(resolution), "environment": environment}


def criterion_8():
    # The worked example's input pair and rule sequence could not be
    # transcribed (the source text is not available), so there is nothing to
    # compare against. Reported as a failure rather than skipped.
    detail = "worked-example trace unavailable; no transcribed rule sequence to reproduce"
    return False, detail, {"available": False}


_FIRST = {}


def first_run(key, fn, *args):
    if key not in _FIRST:
        _FIRST[key] = fn(*args)
    return _FIRST[key]


DERIVATIONS = []


def test_criterion_1_differential_agreement():
    ok, detail, _ = first_run("1", criterion_1, DERIVATIONS)
    assert record("1", ok, detail), detail


def test_criterion_2_termination_measure():
    if not DERIVATIONS:
        first_run("1", criterion_1, DERIVATIONS)
    ok, detail, _ = first_run("2", criterion_2, DERIVATIONS)
    assert record("2", ok, detail), detail


def test_criterion_3_transitivity():
    ok, detail, _ = first_run("3", criterion_3)
    assert record("3", ok, detail), detail


def test_criterion_4_modus_ponens():
    ok, detail, _ = first_run("4", criterion_4)
    assert record("4", ok, detail), detail


def test_criterion_5_preservation():
    ok, detail, _ = first_run("5", criterion_5)
    assert record("5", ok, detail), detail


def test_criterion_6_coherence():
    ok, detail, _ = first_run("6", criterion_6)
    assert record("6", ok, detail), detail


def test_criterion_7a_resolution():
    outcome = run_source(RESOLUTION)
    ok = pretty_print(outcome.type) == "Bool" and show_value(outcome.value) == "true"
    assert record("7a", ok, f"{RESOLUTION} -> {show_value(outcome.value)} : {pretty_print(outcome.type)}")


def test_criterion_7b_first_class_environment():
    try:
        detail = show_value(run_source(ENVIRONMENT).value)
    except TypeCheckError as err:
        detail = f"{type(err).__name__}: {err}"
    ok = detail == "2"
    assert record("7b", ok, f"environment program -> {detail} (expected 2)"), detail


def test_criterion_8_golden_trace():
    ok, detail, _ = first_run("8", criterion_8)
    assert record("8", ok, detail), detail


def test_criterion_9_determinism():
    if not DERIVATIONS:
        first_run("1", criterion_1, DERIVATIONS)
    first = {key: first_run(key, fn) for key, fn in SIMPLE.items()}
    first["1"] = _FIRST["1"]
    first["2"] = first_run("2", criterion_2, DERIVATIONS)

    rerun_derivations = []
    second = {"1": criterion_1(rerun_derivations)}
    second["2"] = criterion_2(rerun_derivations)
    second.update({key: fn() for key, fn in SIMPLE.items()})
    differing = sorted(k for k in first if to_json(first[k][2]) != to_json(second[k][2]))
    ok = not differing
    assert record("9", ok, f"criteria 1-8 rerun; differing reports: {differing or 'none'}"), differing


SIMPLE = {"3": criterion_3, "4": criterion_4, "5": criterion_5, "6": criterion_6, "7": criterion_7, "8": criterion_8}
