import pytest

from limp import oracle
from limp.disjoint import Disjoint, NotDisjoint, alg_disjoint
from limp.oracle import SearchBudget, spec_disjoint
from limp.parser import parse_type
from limp.syntax import TOP, And, pretty_print, toplike


def T(text):
    return parse_type(text)


@pytest.mark.parametrize(
    "a, b",
    [
        ("Int", "Bool"),
        ("Int", "Top"),
        ("Int -> Int", "Int -> Bool"),
        ("Int & Bool", "Int -> Top"),
        ("Int -> Bool", "Int"),
        ("(Int -> Int) & Bool", "Int -> Bool -> Top"),
    ],
)
def test_disjoint_examples(a, b):
    assert alg_disjoint(T(a), T(b)) == Disjoint()


@pytest.mark.parametrize(
    "a, b",
    [("Int", "Int"), ("Int", "Int & Bool"), ("Int -> Int", "Bool -> Int"), ("Int", "Int -> Int"), ("Bool -> Int -> Bool", "Bool")],
)
def test_overlap_examples(a, b):
    verdict = alg_disjoint(T(a), T(b))
    assert isinstance(verdict, NotDisjoint)
    assert not verdict
    assert "produce" in verdict.reason


def test_symmetric(types5):
    sample = types5[::5]
    for a in sample:
        for b in sample:
            assert bool(alg_disjoint(a, b)) == bool(alg_disjoint(b, a)), (pretty_print(a), pretty_print(b))


def test_agrees_with_output_overlap_search(types3):
    for a in types3:
        for b in types3:
            budget = SearchBudget()
            verdict = spec_disjoint(a, b, budget)
            while isinstance(verdict, oracle.Unknown):
                budget = budget.escalate()
                verdict = spec_disjoint(a, b, budget)
            assert bool(alg_disjoint(a, b)) == isinstance(verdict, oracle.Disjoint), (pretty_print(a), pretty_print(b))


def test_top_absorption(types3):
    for a in types3:
        for b in types3:
            assert bool(alg_disjoint(And(a, TOP), b)) == bool(alg_disjoint(a, b))


def test_toplike_is_disjoint_from_everything(types3):
    for a in filter(toplike, types3):
        for b in types3:
            assert alg_disjoint(a, b)
