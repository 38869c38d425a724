import pytest

from limp.parser import parse_type
from limp.syntax import (
    BOOL,
    INT,
    TOP,
    And,
    Arrow,
    LitBool,
    LitInt,
    Merge,
    TArrow,
    TBool,
    TInt,
    TProd,
    TUnit,
    TypingContext,
    erase_type,
    pretty_print,
    target_type_size,
    type_eq,
    type_size,
)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (INT, INT, True),
        (And(INT, BOOL), And(BOOL, INT), False),
        (Arrow(INT, TOP), Arrow(INT, TOP), True),
    ],
)
def test_type_eq(a, b, expected):
    assert type_eq(a, b) is expected


@pytest.mark.parametrize(
    "text, size",
    [("Int", 1), ("Int -> Bool", 3), ("(Int & Bool) -> Top", 5)],
)
def test_type_size(text, size):
    assert type_size(parse_type(text)) == size


def test_erase_type():
    assert erase_type(And(INT, BOOL)) == TProd(TInt(), TBool())
    assert erase_type(TOP) == TUnit()
    assert erase_type(Arrow(INT, TOP)) == TArrow(TInt(), TUnit())


def test_pretty_print_examples():
    assert pretty_print(And(INT, Arrow(INT, BOOL))) == "Int & (Int -> Bool)"
    assert pretty_print(Arrow(Arrow(INT, INT), INT)) == "(Int -> Int) -> Int"
    assert pretty_print(Merge(LitInt(1), LitBool(True))) == "1 ,, true"


def test_round_trip_all_small_types(types7):
    for t in types7:
        assert parse_type(pretty_print(t)) == t


def test_erase_preserves_size(types5):
    for t in types5:
        assert target_type_size(erase_type(t)) == type_size(t)


def test_type_eq_is_an_equivalence(types3):
    for a in types3:
        assert type_eq(a, a)
        for b in types3:
            assert type_eq(a, b) == type_eq(b, a)
            if type_eq(a, b):
                for c in types3:
                    assert type_eq(b, c) <= type_eq(a, c)


def test_context_lookup_is_innermost():
    ctx = TypingContext().extend("x", INT).extend("y", TOP).extend("x", BOOL)
    assert ctx.lookup("x") == BOOL
    assert ctx.lookup("y") == TOP
    assert ctx.lookup("z") is None
