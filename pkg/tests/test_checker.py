import pytest

from limp.checker import (
    CannotInfer,
    MergeNotDisjoint,
    NotAFunction,
    NotASubtype,
    PragmaMismatch,
    UnboundVariable,
    check,
    elaborate,
    elaborate_program,
    infer,
)
from limp.harness import generate_programs, run_source
from limp.parser import parse_expr, parse_program, parse_type
from limp.syntax import BOOL, INT, TOP, Anno, TypingContext, erase_type, pretty_print
from limp.target import VBool, VInt, VPair, eval_term, observe, target_typecheck, value_has_type

EMPTY = TypingContext()


def E(text):
    return parse_expr(text)


@pytest.mark.parametrize(
    "src, ty",
    [
        ("1", "Int"),
        ("top", "Top"),
        ("1 ,, true", "Int & Bool"),
        (r"(\x . x) : Int -> Int", "Int -> Int"),
        (r"((\x . true) : Int -> Bool) 3", "Bool"),
        (r"(1 ,, ((\x . true) : Int -> Bool)) : Bool", "Bool"),
    ],
)
def test_infer_examples(src, ty):
    found, term = elaborate(E(src))
    assert found == parse_type(ty)
    assert target_typecheck({}, term) == erase_type(found)


def test_values():
    assert eval_term(elaborate(E("(1 ,, true) : Bool"))[1]) == VBool(True)
    assert eval_term(elaborate(E("(1 ,, true) : Bool & Int"))[1]) == VPair(VBool(True), VInt(1))
    assert eval_term(elaborate(E(r"(3 ,, ((\x . true) : Int -> Bool)) : Bool"))[1]) == VBool(True)


@pytest.mark.parametrize(
    "src, error",
    [
        ("x", UnboundVariable),
        (r"\x . x", CannotInfer),
        ("1 2", NotAFunction),
        (r"(\x . x) : Int", NotAFunction),
        ("true : Int", NotASubtype),
        ("1 ,, 2", MergeNotDisjoint),
        (r"1 ,, ((\x . x) : Int -> Int)", MergeNotDisjoint),
    ],
)
def test_errors(src, error):
    with pytest.raises(error):
        elaborate(E(src))


def test_error_carries_position():
    with pytest.raises(NotASubtype) as info:
        elaborate(E("(1 ,, true : Int -> Int)"))
    assert info.value.span is not None
    assert str(info.value).startswith("1:")


def test_context():
    ctx = EMPTY.extend("f", parse_type("Int -> Bool")).extend("n", INT)
    ty, _ = infer(ctx, E("f n"))
    assert ty == BOOL
    assert check(ctx, E("n ,, f"), BOOL) is not None


def test_pragma_checked():
    assert elaborate_program(parse_program("-- expect: Int\n1"))[0] == INT
    with pytest.raises(PragmaMismatch):
        elaborate_program(parse_program("-- expect: Bool\n1"))


def test_run_source():
    out = run_source("(2 ,, true) : Int")
    assert out.type == INT and out.value == VInt(2)


PROGRAMS = generate_programs(300, seed=11)


def test_generator_yields_enough():
    assert len(PROGRAMS) == 300


def test_preservation_on_generated_programs():
    for e in PROGRAMS:
        ty, term = elaborate(e)
        assert target_typecheck({}, term) == erase_type(ty), pretty_print(e)
        assert value_has_type(eval_term(term), erase_type(ty))


def test_check_subsumes_infer():
    for e in PROGRAMS[:100]:
        ty, _ = infer(EMPTY, e)
        term = check(EMPTY, e, ty)
        assert target_typecheck({}, term) == erase_type(ty)
        assert check(EMPTY, e, TOP) is not None


def test_annotation_idempotent():
    for e in PROGRAMS[:100]:
        ty, term = infer(EMPTY, e)
        ty2, term2 = infer(EMPTY, Anno(e, ty))
        assert ty2 == ty
        assert observe(eval_term(term2), ty) == observe(eval_term(term), ty)
