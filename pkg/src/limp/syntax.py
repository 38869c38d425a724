"""Abstract syntax for source types and terms, target types and terms.

Source types are never normalized: ``And(a, b)`` and ``And(b, a)`` are
different values, and all the reasoning about intersections lives in the
subtyping modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

Span = Optional[Tuple[int, int]]


# ---------------------------------------------------------------------------
# Source types


@dataclass(frozen=True)
class IntTy:
    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class BoolTy:
    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class TopTy:
    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Arrow:
    domain: "SourceType"
    codomain: "SourceType"

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class And:
    left: "SourceType"
    right: "SourceType"

    def __str__(self) -> str:
        return pretty_print(self)


SourceType = Union[IntTy, BoolTy, TopTy, Arrow, And]

INT = IntTy()
BOOL = BoolTy()
TOP = TopTy()
BASE_TYPES = (INT, BOOL)


def type_eq(a: SourceType, b: SourceType) -> bool:
    return a == b


def type_size(a: SourceType) -> int:
    if isinstance(a, (Arrow, And)):
        left, right = (a.domain, a.codomain) if isinstance(a, Arrow) else (a.left, a.right)
        return 1 + type_size(left) + type_size(right)
    return 1


def subterms(a: SourceType) -> list:
    """All subterms of ``a`` (including ``a``), without duplicates, in pre-order."""
    out: list = []
    seen = set()
    stack = [a]
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        out.append(t)
        if isinstance(t, Arrow):
            stack.extend((t.codomain, t.domain))
        elif isinstance(t, And):
            stack.extend((t.right, t.left))
    return out


def is_ordinary(a: SourceType) -> bool:
    """Base types and arrows; the goals the lookup phase of subtyping handles."""
    return isinstance(a, (IntTy, BoolTy, Arrow))


def toplike(a: SourceType) -> bool:
    """Top-like types: ``Top``, intersections of top-like types, and arrows
    whose codomain is top-like."""
    if isinstance(a, TopTy):
        return True
    if isinstance(a, And):
        return toplike(a.left) and toplike(a.right)
    if isinstance(a, Arrow):
        return toplike(a.codomain)
    return False


# ---------------------------------------------------------------------------
# Source expressions
#
# ``span`` is (line, column) of the construct in the input, when it came from
# the parser. It never takes part in equality.


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class LitInt:
    value: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class LitBool:
    value: bool
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TopVal:
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lam:
    param: str
    body: "SourceExpr"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class App:
    fun: "SourceExpr"
    arg: "SourceExpr"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Merge:
    left: "SourceExpr"
    right: "SourceExpr"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Anno:
    expr: "SourceExpr"
    ty: SourceType
    span: Span = field(default=None, compare=False, repr=False)


SourceExpr = Union[Var, LitInt, LitBool, TopVal, Lam, App, Merge, Anno]


# ---------------------------------------------------------------------------
# Target types and terms


@dataclass(frozen=True)
class TInt:
    pass


@dataclass(frozen=True)
class TBool:
    pass


@dataclass(frozen=True)
class TUnit:
    pass


@dataclass(frozen=True)
class TArrow:
    domain: "TargetType"
    codomain: "TargetType"


@dataclass(frozen=True)
class TProd:
    left: "TargetType"
    right: "TargetType"


TargetType = Union[TInt, TBool, TUnit, TArrow, TProd]


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TLitInt:
    value: int


@dataclass(frozen=True)
class TLitBool:
    value: bool


@dataclass(frozen=True)
class TUnitVal:
    pass


@dataclass(frozen=True)
class TLam:
    param: str
    param_ty: TargetType
    body: "TargetExpr"


@dataclass(frozen=True)
class TApp:
    fun: "TargetExpr"
    arg: "TargetExpr"


@dataclass(frozen=True)
class TPair:
    left: "TargetExpr"
    right: "TargetExpr"


@dataclass(frozen=True)
class TFst:
    pair: "TargetExpr"


@dataclass(frozen=True)
class TSnd:
    pair: "TargetExpr"


TargetExpr = Union[TVar, TLitInt, TLitBool, TUnitVal, TLam, TApp, TPair, TFst, TSnd]


@dataclass(frozen=True)
class Coercion:
    """A closed target function witnessing ``source <: target``."""

    term: TargetExpr
    source: SourceType
    target: SourceType

    def __str__(self) -> str:
        return pretty_print(self.term)


def erase_type(a: SourceType) -> TargetType:
    if isinstance(a, IntTy):
        return TInt()
    if isinstance(a, BoolTy):
        return TBool()
    if isinstance(a, TopTy):
        return TUnit()
    if isinstance(a, Arrow):
        return TArrow(erase_type(a.domain), erase_type(a.codomain))
    if isinstance(a, And):
        return TProd(erase_type(a.left), erase_type(a.right))
    raise TypeError(f"not a source type: {a!r}")


def target_type_size(t: TargetType) -> int:
    if isinstance(t, TArrow):
        return 1 + target_type_size(t.domain) + target_type_size(t.codomain)
    if isinstance(t, TProd):
        return 1 + target_type_size(t.left) + target_type_size(t.right)
    return 1


# ---------------------------------------------------------------------------
# Typing contexts


@dataclass(frozen=True)
class TypingContext:
    """Ordered bindings, innermost last."""

    bindings: Tuple[Tuple[str, SourceType], ...] = ()

    def extend(self, name: str, ty: SourceType) -> "TypingContext":
        return TypingContext(self.bindings + ((name, ty),))

    def lookup(self, name: str) -> Optional[SourceType]:
        for bound, ty in reversed(self.bindings):
            if bound == name:
                return ty
        return None

    def erase(self) -> dict:
        out = {}
        for name, ty in self.bindings:
            out[name] = erase_type(ty)
        return out


# ---------------------------------------------------------------------------
# Pretty printing
#
# Types:  arrow (level 0) < intersection (level 1) < atom (level 2).
# Terms:  annotation (0) < merge (1) < application (2) < atom (3). A lambda
# swallows everything to its right, so it is only left bare at level 0.


def _pp_type(a: SourceType, level: int) -> str:
    if isinstance(a, IntTy):
        return "Int"
    if isinstance(a, BoolTy):
        return "Bool"
    if isinstance(a, TopTy):
        return "Top"
    if isinstance(a, Arrow):
        s = f"{_pp_type(a.domain, 1)} -> {_pp_type(a.codomain, 0)}"
        return s if level == 0 else f"({s})"
    if isinstance(a, And):
        s = f"{_pp_type(a.left, 1)} & {_pp_type(a.right, 2)}"
        return s if level <= 1 else f"({s})"
    raise TypeError(f"not a source type: {a!r}")


def _pp_expr(e: SourceExpr, level: int) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, LitInt):
        return str(e.value) if e.value >= 0 or level < 3 else f"({e.value})"
    if isinstance(e, LitBool):
        return "true" if e.value else "false"
    if isinstance(e, TopVal):
        return "top"
    if isinstance(e, Lam):
        s = f"\\{e.param} . {_pp_expr(e.body, 0)}"
        return s if level == 0 else f"({s})"
    if isinstance(e, App):
        s = f"{_pp_expr(e.fun, 2)} {_pp_expr(e.arg, 3)}"
        return s if level <= 2 else f"({s})"
    if isinstance(e, Merge):
        s = f"{_pp_expr(e.left, 1)} ,, {_pp_expr(e.right, 2)}"
        return s if level <= 1 else f"({s})"
    if isinstance(e, Anno):
        s = f"{_pp_expr(e.expr, 1)} : {_pp_type(e.ty, 0)}"
        return s if level == 0 else f"({s})"
    raise TypeError(f"not a source expression: {e!r}")


def _pp_target_type(t: TargetType, level: int = 0) -> str:
    if isinstance(t, TInt):
        return "Int"
    if isinstance(t, TBool):
        return "Bool"
    if isinstance(t, TUnit):
        return "Unit"
    if isinstance(t, TArrow):
        s = f"{_pp_target_type(t.domain, 1)} -> {_pp_target_type(t.codomain, 0)}"
        return s if level == 0 else f"({s})"
    if isinstance(t, TProd):
        s = f"{_pp_target_type(t.left, 1)} * {_pp_target_type(t.right, 2)}"
        return s if level <= 1 else f"({s})"
    raise TypeError(f"not a target type: {t!r}")


def _pp_target(t: TargetExpr, level: int) -> str:
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, TLitInt):
        return str(t.value) if t.value >= 0 else f"({t.value})"
    if isinstance(t, TLitBool):
        return "true" if t.value else "false"
    if isinstance(t, TUnitVal):
        return "()"
    if isinstance(t, TLam):
        s = f"\\{t.param}:{_pp_target_type(t.param_ty, 2)}. {_pp_target(t.body, 0)}"
        return s if level == 0 else f"({s})"
    if isinstance(t, TApp):
        s = f"{_pp_target(t.fun, 2)} {_pp_target(t.arg, 3)}"
        return s if level <= 2 else f"({s})"
    if isinstance(t, (TFst, TSnd)):
        op = "fst" if isinstance(t, TFst) else "snd"
        s = f"{op} {_pp_target(t.pair, 3)}"
        return s if level <= 2 else f"({s})"
    if isinstance(t, TPair):
        return f"({_pp_target(t.left, 0)}, {_pp_target(t.right, 0)})"
    raise TypeError(f"not a target expression: {t!r}")


_SOURCE_TYPES = (IntTy, BoolTy, TopTy, Arrow, And)
_SOURCE_EXPRS = (Var, LitInt, LitBool, TopVal, Lam, App, Merge, Anno)
_TARGET_TYPES = (TInt, TBool, TUnit, TArrow, TProd)


def pretty_print(x) -> str:
    """Render a source type, source term, target type or target term."""
    if isinstance(x, _SOURCE_TYPES):
        return _pp_type(x, 0)
    if isinstance(x, _SOURCE_EXPRS):
        return _pp_expr(x, 0)
    if isinstance(x, _TARGET_TYPES):
        return _pp_target_type(x)
    if isinstance(x, Coercion):
        return _pp_target(x.term, 0)
    return _pp_target(x, 0)
