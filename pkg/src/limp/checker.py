"""Bidirectional typing with elaboration into the target calculus.

Inference (``=>``)::

    T-Top    top => Top                         ~> ()
    T-Lit    n => Int, true/false => Bool       ~> literal
    T-Var    x : A in ctx  =>  x => A           ~> x
    T-App    e1 => A -> B,  e2 <= A             ~> t1 t2
    T-Merge  e1 => A,  e2 => B,  A * B          ~> (t1, t2)
    T-Anno   e <= A  =>  (e : A) => A           ~> t

Checking (``<=``)::

    T-Abs    \\x. e <= A -> B  if  e <= B under x : A
    T-Sub    e => A,  A <: B  =>  e <= B        ~> c t

There is no inference rule for lambdas, no checking rule for merges, and
application only accepts a head whose inferred type is literally an arrow.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .disjoint import alg_disjoint
from .parser import Program
from .subtyping import NotSubtype, alg_subtype
from .syntax import (
    BOOL,
    INT,
    TOP,
    And,
    Anno,
    App,
    Arrow,
    Lam,
    LitBool,
    LitInt,
    Merge,
    SourceExpr,
    SourceType,
    Span,
    TApp,
    TLam,
    TLitBool,
    TLitInt,
    TPair,
    TUnitVal,
    TVar,
    TargetExpr,
    TopVal,
    TypingContext,
    Var,
    erase_type,
    pretty_print,
)


class TypeCheckError(Exception):
    def __init__(self, message: str, span: Span = None):
        self.span = span
        where = f"{span[0]}:{span[1]}: " if span else ""
        super().__init__(where + message)


class UnboundVariable(TypeCheckError):
    def __init__(self, name: str, span: Span = None):
        self.name = name
        super().__init__(f"unbound variable {name}", span)


class CannotInfer(TypeCheckError):
    def __init__(self, expr: SourceExpr, span: Span = None):
        self.expr = expr
        super().__init__(f"cannot infer a type for {pretty_print(expr)}; add an annotation", span)


class NotAFunction(TypeCheckError):
    def __init__(self, ty: SourceType, span: Span = None, lambda_checked: bool = False):
        self.ty = ty
        if lambda_checked:
            message = f"lambda checked against {pretty_print(ty)}, which is not a function type"
        else:
            message = f"head of application has type {pretty_print(ty)}, which is not a function type"
        super().__init__(message, span)


class NotASubtype(TypeCheckError):
    def __init__(self, found: SourceType, expected: SourceType, span: Span = None):
        self.found = found
        self.expected = expected
        super().__init__(f"{pretty_print(found)} is not a subtype of {pretty_print(expected)}", span)


class MergeNotDisjoint(TypeCheckError):
    def __init__(self, left: SourceType, right: SourceType, reason: str, span: Span = None):
        self.left = left
        self.right = right
        super().__init__(
            f"cannot merge {pretty_print(left)} with {pretty_print(right)}: not disjoint ({reason})", span
        )


class PragmaMismatch(TypeCheckError):
    def __init__(self, expected: SourceType, found: SourceType):
        self.expected = expected
        self.found = found
        super().__init__(f"expected type {pretty_print(expected)} but inferred {pretty_print(found)}")


def infer(ctx: TypingContext, e: SourceExpr) -> Tuple[SourceType, TargetExpr]:
    if isinstance(e, TopVal):
        return TOP, TUnitVal()
    if isinstance(e, LitInt):
        return INT, TLitInt(e.value)
    if isinstance(e, LitBool):
        return BOOL, TLitBool(e.value)
    if isinstance(e, Var):
        ty = ctx.lookup(e.name)
        if ty is None:
            raise UnboundVariable(e.name, e.span)
        return ty, TVar(e.name)
    if isinstance(e, Lam):
        raise CannotInfer(e, e.span)
    if isinstance(e, App):
        fun_ty, fun = infer(ctx, e.fun)
        if not isinstance(fun_ty, Arrow):
            raise NotAFunction(fun_ty, e.span)
        arg = check(ctx, e.arg, fun_ty.domain)
        return fun_ty.codomain, TApp(fun, arg)
    if isinstance(e, Merge):
        left_ty, left = infer(ctx, e.left)
        right_ty, right = infer(ctx, e.right)
        verdict = alg_disjoint(left_ty, right_ty)
        if not verdict:
            raise MergeNotDisjoint(left_ty, right_ty, verdict.reason, e.span)
        return And(left_ty, right_ty), TPair(left, right)
    if isinstance(e, Anno):
        return e.ty, check(ctx, e.expr, e.ty)
    raise TypeError(f"not a source expression: {e!r}")


def check(ctx: TypingContext, e: SourceExpr, ty: SourceType) -> TargetExpr:
    if isinstance(e, Lam):
        if not isinstance(ty, Arrow):
            raise NotAFunction(ty, e.span, lambda_checked=True)
        body = check(ctx.extend(e.param, ty.domain), e.body, ty.codomain)
        return TLam(e.param, erase_type(ty.domain), body)
    found, term = infer(ctx, e)
    try:
        coercion = alg_subtype(found, ty)
    except NotSubtype:
        raise NotASubtype(found, ty, getattr(e, "span", None)) from None
    return TApp(coercion.term, term)


def elaborate(e: SourceExpr, ctx: Optional[TypingContext] = None) -> Tuple[SourceType, TargetExpr]:
    return infer(ctx or TypingContext(), e)


def elaborate_program(p: Program) -> Tuple[SourceType, TargetExpr]:
    ty, term = infer(TypingContext(), p.main)
    if p.expected_type is not None and p.expected_type != ty:
        raise PragmaMismatch(p.expected_type, ty)
    return ty, term
