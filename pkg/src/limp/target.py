"""The target calculus: simply typed lambda calculus with unit and products.

Type checking is syntax directed (lambdas carry their parameter type).
Evaluation is call-by-value, left to right, over closures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple, Union

from .syntax import (
    And,
    Arrow,
    BoolTy,
    IntTy,
    SourceType,
    TApp,
    TArrow,
    TBool,
    TFst,
    TInt,
    TLam,
    TLitBool,
    TLitInt,
    TPair,
    TProd,
    TSnd,
    TUnit,
    TUnitVal,
    TVar,
    TargetExpr,
    TargetType,
    TopTy,
    erase_type,
    pretty_print,
)

STEP_BUDGET = 10**6


class TargetTypeError(Exception):
    """A target term is ill typed. Raised on elaboration bugs, never on user input."""


class RuntimeFault(Exception):
    """Evaluation got stuck or ran out of steps: a preservation bug."""


# ---------------------------------------------------------------------------
# Type checking


def target_typecheck(ctx: Mapping[str, TargetType], t: TargetExpr) -> TargetType:
    if isinstance(t, TVar):
        if t.name not in ctx:
            raise TargetTypeError(f"unbound variable {t.name}")
        return ctx[t.name]
    if isinstance(t, TLitInt):
        return TInt()
    if isinstance(t, TLitBool):
        return TBool()
    if isinstance(t, TUnitVal):
        return TUnit()
    if isinstance(t, TLam):
        inner = dict(ctx)
        inner[t.param] = t.param_ty
        return TArrow(t.param_ty, target_typecheck(inner, t.body))
    if isinstance(t, TApp):
        fun_ty = target_typecheck(ctx, t.fun)
        if not isinstance(fun_ty, TArrow):
            raise TargetTypeError(f"not a function: {pretty_print(t.fun)} : {pretty_print(fun_ty)}")
        arg_ty = target_typecheck(ctx, t.arg)
        if arg_ty != fun_ty.domain:
            raise TargetTypeError(
                f"argument mismatch: expected {pretty_print(fun_ty.domain)}, got {pretty_print(arg_ty)}"
            )
        return fun_ty.codomain
    if isinstance(t, TPair):
        return TProd(target_typecheck(ctx, t.left), target_typecheck(ctx, t.right))
    if isinstance(t, (TFst, TSnd)):
        pair_ty = target_typecheck(ctx, t.pair)
        if not isinstance(pair_ty, TProd):
            raise TargetTypeError(f"not a pair: {pretty_print(t.pair)} : {pretty_print(pair_ty)}")
        return pair_ty.left if isinstance(t, TFst) else pair_ty.right
    raise TargetTypeError(f"not a target term: {t!r}")


# ---------------------------------------------------------------------------
# Values and evaluation


@dataclass(frozen=True)
class VInt:
    value: int


@dataclass(frozen=True)
class VBool:
    value: bool


@dataclass(frozen=True)
class VUnit:
    pass


@dataclass(frozen=True)
class VPair:
    left: "TargetValue"
    right: "TargetValue"


@dataclass(frozen=True)
class VClosure:
    param: str
    body: TargetExpr
    env: Tuple[Tuple[str, "TargetValue"], ...] = field(default=(), repr=False)


TargetValue = Union[VInt, VBool, VUnit, VPair, VClosure]


def show_value(v: TargetValue) -> str:
    if isinstance(v, VInt):
        return str(v.value)
    if isinstance(v, VBool):
        return "true" if v.value else "false"
    if isinstance(v, VUnit):
        return "()"
    if isinstance(v, VPair):
        return f"({show_value(v.left)}, {show_value(v.right)})"
    return "<fun>"


class _Machine:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise RuntimeFault(f"step budget of {self.budget} exhausted")

    def eval(self, t: TargetExpr, env: Dict[str, TargetValue]) -> TargetValue:
        self.tick()
        if isinstance(t, TVar):
            try:
                return env[t.name]
            except KeyError:
                raise RuntimeFault(f"unbound variable {t.name}") from None
        if isinstance(t, TLitInt):
            return VInt(t.value)
        if isinstance(t, TLitBool):
            return VBool(t.value)
        if isinstance(t, TUnitVal):
            return VUnit()
        if isinstance(t, TLam):
            return VClosure(t.param, t.body, tuple(env.items()))
        if isinstance(t, TApp):
            f = self.eval(t.fun, env)
            a = self.eval(t.arg, env)
            return self.apply(f, a)
        if isinstance(t, TPair):
            left = self.eval(t.left, env)
            return VPair(left, self.eval(t.right, env))
        if isinstance(t, (TFst, TSnd)):
            p = self.eval(t.pair, env)
            if not isinstance(p, VPair):
                raise RuntimeFault(f"projection from non-pair {show_value(p)}")
            return p.left if isinstance(t, TFst) else p.right
        raise RuntimeFault(f"not a target term: {t!r}")

    def apply(self, f: TargetValue, a: TargetValue) -> TargetValue:
        if not isinstance(f, VClosure):
            raise RuntimeFault(f"application of non-function {show_value(f)}")
        env = dict(f.env)
        env[f.param] = a
        return self.eval(f.body, env)


def eval_term(t: TargetExpr, budget: int = STEP_BUDGET) -> TargetValue:
    """Evaluate a closed target term."""
    return _Machine(budget).eval(t, {})


def apply_value(f: TargetValue, a: TargetValue, budget: int = STEP_BUDGET) -> TargetValue:
    return _Machine(budget).apply(f, a)


def value_has_type(v: TargetValue, ty: TargetType) -> bool:
    """Shape check; closures are accepted at any arrow type."""
    if isinstance(ty, TInt):
        return isinstance(v, VInt)
    if isinstance(ty, TBool):
        return isinstance(v, VBool)
    if isinstance(ty, TUnit):
        return isinstance(v, VUnit)
    if isinstance(ty, TProd):
        return isinstance(v, VPair) and value_has_type(v.left, ty.left) and value_has_type(v.right, ty.right)
    return isinstance(v, VClosure)


def quote_value(v: TargetValue, ty: TargetType) -> TargetExpr:
    """Turn a closure-free value back into a term. Closures must be quoted by
    the caller, who knows their source."""
    if isinstance(v, VInt):
        return TLitInt(v.value)
    if isinstance(v, VBool):
        return TLitBool(v.value)
    if isinstance(v, VUnit):
        return TUnitVal()
    if isinstance(v, VPair):
        assert isinstance(ty, TProd)
        return TPair(quote_value(v.left, ty.left), quote_value(v.right, ty.right))
    raise ValueError("closures cannot be quoted")


# ---------------------------------------------------------------------------
# Normalization (used to deduplicate coercions up to beta and alpha)


def free_vars(t: TargetExpr) -> set:
    if isinstance(t, TVar):
        return {t.name}
    if isinstance(t, TLam):
        return free_vars(t.body) - {t.param}
    if isinstance(t, (TApp, TPair)):
        a, b = (t.fun, t.arg) if isinstance(t, TApp) else (t.left, t.right)
        return free_vars(a) | free_vars(b)
    if isinstance(t, (TFst, TSnd)):
        return free_vars(t.pair)
    return set()


class Fresh:
    """Deterministic fresh-name supply."""

    def __init__(self, prefix: str = "v"):
        self.prefix = prefix
        self.counter = itertools.count()

    def __call__(self) -> str:
        return f"{self.prefix}{next(self.counter)}"


def substitute(t: TargetExpr, name: str, value: TargetExpr, fresh: Fresh) -> TargetExpr:
    """Capture-avoiding ``t[name := value]``."""
    if isinstance(t, TVar):
        return value if t.name == name else t
    if isinstance(t, TLam):
        if t.param == name:
            return t
        if t.param in free_vars(value):
            new = fresh()
            body = substitute(t.body, t.param, TVar(new), fresh)
            return TLam(new, t.param_ty, substitute(body, name, value, fresh))
        return TLam(t.param, t.param_ty, substitute(t.body, name, value, fresh))
    if isinstance(t, TApp):
        return TApp(substitute(t.fun, name, value, fresh), substitute(t.arg, name, value, fresh))
    if isinstance(t, TPair):
        return TPair(substitute(t.left, name, value, fresh), substitute(t.right, name, value, fresh))
    if isinstance(t, TFst):
        return TFst(substitute(t.pair, name, value, fresh))
    if isinstance(t, TSnd):
        return TSnd(substitute(t.pair, name, value, fresh))
    return t


def _whnf_step(t: TargetExpr, fresh: Fresh):
    if isinstance(t, TApp) and isinstance(t.fun, TLam):
        return substitute(t.fun.body, t.fun.param, t.arg, fresh)
    if isinstance(t, TFst) and isinstance(t.pair, TPair):
        return t.pair.left
    if isinstance(t, TSnd) and isinstance(t.pair, TPair):
        return t.pair.right
    return None


def _normalize(t: TargetExpr, fresh: Fresh) -> TargetExpr:
    if isinstance(t, TLam):
        return TLam(t.param, t.param_ty, _normalize(t.body, fresh))
    if isinstance(t, TPair):
        return TPair(_normalize(t.left, fresh), _normalize(t.right, fresh))
    if isinstance(t, TApp):
        fun = _normalize(t.fun, fresh)
        arg = _normalize(t.arg, fresh)
        if isinstance(fun, TLam):
            return _normalize(substitute(fun.body, fun.param, arg, fresh), fresh)
        return TApp(fun, arg)
    if isinstance(t, (TFst, TSnd)):
        pair = _normalize(t.pair, fresh)
        if isinstance(pair, TPair):
            return pair.left if isinstance(t, TFst) else pair.right
        return TFst(pair) if isinstance(t, TFst) else TSnd(pair)
    return t


def _canonical_names(t: TargetExpr, renaming: Dict[str, str], counter: List[int]) -> TargetExpr:
    if isinstance(t, TVar):
        return TVar(renaming.get(t.name, t.name))
    if isinstance(t, TLam):
        new = f"x{counter[0]}"
        counter[0] += 1
        inner = dict(renaming)
        inner[t.param] = new
        return TLam(new, t.param_ty, _canonical_names(t.body, inner, counter))
    if isinstance(t, TApp):
        return TApp(_canonical_names(t.fun, renaming, counter), _canonical_names(t.arg, renaming, counter))
    if isinstance(t, TPair):
        return TPair(_canonical_names(t.left, renaming, counter), _canonical_names(t.right, renaming, counter))
    if isinstance(t, TFst):
        return TFst(_canonical_names(t.pair, renaming, counter))
    if isinstance(t, TSnd):
        return TSnd(_canonical_names(t.pair, renaming, counter))
    return t


def normalize(t: TargetExpr) -> TargetExpr:
    """Beta normal form (including pair projections) with bound variables
    renamed ``x0, x1, ...`` in binding order. Terminates on well-typed terms."""
    return _canonical_names(_normalize(t, Fresh("_n")), {}, [0])


# ---------------------------------------------------------------------------
# Observation


@dataclass(frozen=True)
class First:
    def __str__(self) -> str:
        return "fst"


@dataclass(frozen=True)
class Second:
    def __str__(self) -> str:
        return "snd"


@dataclass(frozen=True)
class ApplyCanonical:
    arg_type: SourceType

    def __str__(self) -> str:
        return f"@({pretty_print(self.arg_type)})"


ObservationPath = Tuple[Union[First, Second, ApplyCanonical], ...]


def show_path(path: ObservationPath) -> str:
    return ".".join(str(step) for step in path) or "<root>"


def canonical_term(a: SourceType) -> TargetExpr:
    """Term form of the canonical probe for ``a``: Int 1, Bool true, Top unit,
    pairs componentwise, arrows the constant function of the codomain probe."""
    if isinstance(a, IntTy):
        return TLitInt(1)
    if isinstance(a, BoolTy):
        return TLitBool(True)
    if isinstance(a, TopTy):
        return TUnitVal()
    if isinstance(a, And):
        return TPair(canonical_term(a.left), canonical_term(a.right))
    if isinstance(a, Arrow):
        return TLam("_", erase_type(a.domain), canonical_term(a.codomain))
    raise TypeError(f"not a source type: {a!r}")


def canonical_value(a: SourceType) -> TargetValue:
    return eval_term(canonical_term(a))


def observe(v: TargetValue, ty: SourceType, budget: int = STEP_BUDGET) -> List[Tuple[ObservationPath, TargetValue]]:
    """All ground observations of ``v`` at source type ``ty``.

    Products are split, arrows are applied to the canonical value of their
    domain. This probes each function at one point only.
    """
    out: List[Tuple[ObservationPath, TargetValue]] = []

    def go(v: TargetValue, ty: SourceType, path: ObservationPath) -> None:
        if isinstance(ty, And):
            if not isinstance(v, VPair):
                raise RuntimeFault(f"expected a pair at {show_path(path)}, got {show_value(v)}")
            go(v.left, ty.left, path + (First(),))
            go(v.right, ty.right, path + (Second(),))
        elif isinstance(ty, Arrow):
            result = apply_value(v, canonical_value(ty.domain), budget)
            go(result, ty.codomain, path + (ApplyCanonical(ty.domain),))
        else:
            out.append((path, v))

    go(v, ty, ())
    return out
