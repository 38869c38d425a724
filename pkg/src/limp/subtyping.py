"""Algorithmic subtyping with modus ponens, elaborating to coercions.

The judgment has two phases.

Goal phase, ``env <: goal``:

    A-Top     goal is Top
    A-And     goal is B & C: prove both
    A-Lookup  goal is ordinary (Int, Bool or an arrow): search ``env`` for it

Lookup phase, with a *focus* type reachable from ``env`` and the queue of
arguments that modus ponens has already supplied on the way to the focus:

    A-ProjL / A-ProjR  focus is an intersection: look in one component
    A-Base             focus is the goal base type
    A-Arr              focus and goal are arrows: contravariant domain,
                       covariant codomain, both checked on their own
    A-MP               focus is an arrow: prove ``env <: domain`` and
                       continue with the codomain

A-MP is the rule that performs resolution: the argument of the focused
function is itself synthesized from the whole environment.

A goal pair that is already being proved higher up the stack fails at once;
a finite derivation never needs to use its own conclusion. That is what
makes the search terminate, and the measure below is built on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .syntax import (
    And,
    Arrow,
    Coercion,
    SourceType,
    TApp,
    TLam,
    TPair,
    TFst,
    TSnd,
    TopTy,
    TUnitVal,
    TVar,
    TargetExpr,
    erase_type,
    pretty_print,
    subterms,
    toplike,
    type_size,
)
from .target import Fresh

__all__ = [
    "AlgState",
    "Measure",
    "TraceStep",
    "Derivation",
    "NotSubtype",
    "InternalDivergence",
    "RULES",
    "derive",
    "alg_subtype",
    "alg_subtype_trace",
    "is_subtype",
    "measure_of",
    "toplike",
    "format_trace",
]

RULES = ("A-Top", "A-And", "A-Lookup", "A-ProjL", "A-ProjR", "A-Base", "A-Arr", "A-MP")


class InternalDivergence(RuntimeError):
    """The depth safety net or the measure check tripped. Always a bug."""


@dataclass(frozen=True)
class AlgState:
    left: SourceType
    right: SourceType
    queue: Tuple[SourceType, ...] = ()
    env: Optional[SourceType] = None
    active: int = 0
    depth: int = 0

    def __str__(self) -> str:
        queue = ", ".join(pretty_print(t) for t in self.queue)
        return f"{pretty_print(self.left)} <: {pretty_print(self.right)} | queue=[{queue}]"


@dataclass(frozen=True, order=True)
class Measure:
    components: Tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    state: AlgState
    measure: Measure

    def __str__(self) -> str:
        return f"{self.rule} | {self.state} | measure={self.measure}"


@dataclass
class Derivation:
    source: SourceType
    target: SourceType
    coercion: Optional[Coercion]
    trace: List[TraceStep]
    calls: int
    max_depth: int
    last_state: Optional[AlgState] = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.coercion is not None


class NotSubtype(Exception):
    """Negative answer of the decision procedure (not a fault)."""

    def __init__(self, source: SourceType, target: SourceType, state: Optional[AlgState]):
        self.source = source
        self.target = target
        self.state = state
        super().__init__(f"{pretty_print(source)} is not a subtype of {pretty_print(target)}")


def _pair_universe(a: SourceType, b: SourceType) -> int:
    n = len(set(subterms(a)) | set(subterms(b)))
    return n * n


def measure_of(state: AlgState, universe: int) -> Measure:
    """Lexicographic measure of a state.

    First component: goal pairs that may still be opened (``universe`` is the
    number of (env, goal) pairs over subterms of the inputs; ``active`` counts
    those currently open, a lookup state counting its own enclosing goal).
    Second: size of the types still to be taken apart; a lookup state is
    measured by its focus alone, a goal state by both sides.
    """
    if state.env is None:
        return Measure((universe - state.active + 1, type_size(state.left) + type_size(state.right)))
    return Measure((universe - state.active + 2, type_size(state.left)))


class _Search:
    def __init__(self, a: SourceType, b: SourceType):
        self.universe = _pair_universe(a, b)
        self.limit = 10 * (type_size(a) + type_size(b)) ** 2
        self.active: set = set()
        self.fresh = Fresh("x")
        self.calls = 0
        self.max_depth = 0
        self.last_state: Optional[AlgState] = None

    def _enter(self, state: AlgState, parent: Optional[Measure]) -> Measure:
        self.calls += 1
        self.last_state = state
        self.max_depth = max(self.max_depth, state.depth)
        if state.depth > self.limit:
            raise InternalDivergence(f"depth {state.depth} exceeds safety bound {self.limit} at {state}")
        m = measure_of(state, self.universe)
        if parent is not None and not m < parent:
            raise InternalDivergence(f"measure did not decrease: {parent} -> {m} at {state}")
        return m

    def goal(self, env: SourceType, goal: SourceType, depth: int, parent: Optional[Measure]):
        """Prove ``env <: goal``; returns (coercion term, steps) or None."""
        state = AlgState(env, goal, (), None, len(self.active), depth)
        m = self._enter(state, parent)
        key = (env, goal)
        if key in self.active:
            return None
        self.active.add(key)
        try:
            x = self.fresh()
            env_ty = erase_type(env)
            if isinstance(goal, TopTy):
                return TLam(x, env_ty, TUnitVal()), [TraceStep("A-Top", state, m)]
            if isinstance(goal, And):
                left = self.goal(env, goal.left, depth + 1, m)
                if left is None:
                    return None
                right = self.goal(env, goal.right, depth + 1, m)
                if right is None:
                    return None
                term = TLam(x, env_ty, TPair(TApp(left[0], TVar(x)), TApp(right[0], TVar(x))))
                return term, [TraceStep("A-And", state, m)] + left[1] + right[1]
            found = self.lookup(env, x, env, TVar(x), goal, (), depth + 1, m)
            if found is None:
                return None
            return TLam(x, env_ty, found[0]), [TraceStep("A-Lookup", state, m)] + found[1]
        finally:
            self.active.discard(key)

    def lookup(self, env, x, focus, term: TargetExpr, goal, queue, depth, parent):
        """Find ``goal`` inside ``focus`` (a value ``term`` built from ``x : env``)."""
        state = AlgState(focus, goal, queue, env, len(self.active), depth)
        m = self._enter(state, parent)
        if isinstance(focus, And):
            found = self.lookup(env, x, focus.left, TFst(term), goal, queue, depth + 1, m)
            if found is not None:
                return found[0], [TraceStep("A-ProjL", state, m)] + found[1]
            found = self.lookup(env, x, focus.right, TSnd(term), goal, queue, depth + 1, m)
            if found is not None:
                return found[0], [TraceStep("A-ProjR", state, m)] + found[1]
            return None
        if isinstance(focus, Arrow):
            if isinstance(goal, Arrow):
                dom = self.goal(goal.domain, focus.domain, depth + 1, m)
                if dom is not None:
                    cod = self.goal(focus.codomain, goal.codomain, depth + 1, m)
                    if cod is not None:
                        y = self.fresh()
                        arrow = TLam(y, erase_type(goal.domain), TApp(cod[0], TApp(term, TApp(dom[0], TVar(y)))))
                        return arrow, [TraceStep("A-Arr", state, m)] + dom[1] + cod[1]
            arg = self.goal(env, focus.domain, depth + 1, m)
            if arg is None:
                return None
            applied = TApp(term, TApp(arg[0], TVar(x)))
            found = self.lookup(env, x, focus.codomain, applied, goal, queue + (focus.domain,), depth + 1, m)
            if found is None:
                return None
            return found[0], [TraceStep("A-MP", state, m)] + arg[1] + found[1]
        if focus == goal and not isinstance(focus, TopTy):
            return term, [TraceStep("A-Base", state, m)]
        return None


def derive(a: SourceType, b: SourceType) -> Derivation:
    """Run the algorithm on ``a <: b`` and report coercion, trace and counters."""
    search = _Search(a, b)
    result = search.goal(a, b, 0, None)
    coercion = Coercion(result[0], a, b) if result is not None else None
    trace = result[1] if result is not None else []
    return Derivation(a, b, coercion, trace, search.calls, search.max_depth, search.last_state)


def alg_subtype(a: SourceType, b: SourceType) -> Coercion:
    d = derive(a, b)
    if d.coercion is None:
        raise NotSubtype(a, b, d.last_state)
    return d.coercion


def alg_subtype_trace(a: SourceType, b: SourceType) -> Tuple[Coercion, List[TraceStep]]:
    d = derive(a, b)
    if d.coercion is None:
        raise NotSubtype(a, b, d.last_state)
    return d.coercion, d.trace


def is_subtype(a: SourceType, b: SourceType) -> bool:
    return derive(a, b).ok


def format_trace(trace: List[TraceStep]) -> str:
    return "\n".join(str(step) for step in trace)
