"""Bounded proof search for declarative subtyping.

Declarative rules (with their coercions)::

    S-Refl   A <: A                                   \\x. x
    S-Trans  A <: B  and  B <: C      =>  A <: C      \\x. c2 (c1 x)
    S-Top    A <: Top                                 \\x. ()
    S-AndL   A & B <: A                               \\x. fst x
    S-AndR   A & B <: B                               \\x. snd x
    S-And    A <: B  and  A <: C      =>  A <: B & C  \\x. (c1 x, c2 x)
    S-Arr    B1 <: A1  and  A2 <: B2  =>  A1 -> A2 <: B1 -> B2
                                                      \\f. \\y. c2 (f (c1 y))
    S-MP     A <: B -> C  and  A <: B =>  A <: C      \\x. (c1 x) (c2 x)

S-Trans and S-MP have a premise type that does not occur in the conclusion.
Both range over a finite universe: every type up to a size bound, plus all
subterms of the query. Over that universe the relation is computed bottom-up
as boolean matrices, one round per derivation height, so ``depth[i, j]`` is
the height of the shortest derivation of ``U[i] <: U[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .syntax import (
    BOOL,
    INT,
    TOP,
    And,
    Arrow,
    Coercion,
    SourceType,
    TApp,
    TFst,
    TLam,
    TPair,
    TSnd,
    TopTy,
    TUnitVal,
    TVar,
    TargetExpr,
    erase_type,
    subterms,
    toplike,
    type_size,
)
from .target import normalize

UNREACHED = np.iinfo(np.int32).max


@dataclass(frozen=True)
class SearchBudget:
    fuel: int = 8
    universe_size: int = 4
    max_coercions: int = 8

    def __post_init__(self):
        if min(self.fuel, self.universe_size, self.max_coercions) < 1:
            raise ValueError("budget components must be positive")

    def escalate(self) -> "SearchBudget":
        return SearchBudget(self.fuel * 2, self.universe_size + 1, self.max_coercions)


@dataclass(frozen=True)
class Derivable:
    coercions: Tuple[Coercion, ...]
    depth: int


@dataclass(frozen=True)
class NotDerivableWithinFuel:
    """No derivation of height <= fuel over the universe."""

    saturated: bool = False


@dataclass(frozen=True)
class ExhaustedUniverse(NotDerivableWithinFuel):
    """The relation reached its fixed point within the fuel: no derivation
    exists over this universe at any height."""

    saturated: bool = True


OracleVerdict = object  # Derivable | NotDerivableWithinFuel | ExhaustedUniverse


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_types(max_size: int, bases: Sequence[SourceType] = (INT, BOOL)) -> List[SourceType]:
    """Every type of size <= max_size over ``bases``, Top, arrows and
    intersections. Ordered by size; within a size, arrows before
    intersections, each split by left size and then lexicographically."""
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    by_size: Dict[int, List[SourceType]] = {1: list(dict.fromkeys(list(bases) + [TOP]))}
    for n in range(2, max_size + 1):
        level: List[SourceType] = []
        for ctor in (Arrow, And):
            for i in range(1, n - 1):
                j = n - 1 - i
                for left in by_size.get(i, []):
                    for right in by_size.get(j, []):
                        level.append(ctor(left, right))
        by_size[n] = level
    return [t for n in range(1, max_size + 1) for t in by_size[n]]


def build_universe(universe_size: int, *extra: SourceType) -> Tuple[SourceType, ...]:
    types = enumerate_types(universe_size)
    seen = set(types)
    for t in extra:
        for s in sorted(subterms(t), key=type_size):
            if s not in seen:
                seen.add(s)
                types.append(s)
    return tuple(types)


# ---------------------------------------------------------------------------
# The bounded relation


class DeclarativeTable:
    """Shortest-derivation heights for all pairs of a finite universe."""

    def __init__(self, universe: Sequence[SourceType], max_fuel: int):
        self.types = tuple(dict.fromkeys(universe))
        self.index = {t: i for i, t in enumerate(self.types)}
        for t in self.types:
            for s in subterms(t):
                if s not in self.index:
                    raise ValueError(f"universe is not closed under subterms: {s}")
        n = len(self.types)
        self.top = self.index.get(TOP)
        self.arrows = [(i, self.index[t.domain], self.index[t.codomain])
                       for i, t in enumerate(self.types) if isinstance(t, Arrow)]
        self.ands = [(i, self.index[t.left], self.index[t.right])
                     for i, t in enumerate(self.types) if isinstance(t, And)]
        self.depth = np.full((n, n), UNREACHED, dtype=np.int32)
        self.rounds = 0
        self.saturated = False
        self._run(max_fuel)

    def _axioms(self) -> np.ndarray:
        n = len(self.types)
        rel = np.eye(n, dtype=bool)
        if self.top is not None:
            rel[:, self.top] = True
        for k, left, right in self.ands:
            rel[k, left] = True
            rel[k, right] = True
        return rel

    def _step(self, rel: np.ndarray) -> np.ndarray:
        new = rel.copy()
        as_float = rel.astype(np.float32)
        new |= (as_float @ as_float) > 0
        if self.arrows:
            arr = np.array([a for a, _, _ in self.arrows])
            dom = np.array([d for _, d, _ in self.arrows])
            cod = np.array([c for _, _, c in self.arrows])
            new[np.ix_(arr, arr)] |= rel[np.ix_(dom, dom)].T & rel[np.ix_(cod, cod)]
            for k, d, c in self.arrows:
                new[:, c] |= rel[:, k] & rel[:, d]
        for k, left, right in self.ands:
            new[:, k] |= rel[:, left] & rel[:, right]
        return new

    def _run(self, max_fuel: int) -> None:
        rel = self._axioms()
        self.depth[rel] = 1
        self.rounds = 1
        while self.rounds < max_fuel:
            new = self._step(rel)
            fresh = new & ~rel
            if not fresh.any():
                self.saturated = True
                return
            self.rounds += 1
            self.depth[fresh] = self.rounds
            rel = new
        # one extra round tells whether more fuel could help
        self.saturated = not (self._step(rel) & ~rel).any()

    def height(self, a: SourceType, b: SourceType) -> int:
        return int(self.depth[self.index[a], self.index[b]])

    def derivable(self, a: SourceType, b: SourceType, fuel: int) -> bool:
        return self.height(a, b) <= fuel

    def supertypes(self, a: SourceType, fuel: int) -> List[SourceType]:
        row = self.depth[self.index[a]]
        return [self.types[j] for j in np.flatnonzero(row <= fuel)]


@lru_cache(maxsize=64)
def _table(universe: Tuple[SourceType, ...], fuel: int) -> DeclarativeTable:
    return DeclarativeTable(universe, fuel)


def table_for(a: SourceType, b: SourceType, budget: SearchBudget) -> DeclarativeTable:
    return _table(build_universe(budget.universe_size, a, b), budget.fuel)


# ---------------------------------------------------------------------------
# Coercion sampling


class _Sampler:
    """Enumerates coercions of derivations of bounded height, shallow first,
    deduplicated by beta-normal form."""

    def __init__(self, table: DeclarativeTable, limit: int):
        self.t = table
        self.limit = limit
        self.work = 4 * limit
        self.memo: Dict[Tuple[int, int, int], List[TargetExpr]] = {}

    def ok(self, i: int, j: int, d: int) -> bool:
        return self.t.depth[i, j] <= d

    def gen(self, i: int, j: int, d: int) -> List[TargetExpr]:
        key = (i, j, d)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = []
        out: List[TargetExpr] = []
        seen = set()
        budget = [self.work]

        def offer(term: TargetExpr) -> bool:
            budget[0] -= 1
            nf = normalize(term)
            if nf not in seen:
                seen.add(nf)
                out.append(nf)
            return len(out) >= self.limit or budget[0] <= 0

        if self.ok(i, j, d):
            self._rules(i, j, d, offer)
        self.memo[key] = out
        return out

    def _rules(self, i, j, d, offer) -> None:
        types = self.t.types
        a, b = types[i], types[j]
        ea = erase_type(a)
        if i == j and offer(TLam("x", ea, TVar("x"))):
            return
        if isinstance(b, TopTy) and offer(TLam("x", ea, TUnitVal())):
            return
        if isinstance(a, And):
            if b == a.left and offer(TLam("x", ea, TFst(TVar("x")))):
                return
            if b == a.right and offer(TLam("x", ea, TSnd(TVar("x")))):
                return
        if d <= 1:
            return
        e = d - 1
        idx = self.t.index
        if isinstance(b, And):
            left, right = idx[b.left], idx[b.right]
            if self.ok(i, left, e) and self.ok(i, right, e):
                for c1, c2 in _pairs(self.gen(i, left, e), self.gen(i, right, e)):
                    x = TVar("x")
                    if offer(TLam("x", ea, TPair(TApp(c1, x), TApp(c2, x)))):
                        return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            da, db, ca, cb = idx[a.domain], idx[b.domain], idx[a.codomain], idx[b.codomain]
            if self.ok(db, da, e) and self.ok(ca, cb, e):
                for c1, c2 in _pairs(self.gen(db, da, e), self.gen(ca, cb, e)):
                    body = TApp(c2, TApp(TVar("f"), TApp(c1, TVar("y"))))
                    if offer(TLam("f", ea, TLam("y", erase_type(b.domain), body))):
                        return
        for k, dom, cod in self.t.arrows:
            if cod != j or not (self.ok(i, k, e) and self.ok(i, dom, e)):
                continue
            for c1, c2 in _pairs(self.gen(i, k, e), self.gen(i, dom, e)):
                x = TVar("x")
                if offer(TLam("x", ea, TApp(TApp(c1, x), TApp(c2, x)))):
                    return
        for m in range(len(types)):
            if m in (i, j) or not (self.ok(i, m, e) and self.ok(m, j, e)):
                continue
            for c1, c2 in _pairs(self.gen(i, m, e), self.gen(m, j, e)):
                if offer(TLam("x", ea, TApp(c2, TApp(c1, TVar("x"))))):
                    return


def _pairs(xs: List[TargetExpr], ys: List[TargetExpr]):
    """Cartesian product in diagonal order, so small prefixes mix both sides."""
    for s in range(len(xs) + len(ys) - 1):
        for p in range(max(0, s - len(ys) + 1), min(s, len(xs) - 1) + 1):
            yield xs[p], ys[s - p]


def sample_coercions(table: DeclarativeTable, a: SourceType, b: SourceType, fuel: int, limit: int) -> List[Coercion]:
    i, j = table.index[a], table.index[b]
    start = int(table.depth[i, j])
    if start > fuel:
        return []
    sampler = _Sampler(table, limit)
    found: List[TargetExpr] = []
    for d in range(start, min(fuel, table.rounds) + 1):
        for term in sampler.gen(i, j, d):
            if term not in found:
                found.append(term)
        if len(found) >= limit:
            break
    return [Coercion(t, a, b) for t in found[:limit]]


# ---------------------------------------------------------------------------
# Public operations


def decl_subtype(a: SourceType, b: SourceType, budget: SearchBudget = SearchBudget()):
    """Search for declarative derivations of ``a <: b`` within ``budget``."""
    table = table_for(a, b, budget)
    h = table.height(a, b)
    if h <= budget.fuel:
        return Derivable(tuple(sample_coercions(table, a, b, budget.fuel, budget.max_coercions)), h)
    if table.saturated:
        return ExhaustedUniverse()
    return NotDerivableWithinFuel()


def outputs(t: SourceType) -> List[SourceType]:
    """``t`` and every codomain reachable from it by peeling arrows."""
    out = [t]
    while isinstance(t, Arrow):
        t = t.codomain
        out.append(t)
    return out


@dataclass(frozen=True)
class Disjoint:
    pass


@dataclass(frozen=True)
class CommonSupertypeWitness:
    """``witness`` is not top-like, and each side has a supertype that
    produces it once enough arguments are supplied (``left_via`` and
    ``right_via`` are those supertypes; they equal ``witness`` when it is a
    plain common supertype)."""

    witness: SourceType
    left_via: SourceType
    right_via: SourceType


@dataclass(frozen=True)
class Unknown:
    pass


def spec_disjoint(a: SourceType, b: SourceType, budget: SearchBudget = SearchBudget()):
    """Search for a non-top-like type both sides can produce.

    With modus ponens an arrow ``X -> C`` hands out a ``C`` whenever an ``X``
    is around, so overlap is judged on the outputs of supertypes rather than
    on the supertypes themselves.
    """
    table = table_for(a, b, budget)
    order = table.index

    def produced(t: SourceType) -> Dict[SourceType, SourceType]:
        found: Dict[SourceType, SourceType] = {}
        for sup in table.supertypes(t, budget.fuel):
            for out in outputs(sup):
                if not toplike(out) and out not in found:
                    found[out] = sup
        return found

    left, right = produced(a), produced(b)
    common = sorted(set(left) & set(right), key=lambda t: (type_size(t), order[t]))
    if common:
        w = common[0]
        return CommonSupertypeWitness(w, left[w], right[w])
    if table.saturated:
        return Disjoint()
    return Unknown()
