"""Algorithmic disjointness ``A * B``, the side condition of merges.

    D-TopL / D-TopR     a top-like side is disjoint from anything
    D-AndL / D-AndR     an intersection is disjoint if both parts are
    D-ArrArr            A1 -> A2 * B1 -> B2   if  A2 * B2
    D-ArrL / D-ArrR     A1 -> A2 * B          if  A2 * B   (B a base type)
    D-IntBool           distinct base types are disjoint

D-ArrL/D-ArrR are where modus ponens bites: a function returning ``B``
yields a ``B`` as soon as its argument is in scope, so ``Int`` and
``Int -> Int`` overlap and ``1 ,, f`` with ``f : Int -> Int`` would have
two different ways of producing an ``Int``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import And, Arrow, BoolTy, IntTy, SourceType, pretty_print, toplike


@dataclass(frozen=True)
class Disjoint:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotDisjoint:
    reason: str

    def __bool__(self) -> bool:
        return False


def alg_disjoint(a: SourceType, b: SourceType):
    if toplike(a) or toplike(b):
        return Disjoint()
    if isinstance(a, And):
        left = alg_disjoint(a.left, b)
        return left if not left else alg_disjoint(a.right, b)
    if isinstance(b, And):
        left = alg_disjoint(a, b.left)
        return left if not left else alg_disjoint(a, b.right)
    if isinstance(a, Arrow) and isinstance(b, Arrow):
        return alg_disjoint(a.codomain, b.codomain)
    if isinstance(a, Arrow):
        return alg_disjoint(a.codomain, b)
    if isinstance(b, Arrow):
        return alg_disjoint(a, b.codomain)
    if isinstance(a, IntTy) and isinstance(b, BoolTy) or isinstance(a, BoolTy) and isinstance(b, IntTy):
        return Disjoint()
    return NotDisjoint(f"both sides produce {pretty_print(a)}")
