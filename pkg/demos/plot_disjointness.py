"""
Which merges are allowed
========================

A merge needs disjoint parts. With modus ponens a function ``A -> B`` can
produce a ``B``, so it overlaps with ``B`` itself. The bounded search for a
shared output agrees with the syntactic rules.
"""

from limp import alg_disjoint, parse_type, spec_disjoint
from limp.harness import run_source
from limp.syntax import pretty_print

pairs = [
    ("Int", "Bool"),
    ("Int", "Int -> Bool"),
    ("Int", "Int -> Int"),
    ("Int -> Int", "Bool -> Int"),
    ("Int & Bool", "Top"),
    ("Bool", "Int -> Int -> Bool"),
]

# %%
for left, right in pairs:
    a, b = parse_type(left), parse_type(right)
    verdict = alg_disjoint(a, b)
    search = spec_disjoint(a, b)
    witness = getattr(search, "witness", None)
    shown = f"both produce {pretty_print(witness)}" if witness else type(search).__name__
    print(f"{left:12} * {right:20} {'yes' if verdict else 'no':4} {shown}")

# %%
# An environment holding an Int and an Int -> Int would answer a request for
# an Int two ways (return 2, or apply the function to 2), so it is rejected.
try:
    run_source(r"(2 ,, ((\x . x) : Int -> Int)) : Int")
except Exception as err:
    print(type(err).__name__ + ":", err)
