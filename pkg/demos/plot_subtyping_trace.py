"""
Reading a subtyping trace
=========================

The decision procedure alternates between goals ("is the environment a
subtype of B?") and lookups ("can this part of the environment be turned
into B?"). Each step carries its termination measure; every child is
smaller than its parent in the lexicographic order.
"""

from limp import alg_subtype_trace, parse_type
from limp.harness import check_trace
from limp.subtyping import format_trace
from limp.syntax import pretty_print
from limp.target import normalize

# %%
# One modus ponens step: the function component consumes the Int component.
coercion, trace = alg_subtype_trace(parse_type("Int & (Int -> Bool)"), parse_type("Bool"))
print(format_trace(trace))
print("coercion:", pretty_print(normalize(coercion.term)))

# %%
# Two arguments, so two A-MP steps. The queue records the arguments already
# found on the way down the function's codomains.
coercion, trace = alg_subtype_trace(parse_type("(Int -> Int -> Bool) & Int"), parse_type("Bool"))
print(format_trace(trace))
print("measure problems:", check_trace(trace) or "none")

# %%
# Function subtyping: contravariant domain, covariant codomain.
coercion, trace = alg_subtype_trace(parse_type("Int -> Bool"), parse_type("Int & Bool -> Bool & Top"))
for step in trace:
    print(f"{'  ' * step.state.depth}{step.rule:9} {pretty_print(step.state.left)} <: {pretty_print(step.state.right)}")
