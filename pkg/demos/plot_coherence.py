"""
Testing coherence
=================

A subtyping judgment may have several derivations, hence several
coercions. Coherence says they cannot be told apart. Here every sampled
coercion is applied to a probe value and the ground results are compared.
"""

from limp import SearchBudget, parse_type
from limp.harness import coercions_for, coherence_scan, well_formed
from limp.oracle import enumerate_types
from limp.syntax import pretty_print
from limp.target import apply_value, canonical_value, eval_term, observe, show_path, show_value

# %%
# Two ways to get an Int out of ``Int & Int``.
a, b = parse_type("Int & Int"), parse_type("Int")
for c in coercions_for(a, b, SearchBudget()):
    out = apply_value(eval_term(c.term), canonical_value(a))
    print(pretty_print(c.term), "->", show_value(out))

# %%
# Observations at a function type apply it to the canonical argument.
a, b = parse_type("Int & (Int -> Bool)"), parse_type("Bool & (Int -> Bool)")
for c in coercions_for(a, b, SearchBudget()):
    out = apply_value(eval_term(c.term), canonical_value(a))
    print([f"{show_path(p)}={show_value(v)}" for p, v in observe(out, b)])

# %%
# The canonical probes give every Int the same value, which is why the
# projections above agree. Probes with distinct leaves are sharper, but only
# meaningful on types a program can actually build.
print(coherence_scan(3, probe="distinct", types=[parse_type("Int & Int"), parse_type("Int")]).summary())
types = [t for t in enumerate_types(3) if well_formed(t)]
print(coherence_scan(3, probe="distinct", types=types).summary())

# %%
# The acceptance run.
print(coherence_scan(4, SearchBudget(fuel=8, universe_size=4, max_coercions=8)).summary())
