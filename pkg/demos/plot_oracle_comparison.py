"""
Algorithm against the declarative rules
=======================================

The declarative rules (with transitivity and modus ponens) are closed over
a finite universe of types as boolean matrices, one round per derivation
height. The algorithm is then compared with that closure pair by pair.
"""

import numpy as np

from limp.harness import compare_subtyping
from limp.oracle import UNREACHED, DeclarativeTable, SearchBudget, enumerate_types

# %%
# Size of the universe by maximum type size.
for n in (1, 3, 5):
    print(n, len(enumerate_types(n)))

# %%
# The closure of all types up to size 3. ``depth`` holds the height of the
# shortest derivation, or a sentinel when none was found.
universe = enumerate_types(3)
table = DeclarativeTable(universe, max_fuel=8)
reached = table.depth[table.depth != UNREACHED]
heights, counts = np.unique(reached, return_counts=True)
print("saturated after", table.rounds, "rounds:", table.saturated)
for h, c in zip(heights, counts):
    print(f"height {h}: {c} pairs")

# %%
# Full agreement run at size 4 (size 5 is the acceptance run, about ten
# seconds more).
report = compare_subtyping(4, SearchBudget(fuel=8, universe_size=4))
print(report.summary())
