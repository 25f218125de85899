"""
Solenoidal systems: splitting the sum by level intervals
========================================================
"""

# %%
import numpy as np

from mobiuslab.analyzer import solenoid_case_split
from mobiuslab.arithmetic import sieve_mobius
from mobiuslab.suite import straddling_region
from mobiuslab.systems import make_nested_decomposition, make_solenoid

table = sieve_mobius(10**6)
rng = np.random.default_rng(4)

sol = make_solenoid([2, 4, 8, 16])
x = sol.sample(rng)
U = straddling_region(sol, 4, rng, through=sol.step(x))
sp = solenoid_case_split(table, sol, x, U, 4, (10**4, 10**5, 10**6))

# %% each level-4 interval is inside U, outside it, or cut by its boundary
for r in sp.rows:
    print(r.component, r.case, r.visits, f"{r.contribution:+.2e}")
print("straddling:", sp.straddling_count, " total:", f"{sp.total:+.2e}", " bound:", sp.bound)

# %% nested decomposition (2, 3, 2): the itinerary is a progression mod 12
nd = make_nested_decomposition((2, 3, 2))
y = nd.sample(rng)
print([nd.piece_index(p, 3) for p in nd.orbit(y, 25)])
