"""
mu along progressions, and shifted correlations
===============================================
"""

# %%
from mobiuslab.arithmetic import (
    CorrelationQuery,
    GapSequenceSpec,
    chowla_sum,
    eventually_periodic_mean,
    progression_mean,
    sieve_mobius,
)

table = sieve_mobius(1_000_100)
N = 10**6

# %% (1/N) sum over n = a mod m of mu(n)
for m in (2, 3, 4, 5, 12):
    row = [progression_mean(table, N, a, m) for a in range(m)]
    print(m, " ".join(f"{v:+.1e}" for v in row))

# residue 0 mod 4 is identically zero: every such n has a square factor.

# %% an eventually periodic weight is a finite mix of progressions
print(eventually_periodic_mean(table, N, prefix=[5.0], cycle=[0.0, 1.0]))
print(progression_mean(table, N, 0, 2))  # the same tail, without the prefix term

# %% sparse weights: nonzero terms at least k apart
import numpy as np

rng = np.random.default_rng(0)
for k in (10, 100, 1000):
    spec = GapSequenceSpec.random(k, rng)
    x = spec.generate(N)
    print(k, abs(x.sum()) / N, "<=", 1 / k)

# %% correlations of mu with its own shifts
for shifts, exps in [((1,), (1, 1)), ((1, 2), (1, 1, 1)), ((2,), (1, 1))]:
    q = CorrelationQuery(shifts, exps, N)
    print(shifts, exps, f"{chowla_sum(table, q):+.2e}", f"liouville {chowla_sum(table, q, 'liouville'):+.2e}")
