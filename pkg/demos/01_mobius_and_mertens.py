"""
Sieving the Moebius function
============================

Build the mu / lambda table once, then read Mertens values straight out of it.
"""

# %%
import time

import numpy as np

from mobiuslab import oracles
from mobiuslab.arithmetic import mean_mobius, sieve_mobius

t0 = time.perf_counter()
table = sieve_mobius(10**7)
print(f"sieved 1..1e7 in {time.perf_counter() - t0:.2f}s")

# %% first few values, compared with trial division
print(table.mu[1:21])
print([oracles.mu_trial(n) for n in range(1, 21)])

# %% the Mertens function at powers of ten
for e in range(1, 8):
    N = 10**e
    print(f"M(10^{e}) = {int(table.mertens[N]):6d}   M/N = {mean_mobius(table, N): .2e}")

# M(N)/N shrinks to zero: the constant-function case of every average below.
# A second opinion on M(1e7) that never touches the sieve:
print("recursive M(1e7) =", oracles.mertens_recursive(10**7))

# %% squarefree density: mu^2 averages to 6/pi^2
sq = np.count_nonzero(table.mu[1:]) / table.limit
print(f"squarefree fraction {sq:.6f} vs 6/pi^2 = {6 / np.pi**2:.6f}")
