"""
Estimating topological entropy from separated sets
==================================================

Greedy (n, eps)-separated sets on a grid; the estimate is the slope of
log count against n.
"""

# %%
import numpy as np

from mobiuslab.analyzer import entropy_estimate, max_separated_bruteforce
from mobiuslab.suite import entropy_grid
from mobiuslab.systems import make_rotation, make_tent

rng = np.random.default_rng(5)
ns = list(range(1, 12))

# %% full tent map: counts roughly double with every step
tent = make_tent(2.0)
est = entropy_estimate(tent, ns, [0.2, 0.1], entropy_grid(tent, 10_000, rng))
for n in ns:
    print(n, est.counts[(n, 0.2)], est.counts[(n, 0.1)])
print(f"estimate {est.value:.3f} vs log 2 = {np.log(2):.3f}")

# %% an isometry separates nothing new
rot = make_rotation((5**0.5 - 1) / 2)
print("rotation:", entropy_estimate(rot, ns, [0.2, 0.1], entropy_grid(rot, 10_000, rng, "random")).value)

# %% greedy is a lower bound; on tiny grids we can afford the exact maximum
grid = [tent.sample(rng) for _ in range(12)]
greedy = entropy_estimate(tent, [3], [0.15], grid).counts[(3, 0.15)]
print("greedy", greedy, "exact", max_separated_bruteforce(tent, grid, 3, 0.15))
