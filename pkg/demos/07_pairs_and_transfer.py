"""
Pairs of orbits
===============

Asymptotic pairs have the same weighted averages in the limit; chaotic
pairs keep coming close and drifting apart.
"""

# %%
from mobiuslab.analyzer import asymptotic_transfer_check, distance_to, ergodic_bound_decomposition, pair_classify
from mobiuslab.arithmetic import sieve_mobius
from mobiuslab.systems import make_contracting_dendrite, make_rotation, make_tent
from mobiuslab.topology import star

table = sieve_mobius(10**5)
s = star(3)
con = make_contracting_dendrite(s, s.vertex_point(0), 0.5)

# %%
tent = make_tent(2.0)
print(pair_classify(tent, tent.at(0.3141592653589793), tent.at(0.3141592653589793 + 1e-7), 40, 0.1))
rot = make_rotation(0.618)
print(pair_classify(rot, rot.at(0.1), rot.at(0.4), 1000, 0.2).label)
print(pair_classify(con, s.point(1, 0.9), s.point(2, 0.3), 1000, 1e-9).label)

# %% transfer: the gap between the two averages
phi = distance_to(s, s.vertex_point(1))
tr = asymptotic_transfer_check(table, con, s.point(1, 0.9), s.point(2, 0.3), phi, (1000, 10_000, 100_000))
print("deviations", [f"{d:.1e}" for d in tr.deviations], "split holds:", tr.split_holds)

# %% |S_N| <= (1/N) sum |phi(f^n x) - phi(o)| + |phi(o)| |M(N)|/N
for r in ergodic_bound_decomposition(table, con, s.point(2, 0.7), phi, (1000, 10_000, 100_000)):
    print(r.N, f"{r.s_abs:.2e} <= {r.term1:.2e} + {r.term2:.2e}", r.holds)
