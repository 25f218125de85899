"""
mu-weighted ergodic averages over zero-entropy systems
======================================================

S_N(x, phi) = (1/N) sum_{n<=N} mu(n) phi(f^n x), tracked at log-spaced checkpoints.
"""

# %%
import numpy as np

from mobiuslab.analyzer import circle_cosine, distance_to, log_checkpoints, psi_U, s_average
from mobiuslab.arithmetic import sieve_mobius
from mobiuslab.systems import build_system, make_rotation
from mobiuslab.topology import FreeArc

table = sieve_mobius(10**6)
cps = log_checkpoints(10**6)
golden = (5**0.5 - 1) / 2

# %% rotation by the golden ratio
rot = make_rotation(golden)
x = rot.at(0.05)
for label, phi in [("psi_U", psi_U(rot.space, FreeArc(rot.space, 0, 0.1, 0.7))), ("cos", circle_cosine(rot))]:
    rep = s_average(table, rot, x, phi, cps)
    print(label, " ".join(f"{v:+.1e}" for v in rep.values))
    print("   decade envelope non-increasing:", rep.envelope_nonincreasing())

# %% a contracting dendrite map: the average collapses onto phi(o) M(N)/N
con = build_system("contracting-dendrite", {"rate": 0.5})
phi = distance_to(con.space, con.space.vertex_point(1))
rep = s_average(table, con, con.sample(np.random.default_rng(3)), phi, cps)
for N, v in zip(rep.checkpoints, rep.values):
    print(N, f"{v:+.3e}", f"{float(table.mertens[N]) / N:+.3e}")

# %% the CSV every run writes
print(rep.to_csv().splitlines()[:3])
