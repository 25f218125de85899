"""
Finite dendrites and the universal model
========================================

Points live on edges; arcs are unique on trees, and the address tree of the
universal dendrite shrinks geometrically.
"""

# %%
import numpy as np

from mobiuslab.topology import build_universal_dendrite, circle, random_point, star
from mobiuslab.topology.checks import run_topology_suite

s = star(3)
a, b = s.point(1, 0.5), s.point(2, 0.25)
arc = s.arc(a, b)
print("arc length", arc.length, "passes vertices", arc.vertices)
print("order of the center", s.order(s.vertex_point(0)), "order of a", s.order(a))

# %% on a circle the arc is not unique
c = circle(2)
try:
    c.arc(c.point(0, 0.1), c.point(1, 0.1))
except ValueError as exc:
    print(type(exc).__name__, exc)

# %% universal dendrite truncated at depth 3, letters with denominator <= 8
ud = build_universal_dendrite(3, 0.5, 8)
print(len(ud.tree.edges), "edges, total length", ud.tree.total_length, "expected", ud.expected_total_length())

# arcs shrink geometrically with address length
for w in ud.depth_words(2)[:3]:
    print(w, ud.arc_length(w), "attached at", ud.address_of(ud.a_point(w)))

# %% the whole battery of structural checks, as run by the suite
out = run_topology_suite(build_universal_dendrite(4, 0.5, 8), np.random.default_rng(1), samples=100)
for name, (cases, failures) in out.items():
    print(f"{name:28s} {cases:6d} cases {failures} failures")

rng = np.random.default_rng(2)
x, y, z = (random_point(s, rng) for _ in range(3))
print("triangle inequality:", s.distance(x, z) <= s.distance(x, y) + s.distance(y, z))
