"""Exact structural checks on a universal dendrite model.

Each check returns ``(cases, failures)``; everything is compared exactly,
which works because the default arc lengths and attachment fractions are
dyadic and therefore exact in binary floating point.
"""

from __future__ import annotations

from mobiuslab.topology.dyadic import ROOT, DyadicAddress, concat, parent
from mobiuslab.topology.graph import MetricGraph, random_point
from mobiuslab.topology.subsets import Subtree, first_point


def check_arc_uniqueness(model, rng, samples):
    """Exhaustive route enumeration finds exactly one arc, and it matches the tree fast path."""
    tree = model.tree
    cases = failures = 0
    for _ in range(samples):
        x, y = random_point(tree, rng), random_point(tree, rng)
        cases += 1
        if MetricGraph.arc_multiplicity(tree, x, y) != 1:
            failures += 1
            continue
        slow = MetricGraph.arc(tree, x, y)
        fast = tree.arc(x, y)
        if slow.segments != fast.segments or slow.length != fast.length:
            failures += 1
    return cases, failures


def _subtrees(model, rng, count):
    words = model.words
    out = []
    for _ in range(count):
        w = words[int(rng.integers(0, len(words)))]
        out.append(Subtree.from_edges(model.tree, model.arc_edges(w)))
        edges = [e for u in model.subtree_words(w) for e in model.arc_edges(u)]
        out.append(Subtree.from_edges(model.tree, edges))
    return out


def _arc_misses(tree, A, x, y):
    """True if the arc from ``x`` to ``y`` avoids ``A`` (so they share a component of X minus A)."""
    path = tree.arc(x, y)
    if any(v in A.vertices for v in path.vertices):
        return False
    return not any(e in A.edges for e, _, _ in path.segments)


def check_retraction(model, rng, samples, n_subtrees=10):
    """``r_A`` fixes ``A``, is idempotent, lands in ``A`` and is constant on components of X minus A."""
    tree = model.tree
    cases = failures = 0
    for A in _subtrees(model, rng, n_subtrees):
        pts = [random_point(tree, rng) for _ in range(samples)]
        images = [first_point(tree, A, x) for x in pts]
        for x, r in zip(pts, images):
            cases += 1
            ok = A.contains(r) and first_point(tree, A, r) == r
            if A.contains(x):
                ok = ok and r == x
            failures += not ok
        for i in range(0, len(pts) - 1, 2):
            x, y = pts[i], pts[i + 1]
            if A.contains(x) or A.contains(y) or not _arc_misses(tree, A, x, y):
                continue
            cases += 1
            failures += images[i] != images[i + 1]
        # pairs forced into one component: x and a point between x and r_A(x)
        for x, r in zip(pts, images):
            if A.contains(x):
                continue
            path = tree.arc(x, r)
            y = path.point_at(0.5 * path.length)
            if A.contains(y):
                continue
            cases += 1
            failures += first_point(tree, A, y) != r
    return cases, failures


def check_address_algebra(model, rng, samples):
    """Concatenation is associative with the empty word as identity, lengths add, parent undoes a letter."""
    letters = list(model.letters)
    cases = failures = 0

    def word():
        k = int(rng.integers(0, 4))
        out = ROOT
        for _ in range(k):
            out = concat(out, letters[int(rng.integers(0, len(letters)))])
        return out

    for _ in range(samples):
        a, b, c = word(), word(), word()
        r = letters[int(rng.integers(0, len(letters)))]
        checks = (
            concat(concat(a, b), c) == concat(a, concat(b, c)),
            concat(ROOT, a) == a == concat(a, ROOT),
            len(concat(a, b)) == len(a) + len(b),
            parent(concat(a, r)) == a,
            DyadicAddress(a.fractions()) == a,
            (a == b) == (a.fractions() == b.fractions()),
        )
        cases += len(checks)
        failures += sum(not ok for ok in checks)
    return cases, failures


def check_diameter_decay(model):
    """``diam(A_w) = decay**|w|`` for every arc, and same-depth arcs are pairwise disjoint."""
    tree = model.tree
    cases = failures = 0
    by_depth = {}
    for w in model.words:
        cases += 1
        a, b = model.a_point(w), model.b_point(w)
        want = model.decay ** len(w)
        failures += not (tree.distance(a, b) == want == tree.arc(a, b).length)
        info = model.arcs[w]
        verts = {info.a, info.b} | {tree.edges[e][0] for e in info.edges} | {tree.edges[e][1] for e in info.edges}
        by_depth.setdefault(len(w), []).append(verts)
    for k, sets in by_depth.items():
        cases += 1
        seen = set()
        clash = False
        for s in sets:
            if seen & s:
                clash = True
            seen |= s
        failures += clash
    return cases, failures


def run_topology_suite(model, rng, samples=200):
    return {
        "arc_uniqueness": check_arc_uniqueness(model, rng, samples),
        "retraction": check_retraction(model, rng, samples // 4 or 1),
        "address_algebra": check_address_algebra(model, rng, samples),
        "diameter_decay": check_diameter_decay(model),
    }
