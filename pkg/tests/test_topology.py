"""Trees, graphs, arcs, retractions and the universal dendrite model."""

import heapq
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobiuslab import oracles
from mobiuslab.errors import CapacityError, NonUniqueArcError, SpaceMismatchError
from mobiuslab.topology import (
    ROOT,
    DyadicAddress,
    MetricGraph,
    MetricTree,
    Subtree,
    arc,
    build_universal_dendrite,
    circle,
    concat,
    distance,
    dyadic_letters,
    first_point,
    graph_from_dict,
    interval,
    order,
    parent,
    random_point,
    random_tree,
    space_from_dict,
    star,
)
from mobiuslab.topology.checks import (
    check_address_algebra,
    check_arc_uniqueness,
    check_diameter_decay,
    check_retraction,
)


def _subdivided_distance(space, x, y):
    """Oracle: insert ``x`` and ``y`` as vertices and run a plain Dijkstra."""
    n = space.n_vertices
    adj = {v: [] for v in range(n + 2)}
    cuts = {}
    for node, p in ((n, x), (n + 1, y)):
        if p.vertex is not None:
            adj[node].append((p.vertex, 0.0))
            adj[p.vertex].append((node, 0.0))
        else:
            cuts.setdefault(p.edge, []).append((p.t, node))
    for e, (u, v, ln) in enumerate(space.edges):
        stops = [(0.0, u)] + sorted(cuts.get(e, [])) + [(1.0, v)]
        for (t0, a), (t1, b) in zip(stops, stops[1:]):
            adj[a].append((b, (t1 - t0) * ln))
            adj[b].append((a, (t1 - t0) * ln))
    dist = {n: 0.0}
    heap = [(0.0, n)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist.get(v, math.inf):
            continue
        for w, c in adj[v]:
            if d + c < dist.get(w, math.inf):
                dist[w] = d + c
                heapq.heappush(heap, (d + c, w))
    return dist[n + 1]


# --- construction --------------------------------------------------------------------


def test_tree_axioms_are_enforced():
    with pytest.raises(ValueError):
        MetricTree(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
    with pytest.raises(ValueError):
        MetricTree(3, [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        MetricTree(2, [(0, 1, 0.0)])
    with pytest.raises(ValueError):
        MetricGraph(3, [(0, 1, 1.0), (0, 1, 2.0)])  # vertex 2 unreachable
    t = random_tree(40, np.random.default_rng(0))
    assert len(t.edges) == t.n_vertices - 1
    assert all(t.degree(v) == len(t.adjacency[v]) for v in range(t.n_vertices))


def test_multi_edges_allowed_in_graphs():
    g = MetricGraph(2, [(0, 1, 1.0), (0, 1, 2.0)])
    assert distance(g, g.vertex_point(0), g.vertex_point(1)) == 1.0


def test_points_normalize_to_vertices():
    s = star(3)
    assert s.point(0, 0.0) == s.vertex_point(0)
    assert s.point(0, 1.0) == s.vertex_point(1)
    assert s.point(0, 0.5).vertex is None
    with pytest.raises(ValueError):
        s.point(0, 1.5)
    with pytest.raises(ValueError):
        s.point(7, 0.5)


def test_serialization_round_trip():
    t = random_tree(12, np.random.default_rng(3))
    back = graph_from_dict(t.to_dict())
    assert isinstance(back, MetricTree) and back.edges == t.edges
    ud = build_universal_dendrite(2, 0.5, 4)
    again = space_from_dict(ud.to_dict())
    assert again.tree.edges == ud.tree.edges
    c = graph_from_dict(circle(3).to_dict())
    assert isinstance(c, MetricGraph) and not isinstance(c, MetricTree)


# --- arcs and distances --------------------------------------------------------------


def test_degenerate_arc():
    s = star(3)
    x = s.point(1, 0.3)
    a = arc(s, x, x)
    assert a.is_degenerate and a.length == 0.0
    assert distance(s, x, x) == 0.0


def test_star_arc_passes_through_center():
    s = star(3)
    x, y = s.point(0, 0.5), s.point(1, 0.5)
    a = arc(s, x, y)
    assert a.length == 1.0
    assert a.vertices == (0,)
    assert a.contains(s.vertex_point(0))


def test_arc_reverses():
    t = random_tree(25, np.random.default_rng(1))
    rng = np.random.default_rng(2)
    for _ in range(50):
        x, y = random_point(t, rng), random_point(t, rng)
        fwd, back = arc(t, x, y), arc(t, y, x)
        assert back.length == pytest.approx(fwd.length, abs=1e-12)
        assert fwd.reversed().segments == back.segments


def test_sibling_arc_in_universal_dendrite_passes_both_attachment_points():
    ud = build_universal_dendrite(2, 0.5, 4)
    t = ud.tree
    alpha = DyadicAddress.of(Fraction(1, 2), Fraction(1, 4))
    beta = DyadicAddress.of(Fraction(1, 2), Fraction(3, 4))
    b_a, b_b = ud.b_point(alpha), ud.b_point(beta)
    path = arc(t, b_a, b_b)
    adjacency = {v: t.adjacency[v] for v in range(t.n_vertices)}
    routes = oracles.all_simple_paths(adjacency, b_a.vertex, b_b.vertex)
    assert len(routes) == 1
    assert set(routes[0]) == set(path.edges())
    for w in (alpha, beta):
        assert ud.arcs[w].a in path.vertices
    assert path.length == pytest.approx(2 * 0.25 + 0.5 * 0.5, abs=0)


def test_circle_antipodal_distance():
    c = circle(2)
    assert distance(c, c.vertex_point(0), c.vertex_point(1)) == 0.5
    assert distance(c, c.point(0, 0.5), c.point(1, 0.5)) == 0.5


def test_arc_rejected_on_cycles():
    c = circle(2)
    with pytest.raises(NonUniqueArcError) as exc:
        arc(c, c.point(0, 0.2), c.point(1, 0.7))
    assert exc.value.multiplicity == 2
    assert c.arc_multiplicity(c.point(0, 0.2), c.point(1, 0.7)) == 2


def test_points_from_different_spaces_rejected():
    a, b = star(3), star(3)
    with pytest.raises(SpaceMismatchError):
        distance(a, a.point(0, 0.5), b.point(0, 0.5))
    with pytest.raises(SpaceMismatchError):
        arc(a, a.point(0, 0.5), b.point(0, 0.5))


def test_random_tree_distances_match_subdivision_oracle():
    rng = np.random.default_rng(7)
    for _ in range(10):
        t = random_tree(int(rng.integers(2, 30)), rng)
        for _ in range(20):
            x, y = random_point(t, rng), random_point(t, rng)
            assert distance(t, x, y) == pytest.approx(_subdivided_distance(t, x, y), abs=1e-12)


def test_graph_distances_match_subdivision_oracle():
    rng = np.random.default_rng(8)
    g = MetricGraph(5, [(0, 1, 1.0), (1, 2, 0.7), (2, 0, 0.4), (2, 3, 1.1), (3, 4, 0.2), (4, 1, 2.5), (0, 1, 0.3)])
    for _ in range(100):
        x, y = random_point(g, rng), random_point(g, rng)
        assert distance(g, x, y) == pytest.approx(_subdivided_distance(g, x, y), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 25))
def test_tree_metric_axioms(seed, n):
    rng = np.random.default_rng(seed)
    t = random_tree(n, rng)
    x, y, z = (random_point(t, rng) for _ in range(3))
    dxy, dyz, dxz = distance(t, x, y), distance(t, y, z), distance(t, x, z)
    assert dxy == pytest.approx(distance(t, y, x), abs=1e-12)
    assert dxz <= dxy + dyz + 1e-12
    # in a tree the arc length is the distance
    assert arc(t, x, y).length == pytest.approx(dxy, abs=1e-12)


def test_arc_uniqueness_by_enumeration():
    rng = np.random.default_rng(11)
    t = random_tree(15, rng)
    for _ in range(1000):
        x, y = random_point(t, rng), random_point(t, rng)
        assert MetricGraph.arc_multiplicity(t, x, y) == 1
    cases, failures = check_arc_uniqueness(build_universal_dendrite(2, 0.5, 4), rng, 100)
    assert cases == 100 and failures == 0


# --- order -----------------------------------------------------------------------------


def test_order_examples():
    s = star(3)
    assert order(s, s.point(0, 0.4)) == 2
    assert order(s, s.vertex_point(0)) == 3
    assert order(s, s.vertex_point(2)) == 1
    c = circle(2)
    assert order(c, c.vertex_point(0)) == 2


def test_order_of_attachment_point_in_universal_dendrite():
    ud = build_universal_dendrite(1, 0.5, 2)  # one letter: 1/2
    child = DyadicAddress.of(Fraction(1, 2))
    a = ud.a_point(child)
    degree = sum(1 for u, v, _ in ud.tree.edges for end in (u, v) if end == a.vertex)
    assert degree == 3
    assert order(ud.tree, a) == 3
    assert order(ud.tree, ud.b_point(child)) == 1


# --- retraction ------------------------------------------------------------------------


def test_first_point_examples():
    s = star(3)
    A = Subtree.from_edges(s, [0])
    x = s.point(0, 0.3)
    assert first_point(s, A, x) == x
    assert first_point(s, A, s.point(1, 0.7)) == s.vertex_point(0)
    with pytest.raises(ValueError):
        Subtree.from_edges(s, [])
    t = random_tree(6, np.random.default_rng(0))
    leaves = t.endpoints()
    far = [e for e, (u, v, _) in enumerate(t.edges) if u in leaves or v in leaves]
    pairs = [(a, b) for a in far for b in far if a < b and not set(t.edges[a][:2]) & set(t.edges[b][:2])]
    if pairs:
        with pytest.raises(ValueError):
            Subtree.from_edges(t, pairs[0])


def test_first_point_matches_arc_intersection_oracle():
    rng = np.random.default_rng(5)
    for _ in range(15):
        t = random_tree(int(rng.integers(3, 25)), rng)
        root = int(rng.integers(0, t.n_vertices))
        # grow a connected subtree from a random vertex
        verts, edges = {root}, set()
        for _ in range(int(rng.integers(0, t.n_vertices))):
            e, w = t.adjacency[sorted(verts)[int(rng.integers(0, len(verts)))]][0]
            cand = [(f, u) for v in verts for f, u in t.adjacency[v] if u not in verts]
            if not cand:
                break
            e, w = cand[int(rng.integers(0, len(cand)))]
            verts.add(w)
            edges.add(e)
        A = Subtree.from_edges(t, edges) if edges else Subtree.from_vertex(t, root)
        anchors = [t.vertex_point(v) for v in A.vertices]
        for _ in range(20):
            x = random_point(t, rng)
            r = first_point(t, A, x)
            if A.contains(x):
                assert r == x
                continue
            # every arc from x into A first meets A at the same vertex
            hits = set()
            for a in anchors:
                path = arc(t, x, a)
                hits.add(next(v for v in path.vertices if v in A.vertices))
            assert hits == {r.vertex}


def test_retraction_properties_on_universal_dendrite():
    ud = build_universal_dendrite(3, 0.5, 4)
    cases, failures = check_retraction(ud, np.random.default_rng(9), 40, n_subtrees=6)
    assert cases > 200 and failures == 0


# --- dyadic addresses ------------------------------------------------------------------


def test_concat_and_parent_examples():
    half, three_q = DyadicAddress.of(Fraction(1, 2)), DyadicAddress.of(Fraction(3, 4))
    beta = concat(half, three_q)
    assert beta.fractions() == (Fraction(1, 2), Fraction(3, 4))
    assert len(beta) == 2
    assert concat(ROOT, beta) == beta
    assert parent(half) == ROOT
    assert parent(beta) == half
    with pytest.raises(ValueError):
        parent(ROOT)


def test_letter_validation():
    assert DyadicAddress.of((3, 3)).fractions() == (Fraction(3, 8),)
    for bad in ((2, 2), (5, 2), (1, 0), Fraction(1, 3), Fraction(1, 1)):
        with pytest.raises(ValueError):
            DyadicAddress.of(bad)


letters = st.builds(lambda q, k: Fraction(2 * k + 1, 2**q), st.integers(1, 6), st.integers(0, 31)).filter(lambda f: f < 1)
words = st.lists(letters, max_size=5).map(lambda rs: DyadicAddress(tuple(rs)))


@settings(max_examples=200, deadline=None)
@given(a=words, b=words, c=words, r=letters)
def test_address_algebra(a, b, c, r):
    assert concat(concat(a, b), c) == concat(a, concat(b, c))
    assert concat(ROOT, a) == a == concat(a, ROOT)
    assert len(concat(a, b)) == len(a) + len(b)
    assert parent(concat(a, DyadicAddress.of(r))) == a


def test_address_algebra_check_on_model():
    cases, failures = check_address_algebra(build_universal_dendrite(2, 0.5, 8), np.random.default_rng(4), 300)
    assert cases == 1800 and failures == 0


# --- universal dendrite ------------------------------------------------------------------


def test_depth_zero_is_a_single_arc():
    ud = build_universal_dendrite(0)
    assert ud.tree.n_vertices == 2 and len(ud.tree.edges) == 1
    assert ud.tree.total_length == 1.0


def test_depth_one_with_quarter_denominators():
    ud = build_universal_dendrite(1, 0.5, 4)
    kids = ud.depth_words(1)
    assert sorted(w.values()[0] for w in kids) == [0.25, 0.5, 0.75]
    # enumeration oracle: odd p / 2^q with q <= 2
    assert sorted(Fraction(p, 2**q) for q in (1, 2) for p in range(1, 2**q, 2)) == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    base = ud.arcs[ROOT]
    for w in kids:
        assert distance(ud.tree, ud.a_point(ROOT), ud.a_point(w)) == w.values()[0]
        assert ud.arc_length(w) == 0.5
    assert ud.tree.distance(ud.a_point(ROOT), ud.b_point(ROOT)) == base.length == 1.0


@pytest.mark.parametrize("m,D,lam", [(1, 4, 0.5), (2, 8, 0.5), (3, 4, 0.3), (4, 8, 0.5)])
def test_total_length_matches_summation(m, D, lam):
    ud = build_universal_dendrite(m, lam, D)
    q = len(dyadic_letters(D))
    assert ud.tree.total_length == pytest.approx(math.fsum(q**k * lam**k for k in range(m + 1)), rel=1e-12)


def test_truncations_are_nested():
    small, big = build_universal_dendrite(2, 0.5, 4), build_universal_dendrite(3, 0.5, 4)
    assert set(small.words) <= set(big.words)
    for w in small.words:
        assert small.arc_length(w) == big.arc_length(w)


def test_attachment_strictly_inside_parent():
    ud = build_universal_dendrite(3, 0.5, 4)
    for w in ud.words:
        if w == ROOT:
            continue
        pa = parent(w)
        along = distance(ud.tree, ud.a_point(pa), ud.a_point(w))
        assert 0.0 < along <= ud.arc_length(pa)
        assert along == w.last * ud.arc_length(pa)


def test_capacity_error_for_huge_models():
    with pytest.raises(CapacityError):
        build_universal_dendrite(12, 0.5, 64)
    with pytest.raises(ValueError):
        build_universal_dendrite(-1)
    with pytest.raises(ValueError):
        build_universal_dendrite(2, 1.5)


def test_diameter_decay_and_disjoint_levels():
    ud = build_universal_dendrite(4, 0.5, 8)
    cases, failures = check_diameter_decay(ud)
    assert failures == 0 and cases == len(ud.words) + 5
    diams = {k: max(ud.arc_length(w) for w in ud.depth_words(k)) for k in range(5)}
    assert [diams[k] for k in range(5)] == [0.5**k for k in range(5)]


@pytest.mark.parametrize("eps", [0.1, 0.01])
def test_small_distance_gives_small_arc(eps):
    rng = np.random.default_rng(21)
    for t in (random_tree(30, rng), build_universal_dendrite(3, 0.5, 4).tree, star(5)):
        delta = t.continuity_delta(eps)
        assert 0 < delta < eps
        hits = 0
        for _ in range(400):
            x = random_point(t, rng)
            # a partner at distance < delta along a random direction
            y = arc(t, x, random_point(t, rng)).point_at(float(rng.uniform(0, delta)))
            if distance(t, x, y) >= delta:
                continue
            hits += 1
            path = arc(t, x, y)
            samples = [path.point_at(s) for s in np.linspace(0, path.length, 9)]
            diam = max(distance(t, p, q) for p in samples for q in samples)
            assert diam < eps
        assert hits > 300
