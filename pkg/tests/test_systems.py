"""Catalog systems: closed forms, combinatorial structure and sampled invariants."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobiuslab.systems import (
    KNOWN_TAGS,
    OdometerState,
    UnknownSystemError,
    build_system,
    iterate,
    make_contracting_dendrite,
    make_interval_map,
    make_monotone_dendrite,
    make_nested_decomposition,
    make_odometer,
    make_periodic,
    make_rotation,
    make_solenoid,
    make_tent,
    sample_points,
)
from mobiuslab.topology import FreeArc, MetricTree, interval, random_point, star

GOLDEN = (5**0.5 - 1) / 2


def catalog():
    s4 = star(4)
    line = interval()
    return [
        make_rotation(GOLDEN),
        make_tent(2.0),
        make_tent(0.8),
        make_interval_map([0, 0.5, 1], [0, 1, 0]),
        make_odometer([2, 3, 5]),
        make_nested_decomposition([2, 3, 2]),
        make_solenoid([2, 4, 8]),
        make_monotone_dendrite(star(3), [1, 2, 0], lambda u: 0.5 * u),
        make_contracting_dendrite(s4, s4.point(1, 0.3), 0.5),
        make_periodic(line, [line.point(0, 0.25), line.point(0, 0.75), line.vertex_point(1)]),
    ]


# --- iteration -------------------------------------------------------------------------


def test_iterate_zero_is_identity():
    for sys in catalog():
        x = sys.sample(np.random.default_rng(0))
        assert iterate(sys, x, 0) == x
    with pytest.raises(ValueError):
        iterate(make_tent(2.0), make_tent(2.0).at(0.3), -1)


def test_rotation_closed_form():
    theta = 0.1234567
    r = make_rotation(theta)
    x = r.at(0.3)
    for n in (1, 5, 17, 1000):
        s = r.coordinate(iterate(r, x, n))
        want = (0.3 + n * theta) % 1.0
        assert min(abs(s - want), 1 - abs(s - want)) < 1e-9


def test_tent_three_steps_from_point_three():
    t = make_tent(2.0)
    x = 0.3
    for _ in range(3):
        x = 2.0 * min(x, 1.0 - x)
    assert t.coordinate(iterate(t, t.at(0.3), 3)) == x == pytest.approx(0.4)


@settings(max_examples=100, deadline=None)
@given(which=st.integers(0, 9), seed=st.integers(0, 2**32 - 1), n=st.integers(0, 40), m=st.integers(0, 40))
def test_semigroup_law(which, seed, n, m):
    sys = catalog()[which]
    x = sys.sample(np.random.default_rng(seed))
    a = iterate(sys, x, n + m)
    b = iterate(sys, iterate(sys, x, n), m)
    assert sys.distance(a, b) <= 1e-9


def test_iter_orbit_matches_step():
    rng = np.random.default_rng(3)
    for sys in catalog():
        x = sys.sample(rng)
        fast = sys.orbit(x, 60)
        y = x
        for k in range(61):
            assert sys.distance(fast[k], y) <= 1e-9, (sys, k)
            y = sys.step(y)


@pytest.mark.slow
def test_orbits_stay_in_space():
    rng = np.random.default_rng(4)
    for sys in catalog():
        for _ in range(100):
            x = sys.sample(rng)
            for p in sys.orbit(x, 1000):
                sys.space.check(p)
                if p.vertex is None:
                    assert 0.0 < p.t < 1.0
                    assert 0 <= p.edge < len(sys.space.edges)


def test_deterministic():
    for sys in catalog():
        x = sys.sample(np.random.default_rng(5))
        assert sys.orbit(x, 50) == sys.orbit(x, 50)


# --- periodic --------------------------------------------------------------------------


def test_periodic_examples():
    line = interval()
    p = line.point(0, 0.4)
    one = make_periodic(line, [p])
    assert one.orbit(p, 5) == [p] * 6
    q = line.point(0, 0.9)
    two = make_periodic(line, [p, q])
    assert two.orbit(p, 4) == [p, q, p, q, p]
    with pytest.raises(ValueError):
        make_periodic(line, [p, line.point(0, 0.4)])
    with pytest.raises(ValueError):
        make_periodic(line, [])
    # off-orbit points snap onto the orbit
    assert two.step(line.point(0, 0.85)) == q


# --- rotation --------------------------------------------------------------------------


def test_rotation_special_angles():
    rng = np.random.default_rng(6)
    ident, half = make_rotation(0.0), make_rotation(0.5)
    for _ in range(20):
        x = ident.sample(rng)
        assert ident.distance(ident.step(x), x) <= 1e-12
        y = half.sample(rng)
        assert half.distance(iterate(half, y, 2), y) <= 1e-12
        assert half.distance(half.step(y), y) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ValueError):
        make_rotation(1.0)


def test_golden_rotation_equidistributes():
    r = make_rotation(GOLDEN)
    N = 100_000
    s = np.sort(np.array([r.coordinate(p) for p in r.orbit(r.at(0.0), N - 1)]))
    i = np.arange(1, N + 1)
    star_discrepancy = max(np.max(i / N - s), np.max(s - (i - 1) / N))
    assert star_discrepancy < 1e-2


# --- tent ------------------------------------------------------------------------------


def test_tent_small_slope_goes_to_zero():
    t = make_tent(0.9)
    rng = np.random.default_rng(7)
    for _ in range(20):
        assert t.coordinate(iterate(t, t.sample(rng), 400)) < 1e-15


def test_tent_one_third():
    t = make_tent(2.0)
    x = Fraction(1, 3)
    xs = [x]
    for _ in range(3):
        x = 2 * min(x, 1 - x)
        xs.append(x)
    assert xs == [Fraction(1, 3), Fraction(2, 3), Fraction(2, 3), Fraction(2, 3)]
    # in floating point 2/3 is not exactly fixed, so only the first steps are exact
    orb = [t.coordinate(p) for p in t.orbit(t.at(1 / 3), 3)]
    assert orb[:3] == pytest.approx([1 / 3, 2 / 3, 2 / 3], abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(bits=st.integers(1, 2**52 - 1))
def test_full_tent_matches_binary_coding(bits):
    """With x = 0.a1 a2 ... in binary, f^n(x) = 0.(a_{n+1} xor a_n)(a_{n+2} xor a_n)..."""
    t = make_tent(2.0)
    width = 52
    a = [0] + [(bits >> (width - k)) & 1 for k in range(1, width + 1)]  # a[0] = 0
    x = bits / 2**width
    orbit = [t.coordinate(p) for p in t.orbit(t.at(x), 30)]
    for n in range(31):
        digits = [a[n + k] ^ a[n] for k in range(1, width - n + 1)]
        # past the last binary digit the expansion continues with a_n forever
        val = sum(Fraction(d, 2**k) for k, d in enumerate(digits, start=1)) + Fraction(a[n], 2 ** (width - n))
        assert orbit[n] == float(val)
        assert (orbit[n] >= 0.5) == bool(a[n + 1] ^ a[n])


def test_tent_rejects_bad_slopes():
    for s in (0.0, -1.0, 2.5):
        with pytest.raises(ValueError):
            make_tent(s)


def test_interval_map_validation():
    with pytest.raises(ValueError):
        make_interval_map([0, 1], [0, 1.5])
    with pytest.raises(ValueError):
        make_interval_map([0.1, 1], [0, 1])


# --- odometer --------------------------------------------------------------------------


def test_odometer_state_wraps():
    s = OdometerState((1, 2, 4), (2, 3, 5))
    assert s.add_one() == OdometerState((0, 0, 0), (2, 3, 5))
    assert OdometerState.from_value(17, (2, 3, 5)).value() == 17
    with pytest.raises(ValueError):
        OdometerState((2,), (2,))


def test_odometer_base_two_alternates():
    odo = make_odometer([2])
    zero = odo.leaf_point(OdometerState((0,), (2,)), 0.5)
    states = [odo.state_of(p).digits for p in odo.orbit(zero, 5)]
    assert states == [(0,), (1,), (0,), (1,), (0,), (1,)]


def test_odometer_two_three_visits_six_states():
    odo = make_odometer([2, 3])
    x = odo.leaf_point(OdometerState((0, 0), (2, 3)), 0.5)
    orbit = odo.orbit(x, 6)
    values = [odo.state_of(p).value() for p in orbit]
    assert values == [0, 1, 2, 3, 4, 5, 0]
    assert len({odo.state_of(p) for p in orbit[:6]}) == 6


def test_odometer_truncated_visits_are_uniform():
    odo = make_odometer([2, 3, 5])
    x = odo.sample(np.random.default_rng(8))
    orbit = odo.orbit(x, 2 * odo.period - 1)
    for level in (1, 2, 3):
        counts = np.bincount([odo.piece_index(p, level) for p in orbit], minlength=odo.return_time(level))
        assert set(counts.tolist()) == {2 * odo.period // odo.return_time(level)}


def test_odometer_validation():
    with pytest.raises(ValueError):
        make_odometer([])
    with pytest.raises(ValueError):
        make_odometer([2, 4])


def test_odometer_is_continuous_on_its_dendrite():
    odo = make_odometer([2, 3])
    rng = np.random.default_rng(9)
    for _ in range(200):
        x = random_point(odo.space, rng)
        y = odo.space.point(x.edge, min(1.0, x.t + 1e-7)) if x.vertex is None else x
        assert odo.distance(odo.step(x), odo.step(y)) <= 1e-6


# --- solenoid --------------------------------------------------------------------------


def test_solenoid_two_four_structure():
    sol = make_solenoid([2, 4])
    top, sub = sol.components(1), sol.components(2)
    assert len(top) == 2 and len(sub) == 4
    for c, (lo, hi) in sub.items():
        plo, phi_ = top[c % 2]
        assert plo <= lo < hi <= phi_
    x = sol.sample(np.random.default_rng(0))
    itin = [sol.component_index(p, 2) for p in sol.orbit(x, 8)]
    assert itin[4:] == itin[:5] and len(set(itin[:4])) == 4


def test_solenoid_level_three_is_the_eight_cycle():
    sol = make_solenoid([2, 4, 8])
    x = sol.space.point(0, sol.components(3)[0][0] + 0.5 * sol.width)
    itin = [sol.component_index(p, 3) for p in sol.orbit(x, 16)]
    assert itin == [n % 8 for n in range(17)]
    # each level is the truncation of the same dyadic odometer
    for level, k in ((1, 2), (2, 4)):
        assert [sol.component_index(p, level) for p in sol.orbit(x, 16)] == [n % k for n in range(17)]


def test_solenoid_depth_one_is_a_cycle_of_arcs():
    sol = make_solenoid([3])
    x = sol.sample(np.random.default_rng(1))
    orbit = sol.orbit(x, 3)
    assert sol.distance(orbit[3], x) <= 1e-12
    assert len({sol.component_index(p, 1) for p in orbit[:3]}) == 3


def test_solenoid_validation():
    for bad in ([2, 5], [2, 2], [1], []):
        with pytest.raises(ValueError):
            make_solenoid(bad)


@pytest.mark.parametrize("levels", [[2, 4, 8, 16], [3, 6, 12], [2, 6, 30]])
def test_solenoid_visit_gaps_equal_k(levels):
    sol = make_solenoid(levels)
    rng = np.random.default_rng(2)
    for _ in range(5):
        x = sol.sample(rng)
        orbit = sol.orbit(x, 4 * levels[-1])
        for j, k in enumerate(levels, start=1):
            for c in range(k):
                times = [n for n, p in enumerate(orbit) if sol.component_index(p, j) == c]
                assert np.all(np.diff(times) == k)


# --- monotone dendrite maps ------------------------------------------------------------


def test_monotone_identity():
    s = star(3)
    sys = make_monotone_dendrite(s)
    rng = np.random.default_rng(3)
    for _ in range(30):
        x = random_point(s, rng)
        assert sys.step(x) == x


def test_monotone_cyclic_branches():
    s = star(3)
    sys = make_monotone_dendrite(s, [1, 2, 0])
    center = s.vertex_point(0)
    assert sys.step(center) == center
    rng = np.random.default_rng(4)
    for _ in range(30):
        x = random_point(s, rng)
        branches = [sys.radial(p)[0] for p in sys.orbit(x, 9)]
        assert branches[3:] == branches[:-3]
        assert len(set(branches[:3])) == 3
        assert sys.distance(iterate(sys, x, 3), x) <= 1e-12


def test_monotone_contraction_converges_to_center():
    s = star(3)
    sys = make_monotone_dendrite(s, [1, 2, 0], lambda u: 0.5 * u)
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = random_point(s, rng)
        assert s.distance(iterate(sys, x, 60), s.vertex_point(0)) < 1e-15


def test_monotone_rejects_incompatible_structure():
    uneven = star(3)
    lopsided = MetricTree(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 2.0)])
    with pytest.raises(ValueError):
        make_monotone_dendrite(lopsided, [2, 1, 0])
    with pytest.raises(ValueError):
        make_monotone_dendrite(uneven, [0, 0, 1])
    with pytest.raises(ValueError):
        make_monotone_dendrite(uneven, None, lambda u: 1.0 - u)


def test_monotone_preimages_of_subarcs_are_connected():
    s = star(3)
    sys = make_monotone_dendrite(s, [1, 2, 0], lambda u: u * u)
    rng = np.random.default_rng(6)
    grid = np.linspace(0.0, 1.0, 401)[1:-1]
    for _ in range(30):
        e = int(rng.integers(0, 3))
        lo, hi = np.sort(rng.uniform(0, 1, 2))
        J = FreeArc(s, e, float(lo), float(hi))
        runs = {}
        for f in range(3):
            mask = [J.locate(sys.step(s.point(f, float(t)))) == "inside" for t in grid]
            idx = np.nonzero(mask)[0]
            if idx.size:
                # one contiguous run on each edge (interval test)
                assert idx[-1] - idx[0] + 1 == idx.size
                runs[f] = (idx[0], idx[-1])
        # a subarc inside one branch pulls back into one branch
        assert len(runs) <= 1


# --- contracting dendrite ----------------------------------------------------------------


def test_contracting_examples():
    s = star(3)
    o = s.vertex_point(0)
    sys = make_contracting_dendrite(s, o, 0.5)
    assert sys.step(o) == o
    x = s.vertex_point(1)
    assert s.distance(o, iterate(sys, x, 3)) == 0.125
    with pytest.raises(ValueError):
        make_contracting_dendrite(s, o, 1.0)


def test_contracting_geometric_decay():
    rng = np.random.default_rng(7)
    s = star(4)
    # o at the center: points are stored as (edge, t) with t measured from o, so no resolution is lost
    center = s.vertex_point(0)
    for rate in (0.5, 0.9):
        sys = make_contracting_dendrite(s, center, rate)
        for _ in range(20):
            x = random_point(s, rng)
            d0 = s.distance(center, x)
            for n, p in enumerate(sys.orbit(x, 60)):
                assert s.distance(center, p) == pytest.approx(rate**n * d0, rel=1e-9)


def test_contracting_geometric_decay_interior_fixed_point():
    # with o inside an edge, |t - t_o| carries an absolute error of one ulp of t_o,
    # so the relative check is only meaningful while the distance is well above that
    rng = np.random.default_rng(8)
    s = star(4)
    o = s.point(2, 0.3)
    for rate in (0.5, 0.9):
        sys = make_contracting_dendrite(s, o, rate)
        for _ in range(20):
            x = random_point(s, rng)
            d0 = s.distance(o, x)
            for n, p in enumerate(sys.orbit(x, 200)):
                want = rate**n * d0
                if want < 1e-6:
                    break
                assert s.distance(o, p) == pytest.approx(want, rel=1e-9)


def test_contracting_birkhoff_average_vanishes():
    s = star(3)
    o = s.vertex_point(0)
    sys = make_contracting_dendrite(s, o, 0.5)
    x = s.vertex_point(2)
    N = 10_000
    avg = math.fsum(s.distance(o, p) for p in sys.orbit(x, N)[1:]) / N
    # sum of 2^-n is 1, so the mean is 1/N up to rounding
    assert avg == pytest.approx(1.0 / N, rel=1e-9)


# --- nested decomposition ----------------------------------------------------------------


def test_nested_single_level_swaps_two_pieces():
    sys = make_nested_decomposition([2])
    x = sys.sample(np.random.default_rng(8))
    assert [sys.piece_index(p, 1) for p in sys.orbit(x, 4)] == [(sys.piece_index(x, 1) + n) % 2 for n in range(5)]


def test_nested_two_by_two():
    sys = make_nested_decomposition([2, 2])
    assert sys.return_time(1) == 2 and sys.return_time(2) == 4
    words2 = [sys.piece_words(2, i) for i in range(4)]
    words1 = [set(sys.piece_words(1, i)) for i in range(2)]
    for i, w in enumerate(words2):
        # level-2 piece i sits inside level-1 piece i mod 2
        assert set(w) <= words1[i % 2]
    assert words1[0].isdisjoint(words1[1])
    x = sys.sample(np.random.default_rng(9))
    s0 = sys.piece_index(x, 2)
    assert [sys.piece_index(p, 2) for p in sys.orbit(x, 8)] == [(s0 + n) % 4 for n in range(9)]


def test_nested_itinerary_is_an_arithmetic_progression():
    sys = make_nested_decomposition([2, 3, 2])
    rng = np.random.default_rng(10)
    for _ in range(3):
        x = sys.sample(rng)
        orbit = sys.orbit(x, 2000)
        for level, alpha in ((1, 2), (2, 6), (3, 12)):
            s0 = sys.piece_index(x, level)
            for s in range(alpha):
                times = [n for n, p in enumerate(orbit) if sys.piece_index(p, level) == s]
                assert times == list(range((s - s0) % alpha, 2001, alpha))


def test_nested_validation():
    with pytest.raises(ValueError):
        make_nested_decomposition([1, 2])
    with pytest.raises(ValueError):
        make_nested_decomposition([])


# --- registry ----------------------------------------------------------------------------


def test_unknown_tag_lists_known_tags():
    with pytest.raises(UnknownSystemError) as exc:
        build_system("bakers-map")
    for tag in KNOWN_TAGS:
        assert tag in str(exc.value)


def test_every_tag_builds():
    params = {
        "constant": {},
        "periodic": {"points": [[0, 0.25], [0, 0.75]]},
        "rotation": {"theta": "golden"},
        "interval": {"knots_x": [0, 1], "knots_y": [1, 0]},
        "tent": {"s": 1.5},
        "odometer": {"primes": [2, 3]},
        "solenoid": {"levels": [2, 4]},
        "monotone-dendrite": {"perm": [1, 2, 0], "contraction": 0.5},
        "contracting-dendrite": {"rate": 0.25},
        "nested": {"n": [2, 3]},
    }
    assert set(params) == set(KNOWN_TAGS)
    rng = np.random.default_rng(11)
    for tag, p in params.items():
        sys = build_system(tag, p)
        x = sys.sample(rng)
        sys.space.check(sys.step(x))


def test_sample_points_uses_the_generator():
    sys = make_rotation(GOLDEN)
    a = sample_points(sys, 5, np.random.default_rng(1))
    b = sample_points(sys, 5, np.random.default_rng(1))
    assert a == b
