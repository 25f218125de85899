"""Concrete systems, one per structure class of omega-limit sets."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from mobiuslab.oracles import factorize
from mobiuslab.systems.base import DynSystem
from mobiuslab.topology.dendrite import ArcDendrite
from mobiuslab.topology.graph import POINT_TOL, circle, interval, random_point


# periodic orbits and constants


class PeriodicSystem(DynSystem):
    """Cycles ``points[0] -> points[1] -> ... -> points[0]``.

    Off-orbit points are sent to the nearest orbit point (lowest index on
    ties), so every orbit is eventually periodic.  The map is not continuous
    off the orbit; only the orbit itself is meant to be studied.
    """

    descriptor = "periodic"

    def __init__(self, space, points):
        points = list(points)
        if not points:
            raise ValueError("need at least one orbit point")
        space.check(*points)
        for i, p in enumerate(points):
            for q in points[:i]:
                if space.same_point(p, q):
                    raise ValueError(f"duplicate orbit point {p!r}")
        super().__init__(space, {"m": len(points)})
        self.points = points
        self._index = {p: i for i, p in enumerate(points)}

    def step(self, x):
        i = self._index.get(x)
        if i is None:
            i = self.nearest(x)
            return self.points[i]
        return self.points[(i + 1) % len(self.points)]

    def nearest(self, x):
        d = [self.space.distance(x, p) for p in self.points]
        i = min(range(len(d)), key=lambda j: (d[j], j))
        return i


def make_periodic(space, points):
    return PeriodicSystem(space, points)


class ConstantSystem(DynSystem):
    descriptor = "constant"

    def __init__(self, space, target):
        space.check(target)
        super().__init__(space, {}, fixed_point=target)
        self.target = target

    def step(self, x):
        return self.target


def make_constant(space, target):
    return ConstantSystem(space, target)


# circle and interval


class RotationSystem(DynSystem):
    """``s -> s + theta mod 1`` on the unit circle modelled as two arcs of length 1/2."""

    descriptor = "rotation"

    def __init__(self, theta):
        theta = float(theta)
        if not 0.0 <= theta < 1.0:
            raise ValueError("theta must lie in [0, 1)")
        super().__init__(circle(2), {"theta": theta})
        self.theta = theta

    def coordinate(self, x):
        if x.vertex is not None:
            return 0.5 * x.vertex
        return 0.5 * (x.edge + x.t)

    def at(self, s):
        s = float(s) % 1.0
        if s < 0.5:
            return self.space.point(0, 2.0 * s)
        return self.space.point(1, 2.0 * s - 1.0)

    def step(self, x):
        self.space.check(x)
        return self.at(self.coordinate(x) + self.theta)

    def iter_orbit(self, x):
        s0 = self.coordinate(x)
        yield x
        k = 1
        while True:
            yield self.at(s0 + k * self.theta)
            k += 1


def make_rotation(theta):
    return RotationSystem(theta)


class IntervalMap(DynSystem):
    """A map of ``[0, 1]`` (one edge, coordinate ``t``) given by a Python function."""

    descriptor = "interval"

    def __init__(self, fn, params=None, space=None):
        super().__init__(space or interval(), params)
        self._fn = fn

    def coordinate(self, x):
        if x.vertex is not None:
            return float(x.vertex)
        return x.t

    def at(self, t):
        return self.space.point(0, min(1.0, max(0.0, t)))

    def step(self, x):
        self.space.check(x)
        return self.at(self._fn(self.coordinate(x)))


def make_interval_map(knots_x, knots_y):
    """Piecewise-linear continuous self-map of ``[0, 1]`` through the given knots."""
    xs = [float(v) for v in knots_x]
    ys = [float(v) for v in knots_y]
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need matching knot lists of length >= 2")
    if xs[0] != 0.0 or xs[-1] != 1.0 or any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("knots_x must increase from 0 to 1")
    if any(not 0.0 <= y <= 1.0 for y in ys):
        raise ValueError("knots_y must lie in [0, 1]")
    return IntervalMap(lambda t: float(np.interp(t, xs, ys)), {"knots": len(xs)})


class TentSystem(IntervalMap):
    """``t -> s * min(t, 1 - t)``.

    For ``s = 2`` floating-point orbits of dyadic rationals are exact but
    every float orbit reaches 0 within ~1100 steps, so long horizons only
    make sense for ``s < 2``.
    """

    descriptor = "tent"

    def __init__(self, slope):
        slope = float(slope)
        if not 0.0 < slope <= 2.0:
            raise ValueError("slope must lie in (0, 2]")
        self.slope = slope
        super().__init__(lambda t: slope * min(t, 1.0 - t), {"s": slope})


def make_tent(slope):
    return TentSystem(slope)


# adding machines on dendrites


@dataclass(frozen=True)
class OdometerState:
    """Digits ``d_i in {0, ..., s_i - 1}``; adding one carries from the first digit."""

    digits: tuple
    bases: tuple

    def __post_init__(self):
        if len(self.digits) != len(self.bases):
            raise ValueError("digits and bases differ in length")
        for d, s in zip(self.digits, self.bases):
            if s < 2 or not 0 <= d < s:
                raise ValueError(f"digit {d} out of range for base {s}")

    def add_one(self):
        digits = list(self.digits)
        for i, s in enumerate(self.bases):
            digits[i] += 1
            if digits[i] < s:
                break
            digits[i] = 0
        return OdometerState(tuple(digits), self.bases)

    def value(self):
        """Mixed-radix value ``d_1 + s_1 d_2 + s_1 s_2 d_3 + ...``."""
        v, scale = 0, 1
        for d, s in zip(self.digits, self.bases):
            v += d * scale
            scale *= s
        return v

    @classmethod
    def from_value(cls, v, bases):
        digits = []
        for s in bases:
            v, d = divmod(v, s)
            digits.append(d)
        return cls(tuple(digits), tuple(bases))


def _add_one(word, bases):
    digits = list(word)
    for i in range(len(digits)):
        digits[i] += 1
        if digits[i] < bases[i]:
            break
        digits[i] = 0
    return tuple(digits)


class AddingMachineDendrite(DynSystem):
    """An adding machine acting on a rooted dendrite of digit words.

    The arc ``A_w`` of a word ``w = (d_1, ..., d_k)`` hangs from the endpoint
    of ``A_{w[:-1]}`` and has length ``decay**k``.  The map sends the point at
    fraction ``s`` of ``A_w`` to fraction ``s`` of ``A_{w+1}`` (add one with
    carry on the ``k``-digit word) and fixes the root arc.  Since truncating
    commutes with adding one, the map is continuous, and it permutes the
    leaves cyclically with period ``prod(bases)``.

    The subtree ``X_w`` below ``A_w`` is the level-``|w|`` piece; the pieces
    of one level are ``f^i(X_{0...0})``, meeting only at branch points.
    """

    descriptor = "adding-machine"

    def __init__(self, bases, decay=0.5, descriptor=None):
        bases = tuple(int(s) for s in bases)
        if not bases:
            raise ValueError("need at least one level")
        if any(s < 2 for s in bases):
            raise ValueError("every base must be >= 2")
        if not 0.0 < decay < 1.0:
            raise ValueError("decay must lie in (0, 1)")
        words = [()]
        layer = [()]
        for s in bases:
            layer = [w + (d,) for w in layer for d in range(s)]
            words.extend(layer)
        self.dendrite = ArcDendrite(words, (), length=lambda w: decay ** len(w), attach=lambda w: 1.0, name="odometer-dendrite")
        if descriptor:
            self.descriptor = descriptor
        super().__init__(self.dendrite.tree, {"bases": list(bases), "decay": decay})
        self.bases = bases
        self.depth = len(bases)
        self.period = math.prod(bases)

    def step(self, x):
        w, s = self.dendrite.address_of(x)
        if not w:
            return x
        return self.dendrite.point_on_arc(_add_one(w, self.bases[: len(w)]), s)

    def return_time(self, level):
        return math.prod(self.bases[:level])

    def leaves(self):
        return [self.dendrite.b_point(w) for w in self.dendrite.depth_words(self.depth)]

    def state_of(self, x):
        """The odometer state of a point in a deepest-level arc (else ``None``)."""
        w, s = self.dendrite.address_of(x)
        if len(w) != self.depth or (s == 0.0):
            return None
        return OdometerState(w, self.bases)

    def leaf_point(self, state, s=1.0):
        return self.dendrite.point_on_arc(tuple(state.digits), s)

    def piece_index(self, x, level):
        """``i`` with ``x`` in ``f^i(D_level)``, or ``None`` if ``x`` lies in no piece or several."""
        w, s = self.dendrite.address_of(x)
        if len(w) < level or (len(w) == level and s == 0.0):
            return None
        if len(w) == level - 1 and s == 1.0:
            return None
        v, scale = 0, 1
        for d, b in zip(w[:level], self.bases[:level]):
            v += d * scale
            scale *= b
        return v

    def piece_words(self, level, i):
        """Words spanning the piece ``f^i(D_level)``."""
        top = OdometerState.from_value(i, self.bases[:level]).digits
        return self.dendrite.subtree_words(top)

    def sample(self, rng):
        # generic: interior of a deepest arc
        words = self.dendrite.depth_words(self.depth)
        w = words[int(rng.integers(0, len(words)))]
        return self.dendrite.point_on_arc(w, float(rng.uniform(0.05, 0.95)))


def _is_prime(p):
    return p >= 2 and factorize(p) == {p: 1}


def make_odometer(prime_seq, decay=0.5):
    """The adding machine over the given primes, embedded in a dendrite."""
    primes = [int(p) for p in prime_seq]
    if not primes:
        raise ValueError("prime sequence must be nonempty")
    if not all(_is_prime(p) for p in primes):
        raise ValueError(f"not all primes: {primes}")
    return AddingMachineDendrite(primes, decay=decay, descriptor="odometer")


def make_nested_decomposition(n_seq, decay=0.5):
    """A dendrite map with nested pieces ``D_1 ⊃ ... ⊃ D_K`` of return times ``n_1 ... n_k``.

    Surrogate model: the pieces satisfy the five decomposition properties
    by construction; it is not a map from the literature.
    """
    return AddingMachineDendrite(n_seq, decay=decay, descriptor="nested")


# solenoid truncation on an interval


class SolenoidSystem(DynSystem):
    """A continuous interval map with nested cycles of intervals.

    Level ``j`` has ``k_j`` disjoint closed intervals; each level-``j``
    interval holds ``k_{j+1}/k_j`` level-``(j+1)`` intervals, placed in equal
    slots with a gap fraction ``gap``.  Level-``J`` interval ``n`` is
    translated onto interval ``n + 1 (mod k_J)``; the map is linear on gaps
    between the deepest intervals and fixes 0 and 1.  The level-``j``
    interval containing level-``J`` interval ``n`` is ``n mod k_j``, so the
    induced itinerary is the ``k_J``-odometer.
    """

    descriptor = "solenoid"

    def __init__(self, levels, gap=1.0 / 3.0):
        levels = tuple(int(k) for k in levels)
        if not levels:
            raise ValueError("need at least one level")
        if levels[0] < 2:
            raise ValueError("k_1 must be >= 2")
        for a, b in zip(levels, levels[1:]):
            if b % a != 0 or b // a < 2:
                raise ValueError(f"chain is not k_(j+1) = m * k_j with m >= 2: {a} -> {b}")
        if not 0.0 < gap < 1.0:
            raise ValueError("gap must lie in (0, 1)")
        super().__init__(interval(), {"levels": list(levels)})
        self.levels = levels
        self.depth = len(levels)
        self.gap = gap
        # intervals per level, indexed by component number
        self._comps = []
        prev = {0: (0.0, 1.0)}
        k_prev = 1
        for k in levels:
            m = k // k_prev
            cur = {}
            for c in range(k):
                parent = c % k_prev
                d = c // k_prev
                lo, hi = prev[parent]
                slot = (hi - lo) / m
                left = lo + d * slot + 0.5 * gap * slot
                cur[c] = (left, left + (1.0 - gap) * slot)
            self._comps.append(cur)
            prev = cur
            k_prev = k
        deep = self._comps[-1]
        self.width = deep[0][1] - deep[0][0]
        self._lefts = [deep[n][0] for n in range(levels[-1])]
        order = sorted(range(levels[-1]), key=lambda n: deep[n][0])
        self._sorted_n = order
        self._sorted_left = [deep[n][0] for n in order]
        # knots of the piecewise-linear map
        kx, ky = [0.0], [0.0]
        kJ = levels[-1]
        for n in order:
            lo, hi = deep[n]
            tgt = deep[(n + 1) % kJ][0]
            kx += [lo, hi]
            ky += [tgt, tgt + (hi - lo)]
        kx.append(1.0)
        ky.append(1.0)
        self._kx = kx
        self._ky = ky

    def components(self, level):
        """``{c: (lo, hi)}`` for the level-``level`` intervals (1-based levels)."""
        if not 1 <= level <= self.depth:
            raise ValueError(f"level {level} outside 1..{self.depth}")
        return dict(self._comps[level - 1])

    def coordinate(self, x):
        if x.vertex is not None:
            return float(x.vertex)
        return x.t

    def deep_index(self, t):
        """``(n, offset)`` if ``t`` lies in deepest interval ``n``, else ``None``."""
        i = bisect.bisect_right(self._sorted_left, t) - 1
        if i < 0:
            return None
        n = self._sorted_n[i]
        off = t - self._lefts[n]
        if off <= self.width:
            return n, off
        return None

    def component_index(self, x, level):
        t = self.coordinate(x)
        for c, (lo, hi) in self._comps[level - 1].items():
            if lo <= t <= hi:
                return c
        return None

    def step(self, x):
        self.space.check(x)
        t = self.coordinate(x)
        hit = self.deep_index(t)
        if hit is not None:
            n, off = hit
            return self.space.point(0, self._lefts[(n + 1) % self.levels[-1]] + off)
        return self.space.point(0, float(np.interp(t, self._kx, self._ky)))

    def iter_orbit(self, x):
        # once inside a deepest interval the orbit is the exact translate cycle
        while True:
            hit = self.deep_index(self.coordinate(x))
            if hit is not None:
                break
            yield x
            x = self.step(x)
        n, off = hit
        kJ = self.levels[-1]
        pts = [x if j == 0 else self.space.point(0, self._lefts[(n + j) % kJ] + off) for j in range(kJ)]
        j = 0
        while True:
            yield pts[j]
            j = (j + 1) % kJ

    def sample(self, rng):
        n = int(rng.integers(0, self.levels[-1]))
        return self.space.point(0, self._lefts[n] + float(rng.uniform(0.05, 0.95)) * self.width)


def make_solenoid(levels, gap=1.0 / 3.0):
    return SolenoidSystem(levels, gap=gap)


# dendrite maps


class MonotoneDendriteSystem(DynSystem):
    """A monotone map of a spider (a tree whose branches at ``center`` are arcs).

    A point at normalized distance ``u`` from the center on branch ``i`` goes
    to normalized distance ``motion_i(u)`` on branch ``perm[i]``.  Branches
    are numbered by their first edge id.
    """

    descriptor = "monotone-dendrite"

    def __init__(self, tree, center=0, branch_perm=None, arc_motion=None):
        c = int(center)
        branches = []
        for e, w in sorted(tree.adjacency[c]):
            chain, prev, v = [e], c, w
            while tree.degree(v) == 2:
                e2, nxt = next((f, u) for f, u in tree.adjacency[v] if f != chain[-1])
                chain.append(e2)
                prev, v = v, nxt
            if tree.degree(v) != 1:
                raise ValueError("every branch at the center must be an arc ending in an endpoint")
            branches.append(chain)
        if sum(len(b) for b in branches) != len(tree.edges):
            raise ValueError("tree is not a spider around the given center")
        nb = len(branches)
        perm = list(range(nb)) if branch_perm is None else [int(p) for p in branch_perm]
        if sorted(perm) != list(range(nb)):
            raise ValueError(f"branch_perm must be a permutation of 0..{nb - 1}")
        lengths = [math.fsum(tree.edges[e][2] for e in b) for b in branches]
        for i, j in enumerate(perm):
            if abs(lengths[i] - lengths[j]) > POINT_TOL:
                raise ValueError(f"branch {i} (length {lengths[i]}) cannot map onto branch {j} (length {lengths[j]})")
        if arc_motion is None:
            motions = [_identity] * nb
        elif callable(arc_motion):
            motions = [arc_motion] * nb
        else:
            motions = list(arc_motion)
            if len(motions) != nb:
                raise ValueError("need one motion per branch")
        grid = np.linspace(0.0, 1.0, 257)
        for h in motions:
            vals = np.array([h(u) for u in grid])
            if abs(vals[0]) > POINT_TOL:
                raise ValueError("arc motion must fix 0 (continuity at the center)")
            if np.any(np.diff(vals) < -POINT_TOL) or np.any(vals < -POINT_TOL) or np.any(vals > 1 + POINT_TOL):
                raise ValueError("arc motion must be a non-decreasing map of [0, 1] into itself")
        super().__init__(tree, {"branches": nb, "perm": perm}, fixed_point=tree.vertex_point(c))
        self.center = c
        self.branches = branches
        self.perm = perm
        self.motions = motions
        self.lengths = lengths
        # edge -> (branch, offset of the near end, near end is edge[0])
        self._where = {}
        for bi, chain in enumerate(branches):
            v, off = c, 0.0
            for e in chain:
                u0, u1, ln = tree.edges[e]
                self._where[e] = (bi, off, u0 == v)
                v = u1 if u0 == v else u0
                off += ln

    def radial(self, x):
        """``(branch, distance from center)``; the center is ``(None, 0.0)``."""
        if x.vertex == self.center:
            return None, 0.0
        if x.vertex is not None:
            e = next(f for f, _ in self.space.adjacency[x.vertex] if f in self._where)
            bi, off, fwd = self._where[e]
            u0, u1, ln = self.space.edges[e]
            # the vertex is whichever end lies farther from the center
            far = u1 if fwd else u0
            return bi, off + ln if far == x.vertex else off
        bi, off, fwd = self._where[x.edge]
        ln = self.space.edges[x.edge][2]
        return bi, off + (x.t if fwd else 1.0 - x.t) * ln

    def at(self, bi, r):
        if r <= 0.0:
            return self.space.vertex_point(self.center)
        for e in self.branches[bi]:
            _, off, fwd = self._where[e]
            ln = self.space.edges[e][2]
            if r <= off + ln + POINT_TOL or e == self.branches[bi][-1]:
                s = min(1.0, (r - off) / ln)
                return self.space.point(e, s if fwd else 1.0 - s)
        raise AssertionError

    def step(self, x):
        self.space.check(x)
        bi, r = self.radial(x)
        if bi is None:
            return x
        R = self.lengths[bi]
        return self.at(self.perm[bi], self.motions[bi](r / R) * R)


def _identity(u):
    return u


def make_monotone_dendrite(tree, branch_perm=None, arc_motion=None, center=0):
    return MonotoneDendriteSystem(tree, center=center, branch_perm=branch_perm, arc_motion=arc_motion)


class ContractingDendriteSystem(DynSystem):
    """``x -> `` the point of ``[o, x]`` at distance ``rate * d(o, x)`` from ``o``.

    A stand-in with the same mechanism as a uniquely ergodic dendrite map
    whose only invariant measure is the point mass at ``o``.
    """

    descriptor = "contracting-dendrite"

    def __init__(self, tree, o, rate=0.5):
        tree.check(o)
        rate = float(rate)
        if not 0.0 < rate < 1.0:
            raise ValueError("rate must lie in (0, 1)")
        super().__init__(tree, {"rate": rate}, fixed_point=o)
        self.o = o
        self.rate = rate

    def step(self, x):
        if x == self.o:
            return x
        path = self.space.arc(self.o, x)
        return path.point_at(self.rate * path.length)


def make_contracting_dendrite(tree, o, rate=0.5):
    return ContractingDendriteSystem(tree, o, rate)


def sample_points(sys, count, rng):
    return [sys.sample(rng) for _ in range(count)]


__all__ = [
    "AddingMachineDendrite",
    "ConstantSystem",
    "ContractingDendriteSystem",
    "IntervalMap",
    "MonotoneDendriteSystem",
    "OdometerState",
    "PeriodicSystem",
    "RotationSystem",
    "SolenoidSystem",
    "TentSystem",
    "make_constant",
    "make_contracting_dendrite",
    "make_interval_map",
    "make_monotone_dendrite",
    "make_nested_decomposition",
    "make_odometer",
    "make_periodic",
    "make_rotation",
    "make_solenoid",
    "make_tent",
    "random_point",
    "sample_points",
]
