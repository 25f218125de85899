"""Entropy estimates from greedy ``(n, eps)``-separated subsets of a finite grid.

Greedy counts are lower bounds for ``sep(n, f, eps)`` restricted to the grid.
Cells are filled for decreasing ``eps`` and increasing ``n``; each cell is
seeded with the larger of its two already-computed neighbours (a set that is
``(n-1, eps)``-separated is also ``(n, eps)``-separated, and one that is
``(n, eps')``-separated for ``eps' > eps`` is also ``(n, eps)``-separated), so
the table is monotone in both arguments by construction.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass

import numpy as np

EXHAUSTIVE_LIMIT = 1 << 12


@dataclass
class EntropyEstimate:
    value: float
    n_list: tuple
    eps_list: tuple
    counts: dict  # (n, eps) -> greedy count
    slopes: dict  # eps -> least-squares slope of log count against n
    kept: dict  # (n, eps) -> indices into the grid

    def table(self):
        return [[self.counts[(n, e)] for e in self.eps_list] for n in self.n_list]


def orbit_coordinates(sys, grid, n):
    """``(len(grid), n)`` array of coordinates of ``f^j(x)``, ``j < n``, and the metric kind."""
    coord = getattr(sys, "coordinate", None)
    if coord is None:
        return None, None
    kind = "circle" if sys.descriptor == "rotation" else "line"
    out = np.empty((len(grid), n))
    for i, x in enumerate(grid):
        for j, p in enumerate(sys.iter_orbit(x)):
            if j >= n:
                break
            out[i, j] = coord(p)
    return out, kind


def _coord_dist(a, b, kind):
    d = np.abs(a - b)
    if kind == "circle":
        d = np.minimum(d, 1.0 - d)
    return d


class _CoordBowen:
    """Bowen distances on coordinate orbits.

    A point within ``eps`` in the Bowen metric is within ``eps`` at time 0,
    so only kept points in that time-0 window are compared.
    """

    def __init__(self, orbits, kind):
        self.orbits = orbits
        self.kind = kind

    def greedy(self, n, eps, seed):
        x0 = self.orbits[:, 0]
        block = self.orbits[:, :n]
        kept = list(seed)
        pos = sorted((x0[k], k) for k in kept)
        keys = [v for v, _ in pos]
        idx = [k for _, k in pos]
        in_seed = set(seed)
        for i in range(len(x0)):
            if i in in_seed:
                continue
            c = x0[i]
            near = self._window(keys, idx, c, eps)
            if near:
                d = _coord_dist(block[near], block[i], self.kind).max(axis=1)
                if d.min() <= eps:
                    continue
            j = bisect.bisect_left(keys, c)
            keys.insert(j, c)
            idx.insert(j, i)
            kept.append(i)
        return kept

    def _window(self, keys, idx, c, eps):
        lo = bisect.bisect_left(keys, c - eps)
        hi = bisect.bisect_right(keys, c + eps)
        near = idx[lo:hi]
        if self.kind == "circle":
            if c - eps < 0.0:
                near = near + idx[bisect.bisect_left(keys, c - eps + 1.0) :]
            if c + eps > 1.0:
                near = near + idx[: bisect.bisect_right(keys, c + eps - 1.0)]
        return near


def _bowen_generic(sys, grid, n_max):
    orbits = [sys.orbit(x, n_max - 1) for x in grid]

    def dn(i, idx, n):
        out = np.empty(len(idx))
        for a, k in enumerate(idx):
            out[a] = max(0.0 if p == q else sys.distance(p, q) for p, q in zip(orbits[i][:n], orbits[k][:n]))
        return out

    return dn


class _GenericBowen:
    def __init__(self, dn, count):
        self.dn = dn
        self.count = count

    def greedy(self, n, eps, seed):
        kept = list(seed)
        in_seed = set(seed)
        for i in range(self.count):
            if i in in_seed:
                continue
            if not kept or self.dn(i, np.asarray(kept), n).min() > eps:
                kept.append(i)
        return kept


def bowen_distance_fn(sys, grid, n_max):
    orbits, kind = orbit_coordinates(sys, grid, n_max)
    if orbits is not None:
        return _CoordBowen(orbits, kind)
    return _GenericBowen(_bowen_generic(sys, grid, n_max), len(grid))


def entropy_estimate(sys, n_list, eps_list, grid):
    """Greedy separated counts per ``(n, eps)`` and ``max_eps`` of the growth slope in ``n``."""
    grid = list(grid)
    if not grid:
        raise ValueError("empty grid")
    n_list = tuple(sorted({int(n) for n in n_list}))
    eps_list = tuple(sorted({float(e) for e in eps_list}, reverse=True))
    if n_list[0] < 1 or eps_list[-1] <= 0:
        raise ValueError("need n >= 1 and eps > 0")
    bowen = bowen_distance_fn(sys, grid, n_list[-1])
    counts, kept = {}, {}
    for ei, eps in enumerate(eps_list):
        for ni, n in enumerate(n_list):
            seeds = []
            if ni > 0:
                seeds.append(kept[(n_list[ni - 1], eps)])
            if ei > 0:
                seeds.append(kept[(n, eps_list[ei - 1])])
            seed = max(seeds, key=len) if seeds else []
            k = bowen.greedy(n, eps, seed)
            kept[(n, eps)] = k
            counts[(n, eps)] = len(k)
    slopes = {}
    ns = np.asarray(n_list, dtype=float)
    for eps in eps_list:
        if len(n_list) < 2:
            slopes[eps] = 0.0
            continue
        ys = np.log([counts[(n, eps)] for n in n_list])
        slopes[eps] = float(np.polyfit(ns, ys, 1)[0])
    value = max(0.0, max(slopes.values()))
    return EntropyEstimate(value, n_list, eps_list, counts, slopes, kept)


def verify_separated_maximal(sys, grid, n, eps, kept):
    """Exhaustive all-pairs check: ``kept`` is ``(n, eps)``-separated and no grid point can be added.

    Independent of the estimator: distances come from ``sys.distance`` on
    plain orbit lists.
    """
    grid = list(grid)
    if len(grid) > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive check limited to {EXHAUSTIVE_LIMIT} grid points")
    orbits = [sys.orbit(x, n - 1) for x in grid]

    def bowen(i, k):
        return max(sys.distance(p, q) for p, q in zip(orbits[i], orbits[k]))

    kept = list(kept)
    for a, b in itertools.combinations(kept, 2):
        if not bowen(a, b) > eps:
            return False
    ks = set(kept)
    for i in range(len(grid)):
        if i not in ks and all(bowen(i, k) > eps for k in kept):
            return False
    return True


def max_separated_bruteforce(sys, grid, n, eps):
    """Largest ``(n, eps)``-separated subset of a tiny grid by subset enumeration."""
    grid = list(grid)
    if len(grid) > 18:
        raise ValueError("brute force limited to 18 grid points")
    orbits = [sys.orbit(x, n - 1) for x in grid]
    m = len(grid)
    sep = [[False] * m for _ in range(m)]
    for a, b in itertools.combinations(range(m), 2):
        sep[a][b] = sep[b][a] = max(sys.distance(p, q) for p, q in zip(orbits[a], orbits[b])) > eps
    for size in range(m, 0, -1):
        for sub in itertools.combinations(range(m), size):
            if all(sep[a][b] for a, b in itertools.combinations(sub, 2)):
                return size
    return 0


def exhaustive_counts(sys, grid, n_list, eps_list):
    """Reference counts from full pairwise Bowen-distance matrices.

    Every pair is compared at every time (no time-0 window), then the same
    seeded scan as :func:`entropy_estimate` is replayed.  Limited to
    ``EXHAUSTIVE_LIMIT`` grid points.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("empty grid")
    if len(grid) > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search limited to {EXHAUSTIVE_LIMIT} grid points")
    n_list = tuple(sorted({int(n) for n in n_list}))
    eps_list = tuple(sorted({float(e) for e in eps_list}, reverse=True))
    orbits = [sys.orbit(x, n_list[-1] - 1) for x in grid]
    m = len(grid)
    coord = getattr(sys, "coordinate", None)
    mats = {}
    D = np.zeros((m, m))
    for j in range(n_list[-1]):
        if coord is not None:
            c = np.array([coord(o[j]) for o in orbits])
            Dj = np.abs(c[:, None] - c[None, :])
            if sys.descriptor == "rotation":
                Dj = np.minimum(Dj, 1.0 - Dj)
        else:
            Dj = np.array([[sys.distance(a[j], b[j]) for b in orbits] for a in orbits])
        np.maximum(D, Dj, out=D)
        if j + 1 in n_list:
            mats[j + 1] = D.copy()
    counts, kept = {}, {}
    for ei, eps in enumerate(eps_list):
        for ni, n in enumerate(n_list):
            seeds = []
            if ni > 0:
                seeds.append(kept[(n_list[ni - 1], eps)])
            if ei > 0:
                seeds.append(kept[(n, eps_list[ei - 1])])
            cur = list(max(seeds, key=len)) if seeds else []
            close = mats[n] <= eps
            blocked = close[cur].any(axis=0) if cur else np.zeros(m, dtype=bool)
            for i in range(m):
                if not blocked[i]:
                    cur.append(i)
                    blocked |= close[i]
            kept[(n, eps)] = cur
            counts[(n, eps)] = len(cur)
    return counts, kept
