"""The dynamical-system interface: a self-map of a finite space model."""

from __future__ import annotations

import numpy as np

from mobiuslab.topology.graph import random_point

# distinct states remembered while looking for an exact cycle
CYCLE_WINDOW = 200_000


class DynSystem:
    """A deterministic self-map ``step`` of ``space``.

    Subclasses override :meth:`step`; they may also override
    :meth:`iter_orbit` with a faster generator that visits the same points
    (up to rounding).
    """

    descriptor = "generic"

    def __init__(self, space, params=None, fixed_point=None):
        self.space = space
        self.params = dict(params or {})
        self.fixed_point = fixed_point

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{type(self).__name__}({args})"

    def describe(self):
        if not self.params:
            return self.descriptor
        args = ",".join(f"{k}={_short(v)}" for k, v in sorted(self.params.items()))
        return f"{self.descriptor}({args})"

    def step(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.step(x)

    def distance(self, x, y):
        return self.space.distance(x, y)

    def sample(self, rng):
        return random_point(self.space, rng)

    def iter_orbit(self, x):
        """Yield ``x, f(x), f^2(x), ...`` forever."""
        while True:
            yield x
            x = self.step(x)

    def orbit(self, x, n):
        """``[x, f(x), ..., f^n(x)]``."""
        out = []
        for p in self.iter_orbit(x):
            out.append(p)
            if len(out) > n:
                return out
        return out

    def orbit_values(self, x, n, fn, start=1):
        """``fn(f^k(x))`` for ``k = start .. n`` as a float array.

        Exact revisits of a state (fixed points, periodic combinatorial
        states) are detected and the cycle of values is tiled, which is
        exact because the map is deterministic.
        """
        count = n - start + 1
        if count <= 0:
            return np.zeros(0)
        vals = []
        index = {}
        it = self.iter_orbit(x)
        k = 0
        for p in it:
            if k > n:
                break
            if len(index) < CYCLE_WINDOW:
                j = index.get(p)
                if j is not None:
                    period = k - j
                    cyc = vals[j:k]
                    rest = n + 1 - k
                    reps = -(-rest // period)
                    vals.extend((cyc * reps)[:rest])
                    break
                index[p] = k
            vals.append(fn(p))
            k += 1
        return np.asarray(vals[start : n + 1], dtype=np.float64)


def iterate(sys, x, n):
    """``f^n(x)`` by ``n`` applications of the step map."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    sys.space.check(x)
    for _ in range(n):
        x = sys.step(x)
    return x


def _short(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return "|".join(_short(u) for u in v)
    return str(v)
