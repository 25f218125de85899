"""Number-theoretic averages over a sieved table.

Sums of +-1/0 terms are accumulated in int64 and divided once at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def _check_range(table, N):
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > table.limit:
        raise ValueError(f"N={N} exceeds table limit {table.limit}")
    return N


def mertens(table, N):
    """``M(N) = sum_{n<=N} mu(n)`` as a Python int."""
    N = _check_range(table, N)
    return int(table.mertens[N])


def mean_mobius(table, N):
    """``(1/N) * sum_{n<=N} mu(n)``."""
    N = _check_range(table, N)
    return int(table.mertens[N]) / N


def progression_sum(table, N, a, m):
    """``sum mu(n)`` over ``1 <= n <= N`` with ``n = a (mod m)``, exact int."""
    N = _check_range(table, N)
    m = int(m)
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    a = int(a)
    if not 0 <= a < m:
        raise ValueError(f"residue must satisfy 0 <= a < m, got a={a}, m={m}")
    first = a if a > 0 else m
    if first > N:
        return 0
    return int(table.mu[first : N + 1 : m].sum(dtype=np.int64))


def progression_mean(table, N, a, m):
    """``(1/N) * sum_{n<=N, n=a mod m} mu(n)``."""
    return progression_sum(table, N, a, m) / int(N)


def _progression_sum_upto(table, lo, N, a, m):
    # sum over lo <= n <= N, n = a (mod m); lo >= 1
    if lo > N:
        return 0
    first = lo + ((a - lo) % m)
    if first > N:
        return 0
    return int(table.mu[first : N + 1 : m].sum(dtype=np.int64))


def eventually_periodic_mean(table, N, prefix, cycle):
    """``(1/N) * sum_{n<=N} mu(n) x_n`` for an eventually periodic ``x``.

    ``x_1 .. x_P`` are the prefix values and, for ``n > P``, the cycle is
    indexed by residue: ``x_n = cycle[n % m]``.  For a periodic orbit
    ``p_0 -> p_1 -> ...`` this makes ``cycle[i] = phi(p_i)``.  The periodic
    part is reduced to one progression sum per residue class.  Values need
    only be finite; a finite list is automatically bounded.
    """
    N = _check_range(table, N)
    prefix = [float(v) for v in prefix]
    cycle = [float(v) for v in cycle]
    if not cycle:
        raise ValueError("cycle must be nonempty")
    if not all(math.isfinite(v) for v in prefix + cycle):
        raise ValueError("sequence values must be finite")
    P, m = len(prefix), len(cycle)
    terms = [int(table.mu[n]) * prefix[n - 1] for n in range(1, min(P, N) + 1)]
    for a, c in enumerate(cycle):
        if c == 0.0:
            continue
        terms.append(c * _progression_sum_upto(table, P + 1, N, a, m))
    return math.fsum(terms) / N


@dataclass(frozen=True)
class CorrelationQuery:
    """Shifts ``a_1 < ... < a_r`` and exponents ``i_0 .. i_r`` in {1, 2}, not all 2."""

    shifts: tuple
    exponents: tuple
    N: int

    def __post_init__(self):
        shifts = tuple(int(a) for a in self.shifts)
        exps = tuple(int(i) for i in self.exponents)
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "exponents", exps)
        if any(a < 1 for a in shifts):
            raise ValueError("shifts must be positive")
        if any(b <= a for a, b in zip(shifts, shifts[1:])):
            raise ValueError("shifts must be strictly increasing")
        if len(exps) != len(shifts) + 1:
            raise ValueError("need exactly one exponent per factor (r + 1)")
        if any(i not in (1, 2) for i in exps):
            raise ValueError("exponents must be 1 or 2")
        if all(i == 2 for i in exps):
            raise ValueError("exponents must not all equal 2")
        if int(self.N) < 1:
            raise ValueError("N must be >= 1")

    @property
    def r(self):
        return len(self.shifts)


def chowla_sum(table, q, function="mu"):
    """``(1/N) * sum_{n<=N} mu(n)^i0 mu(n+a_1)^i1 ... mu(n+a_r)^ir``.

    ``mu^2`` is the squarefree indicator ``|mu|``.  With
    ``function="liouville"`` the same product is taken over ``lambda``,
    where every square is 1.
    """
    if function not in ("mu", "liouville"):
        raise ValueError(f"function must be 'mu' or 'liouville', got {function!r}")
    arr = table.mu if function == "mu" else table.lam
    N = q.N
    top = N + (q.shifts[-1] if q.shifts else 0)
    if top > table.limit:
        raise ValueError(f"query reaches n={top}, beyond table limit {table.limit}")
    prod = np.ones(N, dtype=np.int64)
    for shift, e in zip((0,) + q.shifts, q.exponents):
        seg = arr[1 + shift : N + 1 + shift].astype(np.int64)
        prod *= seg if e == 1 else np.abs(seg)
    return int(prod.sum()) / N


@dataclass(frozen=True)
class GapSequenceSpec:
    """A bounded sequence whose nonzero tail entries sit at least ``k`` apart.

    ``x_1 .. x_P`` are ``prefix``; after that the sequence is zero except at
    the support positions ``first, first + g_0, first + g_0 + g_1, ...``
    (gaps cycled from ``gaps``), where it takes the values in ``values``
    (also cycled).  Every gap must be ``>= k`` and ``first >= max(k, P + 1)``,
    which is what makes ``|mean| <= 1/k + P/N`` hold at every ``N``.
    """

    k: int
    gaps: tuple = ()
    values: tuple = (1.0,)
    prefix: tuple = ()
    first: int | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        k = int(self.k)
        if k < 1:
            raise ValueError(f"gap k must be >= 1, got {self.k}")
        gaps = tuple(int(g) for g in self.gaps) or (k,)
        values = tuple(float(v) for v in self.values)
        prefix = tuple(float(v) for v in self.prefix)
        if any(g < k for g in gaps):
            raise ValueError(f"every gap must be >= k={k}")
        if not values:
            raise ValueError("values must be nonempty")
        if any(abs(v) > 1 for v in values + prefix):
            raise ValueError("sequence values must satisfy |x_n| <= 1")
        first = max(k, len(prefix) + 1) if self.first is None else int(self.first)
        if first < max(k, len(prefix) + 1):
            raise ValueError("first support position must be >= max(k, len(prefix) + 1)")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "gaps", gaps)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "first", first)

    @property
    def transient(self):
        return len(self.prefix)

    def bound(self, N):
        """The sparse-support bound ``1/k + 2 * transient / N``."""
        return 1.0 / self.k + 2.0 * self.transient / N

    def support(self, N):
        """Support positions ``<= N`` (1-based), as an int64 array."""
        if self.first > N:
            return np.zeros(0, dtype=np.int64)
        g = np.asarray(self.gaps, dtype=np.int64)
        period = int(g.sum())
        reps = (N - self.first) // period + 2
        steps = np.concatenate(([0], np.tile(g, reps)))
        pos = self.first + np.cumsum(steps)
        return pos[pos <= N]

    def generate(self, N):
        """``x_1 .. x_N`` as a float array (index 0 holds ``x_1``)."""
        N = int(N)
        x = np.zeros(N, dtype=np.float64)
        P = min(self.transient, N)
        x[:P] = self.prefix[:P]
        pos = self.support(N)
        vals = np.resize(np.asarray(self.values), len(pos))
        x[pos - 1] = vals
        return x

    @classmethod
    def random(cls, k, rng, transient=0, max_gap_factor=2):
        """A random spec: gaps uniform in ``[k, max_gap_factor*k]``, values uniform signs/magnitudes."""
        n_cycle = int(rng.integers(1, 17))
        gaps = tuple(int(g) for g in rng.integers(k, max_gap_factor * k + 1, size=n_cycle))
        values = tuple(float(v) for v in rng.choice([-1.0, 1.0], size=n_cycle) * rng.uniform(0.5, 1.0, n_cycle))
        prefix = tuple(float(v) for v in rng.uniform(-1, 1, size=transient))
        return cls(k=k, gaps=gaps, values=values, prefix=prefix)


def gap_bounded_mean(table, x, N, weighted=False):
    """Cesàro mean ``(1/N) * sum_{n<=N} x_n`` of a gap-bounded sequence.

    With ``weighted=True`` the terms are multiplied by ``mu(n)`` first; the
    same bound applies since the support is unchanged.  ``table`` is only
    read in the weighted case.
    """
    N = int(N)
    if N < 1:
        raise ValueError("N must be >= 1")
    vals = x.generate(N)
    if weighted:
        N = _check_range(table, N)
        vals = vals * table.mu[1 : N + 1]
    return math.fsum(vals) / N
