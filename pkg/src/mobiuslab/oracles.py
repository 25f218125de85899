"""Independent reference computations used to cross-check the fast paths.

Nothing here shares code with the sieve or the averaging routines: the
factorizations are by trial division and the Mertens value comes from the
hyperbola recursion over a pure-Python linear sieve.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache


def factorize(n):
    """Prime factorization of ``n >= 1`` by trial division, as ``{p: e}``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mu_trial(n):
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def liouville_trial(n):
    return -1 if sum(factorize(n).values()) % 2 else 1


def linear_sieve_mu(n):
    """Euler's linear sieve: list ``mu[0..n]`` in pure Python."""
    mu = [0] * (n + 1)
    if n >= 1:
        mu[1] = 1
    primes = []
    composite = bytearray(n + 1)
    for i in range(2, n + 1):
        if not composite[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > n:
                break
            composite[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def mertens_recursive(x):
    """``M(x)`` from ``sum_{d<=x} M(x // d) = 1``, with small values from a linear sieve."""
    x = int(x)
    if x < 1:
        return 0
    u = max(int(round(x ** (2 / 3))), math.isqrt(x) + 1, 10)
    small = list(itertools.accumulate(linear_sieve_mu(u)))

    @lru_cache(maxsize=None)
    def M(v):
        if v <= u:
            return small[v]
        total = 1
        d = 2
        while d <= v:
            q = v // d
            d_hi = v // q
            total -= (d_hi - d + 1) * M(q)
            d = d_hi + 1
        return total

    return M(x)


def direct_weighted_sum(mu_values, xs):
    """``sum mu(n) x_n`` term by term (``mu_values[n-1]`` pairs with ``xs[n-1]``)."""
    return math.fsum(m * x for m, x in zip(mu_values, xs))


def all_simple_paths(adjacency, src, dst):
    """All simple vertex paths ``src -> dst`` in an adjacency dict ``{v: [(edge, w), ...]}``.

    Each path is returned as a tuple of edge ids.  Exponential; for small oracles only.
    """
    out = []

    def walk(v, seen, edges):
        if v == dst:
            out.append(tuple(edges))
            return
        for e, w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                edges.append(e)
                walk(w, seen, edges)
                edges.pop()
                seen.discard(w)

    walk(src, {src}, [])
    return out
