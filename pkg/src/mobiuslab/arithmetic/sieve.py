"""Segmented sieve for the Möbius and Liouville functions.

Each segment ``[lo, hi)`` is processed independently against the primes up to
``sqrt(N)``: every prime flips the sign of its multiples, every prime power
flips the Liouville sign once more and zeroes the Möbius value, and the
cofactor left after dividing out all small primes is either 1 or a single
large prime.  Segments never share state, so the result does not depend on
the segment size or on how many workers run them.
"""

from __future__ import annotations

import hashlib
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from mobiuslab.errors import CapacityError

DEFAULT_SEGMENT_SIZE = 1 << 18
# Two int8 arrays plus per-segment int64 scratch; 2e8 needs ~0.5 GB peak.
DEFAULT_MAX_LIMIT = 200_000_000

MAGIC = b"MBTB"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sIQ")


class MobiusTable:
    """Sieved values of mu and lambda on ``[1, limit]``.

    Arrays are stored with a dummy slot at index 0 so that ``mu[n]`` is the
    value at ``n``; ``mu[0]`` and ``lam[0]`` are 0 and carry no meaning.
    Both arrays are read-only.
    """

    __slots__ = ("limit", "mu", "lam", "segment_size", "_mertens")

    def __init__(self, limit, mu, lam, segment_size=DEFAULT_SEGMENT_SIZE):
        mu = np.asarray(mu, dtype=np.int8)
        lam = np.asarray(lam, dtype=np.int8)
        if mu.shape != (limit + 1,) or lam.shape != (limit + 1,):
            raise ValueError("mu/lam must have shape (limit + 1,)")
        mu.setflags(write=False)
        lam.setflags(write=False)
        self.limit = int(limit)
        self.mu = mu
        self.lam = lam
        self.segment_size = int(segment_size)
        self._mertens = None

    def __repr__(self):
        return f"MobiusTable(limit={self.limit})"

    def __len__(self):
        return self.limit

    @property
    def mertens(self):
        """Prefix sums ``M(n) = sum_{k<=n} mu(k)`` as an int64 array (index 0 is 0)."""
        if self._mertens is None:
            m = np.cumsum(self.mu, dtype=np.int64)
            m.setflags(write=False)
            self._mertens = m
        return self._mertens

    def squarefree(self):
        """``mu(n)**2`` as an int8 array, the squarefree indicator."""
        return np.abs(self.mu).astype(np.int8)

    def checksum(self):
        h = hashlib.sha256()
        h.update(struct.pack("<Q", self.limit))
        h.update(self.mu[1:].tobytes())
        h.update(self.lam[1:].tobytes())
        return h.hexdigest()

    def dump(self, path):
        """Write the binary table format: header, then raw int8 mu, then int8 lambda."""
        path = Path(path)
        with path.open("wb") as fh:
            fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, self.limit))
            fh.write(self.mu[1:].astype("<i1").tobytes())
            fh.write(self.lam[1:].astype("<i1").tobytes())
        return path

    @classmethod
    def load(cls, path):
        data = Path(path).read_bytes()
        if len(data) < _HEADER.size:
            raise ValueError(f"{path}: truncated header")
        magic, version, limit = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported format version {version}")
        expected = _HEADER.size + 2 * limit
        if len(data) != expected:
            raise ValueError(f"{path}: expected {expected} bytes, found {len(data)}")
        body = np.frombuffer(data, dtype="<i1", offset=_HEADER.size)
        mu = np.zeros(limit + 1, dtype=np.int8)
        lam = np.zeros(limit + 1, dtype=np.int8)
        mu[1:] = body[:limit]
        lam[1:] = body[limit:]
        return cls(limit, mu, lam)


def small_primes(n):
    """Primes ``<= n`` by a plain Eratosthenes sieve."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _sieve_segment(lo, hi, primes):
    """mu and lambda on ``[lo, hi)``; ``primes`` must cover ``sqrt(hi - 1)``."""
    size = hi - lo
    rem = np.arange(lo, hi, dtype=np.int64)
    mu = np.ones(size, dtype=np.int8)
    lam = np.ones(size, dtype=np.int8)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        mu[(-lo) % p :: p] *= -1
        pk = p
        while pk < hi:
            start = (-lo) % pk
            lam[start::pk] *= -1
            rem[start::pk] //= p
            if pk > p:
                mu[start::pk] = 0
            pk *= p
    # at most one prime factor above sqrt(hi) survives in the cofactor
    big = rem > 1
    mu[big] *= -1
    lam[big] *= -1
    return mu, lam


def sieve_mobius(N, segment_size=DEFAULT_SEGMENT_SIZE, workers=1, max_limit=DEFAULT_MAX_LIMIT):
    """Sieve mu and lambda on ``[1, N]``.

    Raises ``ValueError`` for ``N < 1`` and ``CapacityError`` when ``N`` is
    above ``max_limit``.
    """
    N = int(N)
    if N < 1:
        raise ValueError(f"sieve limit must be >= 1, got {N}")
    if N > max_limit:
        raise CapacityError(f"sieve limit {N} exceeds capacity {max_limit}")
    if segment_size < 1:
        raise ValueError("segment_size must be positive")

    primes = small_primes(math.isqrt(N) + 1)
    mu = np.zeros(N + 1, dtype=np.int8)
    lam = np.zeros(N + 1, dtype=np.int8)
    bounds = [(lo, min(lo + segment_size, N + 1)) for lo in range(1, N + 1, segment_size)]

    def fill(bound):
        lo, hi = bound
        mu[lo:hi], lam[lo:hi] = _sieve_segment(lo, hi, primes)

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, bounds))
    else:
        for b in bounds:
            fill(b)
    return MobiusTable(N, mu, lam, segment_size=segment_size)
