"""Words over the dyadic rationals of (0, 1)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _normalize_letter(r):
    if isinstance(r, tuple):
        p, q = int(r[0]), int(r[1])
    else:
        f = Fraction(r)
        den = f.denominator
        q = den.bit_length() - 1
        if den != 1 << q:
            raise ValueError(f"{r} is not dyadic")
        p = f.numerator
    if q < 1 or p % 2 == 0 or not 1 <= p < (1 << q):
        raise ValueError(f"invalid dyadic letter p={p}, q={q}: need odd p with 1 <= p < 2**q, q >= 1")
    return (p, q)


@dataclass(frozen=True, order=True)
class DyadicAddress:
    """A finite word ``r_0 r_1 ... r_{k-1}``, each letter stored as ``(p, q)`` with ``r = p / 2**q``."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(_normalize_letter(r) for r in self.letters))

    @classmethod
    def of(cls, *rs):
        return cls(tuple(rs))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.fractions())

    def __add__(self, other):
        return concat(self, other)

    def fractions(self):
        return tuple(Fraction(p, 1 << q) for p, q in self.letters)

    def values(self):
        return tuple(p / (1 << q) for p, q in self.letters)

    @property
    def last(self):
        if not self.letters:
            raise ValueError("the empty address has no last letter")
        p, q = self.letters[-1]
        return p / (1 << q)

    def __str__(self):
        if not self.letters:
            return "ε"
        return ".".join(f"{p}/{1 << q}" for p, q in self.letters)


ROOT = DyadicAddress()


def concat(alpha, beta):
    """The word ``alpha`` followed by ``beta``."""
    return DyadicAddress(alpha.letters + beta.letters)


def parent(alpha):
    """Drop the final letter."""
    if not alpha.letters:
        raise ValueError("the empty address has no parent")
    return DyadicAddress(alpha.letters[:-1])


def dyadic_letters(max_denominator):
    """All letters ``p / 2**q`` in (0, 1) with ``2**q <= max_denominator``, in increasing order."""
    out = []
    q = 1
    while (1 << q) <= max_denominator:
        out.extend((p, q) for p in range(1, 1 << q, 2))
        q += 1
    return sorted(out, key=lambda pq: pq[0] / (1 << pq[1]))
