"""Finite-horizon evidence for proximal, asymptotic and Li-Yorke pairs.

Every verdict is evidence from a finite window, never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass

ASYMPTOTIC = "asymptotic-evidence"
PROXIMAL = "proximal-evidence"
LI_YORKE = "li-yorke-evidence"
SEPARATED = "separated"


@dataclass(frozen=True)
class PairVerdict:
    label: str
    min_distance: float
    max_distance: float
    window: tuple

    @property
    def is_evidence(self):
        return True


def orbit_distances(sys, x, y, n):
    """``d(f^k x, f^k y)`` for ``k = 0 .. n``."""
    sys.space.check(x, y)
    out = []
    for k, (p, q) in enumerate(zip(sys.iter_orbit(x), sys.iter_orbit(y))):
        out.append(0.0 if p == q else sys.distance(p, q))
        if k >= n:
            break
    return out


def pair_classify(sys, x, y, horizon, eps):
    """Classify from the min and max of the orbit distance over ``[N/2, N]``.

    ``min < eps <= max`` is reported as Li-Yorke evidence when both close
    and far returns persist into the last quarter of the window, and as
    plain proximal evidence otherwise.
    """
    N = int(horizon)
    if N < 1 or not eps > 0:
        raise ValueError("need horizon >= 1 and eps > 0")
    d = orbit_distances(sys, x, y, N)
    lo = N // 2
    win = d[lo:]
    dmin, dmax = min(win), max(win)
    if dmax < eps:
        label = ASYMPTOTIC
    elif dmin < eps:
        tail = d[lo + (N - lo) // 2 :]
        recurring = min(tail) < eps <= max(tail)
        label = LI_YORKE if recurring else PROXIMAL
    else:
        label = SEPARATED
    return PairVerdict(label, dmin, dmax, (lo, N))
