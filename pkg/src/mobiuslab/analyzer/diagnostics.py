"""Proof-level decompositions of ``S_N`` that can be checked numerically."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from mobiuslab.analyzer.averages import (
    DEFAULT_CHECKPOINTS,
    ConvergenceReport,
    describe_point,
    s_average,
    validate_checkpoints,
    weighted_partial_sums,
)
from mobiuslab.analyzer.functions import psi_U
from mobiuslab.analyzer.pairs import ASYMPTOTIC, pair_classify
from mobiuslab.arithmetic.means import mertens
from mobiuslab.errors import NotAsymptoticError
from mobiuslab.topology.subsets import FreeArc

# --- asymptotic pairs ---------------------------------------------------------


@dataclass
class TransferResult:
    report_x: ConvergenceReport
    report_y: ConvergenceReport
    deviations: list  # |S_N(x) - S_N(y)| per checkpoint
    burn_in: int
    max_deviation: float  # over checkpoints N >= burn_in
    eps: float
    n0: int | None  # d_n < eps/2 for every n >= n0 inside the horizon
    n1: int | None  # (1/N) sum_{n < n0} d_n < eps/2 for every N >= n1
    split_holds: bool  # deviation < eps at every checkpoint beyond max(n0, n1)


def asymptotic_transfer_check(
    table,
    sys,
    x,
    y,
    phi,
    checkpoints=DEFAULT_CHECKPOINTS,
    burn_in=None,
    eps=1e-3,
    assume_asymptotic=False,
    classify_horizon=10_000,
    classify_eps=1e-9,
):
    """Compare ``S_N(x, phi)`` with ``S_N(y, phi)`` for an asymptotic pair.

    Unless ``assume_asymptotic`` the pair must first be classified as
    asymptotic; otherwise :class:`NotAsymptoticError` is raised.
    """
    cps = validate_checkpoints(checkpoints, table.limit)
    if not assume_asymptotic:
        verdict = pair_classify(sys, x, y, min(classify_horizon, cps[-1]), classify_eps)
        if verdict.label != ASYMPTOTIC:
            raise NotAsymptoticError(f"pair is not asymptotic at horizon {verdict.window[1]}: {verdict.label}")
    if burn_in is None:
        burn_in = cps[-1] // 10
    vx = sys.orbit_values(x, cps[-1], phi)
    vy = sys.orbit_values(y, cps[-1], phi)
    sx = weighted_partial_sums(table.mu, vx, cps)
    sy = weighted_partial_sums(table.mu, vy, cps)
    rx = ConvergenceReport(cps, [s / N for s, N in zip(sx, cps)], sys.describe(), describe_point(x), phi.description, phi.sup)
    ry = ConvergenceReport(cps, [s / N for s, N in zip(sy, cps)], sys.describe(), describe_point(y), phi.description, phi.sup)
    devs = [abs(math.fsum(table.mu[1 : N + 1] * (vx[:N] - vy[:N]))) / N for N in cps]
    tail = [d for N, d in zip(cps, devs) if N >= burn_in]
    max_dev = max(tail) if tail else 0.0

    # the proof's split: late terms are small, early terms are diluted by 1/N
    d = np.abs(vx - vy)
    late = np.nonzero(d >= eps / 2)[0]
    n0 = 1 if late.size == 0 else int(late[-1]) + 2  # d is indexed from n = 1
    if n0 > cps[-1]:
        n0 = n1 = None
        holds = False
    else:
        head = math.fsum(d[: n0 - 1].tolist())
        n1 = max(1, math.floor(2.0 * head / eps) + 1)
        start = max(n0, n1)
        holds = all(dev < eps for N, dev in zip(cps, devs) if N > start)
    return TransferResult(rx, ry, devs, burn_in, max_dev, eps, n0, n1, holds)


# --- uniquely ergodic systems ------------------------------------------------


@dataclass
class BoundRow:
    N: int
    s_abs: float  # |S_N(x, phi)|
    term1: float  # (1/N) sum |phi(f^n x) - phi(o)|
    term2: float  # |phi(o)| |(1/N) sum mu(n)|
    holds: bool  # decided in exact rational arithmetic

    @property
    def slack(self):
        return self.term1 + self.term2 - self.s_abs


def ergodic_bound_decomposition(table, sys, x, phi, checkpoints=DEFAULT_CHECKPOINTS):
    """``|S_N| <= Birkhoff mean of |phi - phi(o)| + |phi(o)| |mean mu|`` at each checkpoint.

    The float orbit values are treated as exact rationals, so the inequality
    is checked with no tolerance.  Equal values are grouped first, which keeps
    the rational arithmetic cheap for orbits that settle on ``o``.
    """
    o = sys.fixed_point
    if o is None:
        raise ValueError("system has no designated fixed point")
    cps = validate_checkpoints(checkpoints, table.limit)
    c = Fraction(phi(o))
    vals = sys.orbit_values(x, cps[-1], phi)
    mu = table.mu
    sum_muv = Fraction(0)
    sum_abs = Fraction(0)
    rows = []
    prev = 0
    for N in cps:
        seg_v = vals[prev:N]
        seg_mu = mu[prev + 1 : N + 1].astype(np.int64)
        uniq, inv = np.unique(seg_v, return_inverse=True)
        mu_by = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(mu_by, inv, seg_mu)
        cnt = np.bincount(inv, minlength=len(uniq))
        for u, m, k in zip(uniq.tolist(), mu_by.tolist(), cnt.tolist()):
            fu = Fraction(u)
            if m:
                sum_muv += fu * m
            sum_abs += abs(fu - c) * k
        prev = N
        M = mertens(table, N)
        lhs = abs(sum_muv)
        rhs = sum_abs + abs(c) * abs(M)
        rows.append(BoundRow(N, float(lhs / N), float(sum_abs / N), float(abs(c) * abs(M) / N), lhs <= rhs))
    return rows


def uniform_sup_diagnostic(table, sys, phi, checkpoints, sample):
    """``max_x |S_N(x, phi)|`` over a finite sample, per checkpoint."""
    sample = list(sample)
    if not sample:
        raise ValueError("empty sample")
    best = None
    for x in sample:
        rep = s_average(table, sys, x, phi, checkpoints)
        cur = [abs(v) for v in rep.values]
        best = cur if best is None else [max(a, b) for a, b in zip(best, cur)]
    return best


# --- solenoids -------------------------------------------------------------------


INSIDE, DISJOINT, STRADDLING = "inside", "disjoint", "straddling"


@dataclass
class ComponentRow:
    component: int
    lo: float
    hi: float
    case: str
    contribution: float  # (1/N) sum over visits of mu(n) psi(f^n x)
    visits: int
    bound: float  # 0 for disjoint, 1/k for straddling, |progression mean| for inside


@dataclass
class SolenoidSplit:
    level: int
    k: int
    N: int
    rows: list
    transient: float  # contribution of times before the orbit enters the level
    total: float  # S_N; equals transient + sum of row contributions
    report: ConvergenceReport
    slack: float

    @property
    def straddling_count(self):
        return sum(r.case == STRADDLING for r in self.rows)

    @property
    def bound(self):
        return 2.0 / self.k

    @property
    def last_decade_max(self):
        return self.report.last_decade_max()

    @property
    def passed(self):
        return self.last_decade_max <= self.bound + self.slack


def classify_component(lo, hi, U):
    a, b = U.lo, U.hi
    if a < lo and hi < b:
        return INSIDE
    if hi < a or lo > b:
        return DISJOINT
    return STRADDLING


def solenoid_case_split(table, sys, x, U, level, checkpoints=DEFAULT_CHECKPOINTS, slack=0.05):
    """Split ``S_N(x, psi_U)`` over the level-``level`` intervals of a solenoid."""
    if not 1 <= level <= sys.depth:
        raise ValueError(f"level {level} outside 1..{sys.depth}")
    if not isinstance(U, FreeArc) or U.space is not sys.space:
        raise ValueError("U must be a free arc of the solenoid's interval")
    cps = validate_checkpoints(checkpoints, table.limit)
    N = cps[-1]
    psi = psi_U(sys.space, U)
    k = sys.levels[level - 1]
    comps = sys.components(level)

    def comp_of(p):
        c = sys.component_index(p, level)
        return math.nan if c is None else float(c)

    vals = sys.orbit_values(x, N, psi)
    comp = sys.orbit_values(x, N, comp_of)
    weighted = table.mu[1 : N + 1] * vals
    rows = []
    for c in range(k):
        lo, hi = comps[c]
        case = classify_component(lo, hi, U)
        mask = comp == c
        contrib = math.fsum(weighted[mask].tolist()) / N
        if case == DISJOINT:
            bnd = 0.0
        elif case == STRADDLING:
            bnd = 1.0 / k
        else:
            bnd = abs(contrib)
        rows.append(ComponentRow(c, lo, hi, case, contrib, int(mask.sum()), bnd))
    transient = math.fsum(weighted[np.isnan(comp)].tolist()) / N
    total = math.fsum(weighted.tolist()) / N
    report = ConvergenceReport(
        cps,
        [s / n for s, n in zip(weighted_partial_sums(table.mu, vals, cps), cps)],
        sys.describe(),
        describe_point(x),
        psi.description,
        sup=1.0,
    )
    return SolenoidSplit(level, k, N, rows, transient, total, report, slack)
