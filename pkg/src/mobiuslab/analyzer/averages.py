"""Möbius-weighted orbit averages ``S_N(x, phi) = (1/N) sum_{n<=N} mu(n) phi(f^n x)``."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

DEFAULT_CHECKPOINTS = (1_000, 3_000, 10_000, 30_000, 100_000, 300_000, 1_000_000)
CSV_COLUMNS = ("N", "value", "system", "point", "function", "job-id")


def log_checkpoints(n_max, per_decade=2, start=1_000):
    """``1, 3, 10, 30, ...`` style schedule (``per_decade`` in {1, 2, 3}) capped at ``n_max``."""
    mult = {1: (1,), 2: (1, 3), 3: (1, 2, 5)}[per_decade]
    out = []
    base = 1
    while base <= n_max:
        for m in mult:
            v = m * base
            if start <= v <= n_max:
                out.append(v)
        base *= 10
    if not out or out[-1] != n_max:
        out.append(int(n_max))
    return tuple(sorted(set(out)))


def validate_checkpoints(checkpoints, limit):
    cps = [int(c) for c in checkpoints]
    if not cps:
        raise ValueError("no checkpoints")
    if cps[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    if cps[-1] > limit:
        raise ValueError(f"checkpoint {cps[-1]} exceeds the sieve limit {limit}")
    return cps


def weighted_partial_sums(mu, values, checkpoints):
    """``sum_{n<=N} mu(n) values[n-1]`` at each checkpoint, each segment summed with fsum."""
    out = []
    acc = []
    prev = 0
    for N in checkpoints:
        seg = mu[prev + 1 : N + 1].astype(np.float64) * values[prev:N]
        acc.append(math.fsum(seg.tolist()))
        out.append(math.fsum(acc))
        prev = N
    return out


@dataclass
class ConvergenceReport:
    checkpoints: list
    values: list
    system: str
    point: str
    function: str
    sup: float = math.inf
    job_id: str = ""
    wall_time: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.checkpoints, self.checkpoints[1:])):
            raise ValueError("checkpoints must be strictly increasing")
        if len(self.values) != len(self.checkpoints):
            raise ValueError("one value per checkpoint")
        # |S_N| <= sup|phi| up to the last ulp of fsum
        for N, v in zip(self.checkpoints, self.values):
            if abs(v) > self.sup * (1 + 1e-12):
                raise AssertionError(f"|S_{N}| = {abs(v)} exceeds sup|phi| = {self.sup}")

    @property
    def final(self):
        return self.values[-1]

    def at(self, N):
        return self.values[self.checkpoints.index(N)]

    def last_decade_max(self, decade=10.0):
        """``max |S_N|`` over checkpoints ``N >= N_max / decade``: the limsup proxy."""
        top = self.checkpoints[-1]
        return max(abs(v) for N, v in zip(self.checkpoints, self.values) if N * decade >= top)

    def decade_envelope(self, decade=10.0):
        """``(N, max |S_M| over checkpoints N/decade <= M <= N)``: the limsup proxy at each checkpoint."""
        out = []
        for N in self.checkpoints:
            window = [abs(v) for M, v in zip(self.checkpoints, self.values) if N <= M * decade and M <= N]
            out.append((N, max(window)))
        return out

    def envelope_nonincreasing(self, after=10_000, slack=0.2):
        """From ``after`` on, no envelope value exceeds ``(1 + slack)`` times the smallest earlier one."""
        return _nonincreasing([v for N, v in self.decade_envelope() if N >= after], slack)

    def raw_nonincreasing(self, after=10_000, slack=0.2):
        """The same test on ``|S_N|`` itself; oscillating sums usually fail it."""
        return _nonincreasing([abs(v) for N, v in zip(self.checkpoints, self.values) if N >= after], slack)

    def rows(self):
        for N, v in zip(self.checkpoints, self.values):
            yield (N, repr(float(v)), self.system, self.point, self.function, self.job_id)

    def to_csv(self, path=None, header=True):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_COLUMNS)
        w.writerows(self.rows())
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        return text

    def summary(self):
        return {
            "job-id": self.job_id,
            "system": self.system,
            "point": self.point,
            "function": self.function,
            "final_N": self.checkpoints[-1],
            "final_value": float(self.final),
            "last_decade_max": float(self.last_decade_max()),
            "bounded": all(abs(v) <= self.sup * (1 + 1e-12) for v in self.values),
        }


def _nonincreasing(seq, slack):
    return all(seq[i] <= (1 + slack) * min(seq[:i]) for i in range(1, len(seq)))


def read_report_csv(path):
    """Reports keyed by job id from a CSV written by :meth:`ConvergenceReport.to_csv`."""
    out = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rep = out.setdefault(row["job-id"], {"system": row["system"], "point": row["point"], "function": row["function"], "N": [], "value": []})
            rep["N"].append(int(row["N"]))
            rep["value"].append(float(row["value"]))
    return {
        k: ConvergenceReport(v["N"], v["value"], v["system"], v["point"], v["function"], job_id=k) for k, v in out.items()
    }


def describe_point(x):
    if x.vertex is not None:
        return f"v{x.vertex}"
    return f"e{x.edge}@{x.t!r}"


def s_average(table, sys, x, phi, checkpoints=DEFAULT_CHECKPOINTS, job_id=""):
    """One orbit pass, exact-rounded partial sums at every checkpoint."""
    t0 = time.perf_counter()
    cps = validate_checkpoints(checkpoints, table.limit)
    sys.space.check(x)
    vals = sys.orbit_values(x, cps[-1], phi)
    sums = weighted_partial_sums(table.mu, vals, cps)
    return ConvergenceReport(
        cps,
        [s / N for s, N in zip(sums, cps)],
        sys.describe(),
        describe_point(x),
        phi.description,
        sup=phi.sup,
        job_id=job_id,
        wall_time=time.perf_counter() - t0,
    )


def summary_json(reports, checks=None, path=None):
    """Deterministic JSON summary: per-job final values plus named pass/fail checks."""
    doc = {
        "jobs": [r.summary() for r in sorted(reports, key=lambda r: r.job_id)],
        "checks": dict(sorted((checks or {}).items())),
    }
    doc["all_passed"] = all(c.get("passed", False) for c in doc["checks"].values()) and all(j["bounded"] for j in doc["jobs"])
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return doc, text
