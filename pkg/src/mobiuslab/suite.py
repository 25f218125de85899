"""Config-driven experiment suites: parse, run jobs (optionally in parallel), write outputs.

A config is a YAML document::

    name: demo
    seed: 7
    sieve: {limit: 1000000}
    checkpoints: [1000, 10000, 100000, 1000000]   # optional
    workers: 1
    output: {dir: out}
    jobs:
      - id: rotation
        type: average                 # the default
        system: {tag: rotation, theta: golden}
        sample: 2                     # or points: [{edge: 0, t: 0.25}]
        functions: [{kind: psi_U, free_arc: [0, 0.1, 0.7]}, {kind: cos}]
        checks: {final_below: 0.01}

Every job is a pure function of its own entry, the sieve table and a seed
derived from ``(seed, job id)``, so outputs do not depend on the worker
count or on scheduling.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from mobiuslab import oracles
from mobiuslab.analyzer import (
    DEFAULT_CHECKPOINTS,
    STRADDLING,
    ConvergenceReport,
    asymptotic_transfer_check,
    circle_cosine,
    constant_function,
    distance_to,
    entropy_estimate,
    ergodic_bound_decomposition,
    exhaustive_counts,
    interval_cosine,
    psi_U,
    s_average,
    solenoid_case_split,
    tabulated,
    verify_separated_maximal,
)
from mobiuslab.arithmetic import (
    CorrelationQuery,
    GapSequenceSpec,
    chowla_sum,
    mean_mobius,
    mertens,
    progression_mean,
    sieve_mobius,
)
from mobiuslab.errors import CapacityError
from mobiuslab.systems import KNOWN_TAGS, build_system, make_nested_decomposition, make_solenoid, parse_point
from mobiuslab.topology import ComponentRegion, FreeArc, build_universal_dendrite
from mobiuslab.topology.checks import run_topology_suite

DATA_ENV = "MOBIUSLAB_DATA_DIR"


class ConfigError(ValueError):
    """The experiment config is malformed."""


def data_dir():
    """Default directory for sieve dumps and run outputs (``$MOBIUSLAB_DATA_DIR`` or ``./mobiuslab-data``)."""
    return Path(os.environ.get(DATA_ENV, "mobiuslab-data"))


def bundled_config(name="paper_suite"):
    return Path(__file__).parent / "data" / f"{name}.yaml"


# --- config -----------------------------------------------------------------


@dataclass
class ExperimentConfig:
    name: str
    limit: int
    jobs: list
    seed: int = 0
    checkpoints: tuple = DEFAULT_CHECKPOINTS
    workers: int = 1
    out_dir: str = ""
    source: dict = field(default_factory=dict, repr=False)


def load_config(path_or_doc, overrides=None):
    """Parse and validate a config; ``overrides`` replaces scalar fields (limit, seed, workers, out_dir)."""
    if isinstance(path_or_doc, dict):
        doc = path_or_doc
    else:
        try:
            with open(path_or_doc, encoding="utf-8") as fh:
                doc = yaml.safe_load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except yaml.YAMLError as exc:
            raise ConfigError(f"config is not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping")
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    try:
        limit = int(overrides.get("limit", doc.get("sieve", {}).get("limit", 0)))
        seed = int(overrides.get("seed", doc.get("seed", 0)))
        workers = int(overrides.get("workers", doc.get("workers", 1)))
    except (TypeError, ValueError, AttributeError) as exc:
        raise ConfigError(f"bad scalar field: {exc}") from None
    cps = doc.get("checkpoints", "default")
    cps = DEFAULT_CHECKPOINTS if cps == "default" else tuple(int(float(c)) for c in cps)
    if any(b <= a for a, b in zip(cps, cps[1:])) or not cps or cps[0] < 1:
        raise ConfigError("checkpoints must be positive and strictly increasing")
    if limit < 1:
        raise ConfigError("sieve.limit must be >= 1")
    if workers < 1:
        raise ConfigError("workers must be >= 1")
    jobs = doc.get("jobs")
    if not isinstance(jobs, list) or not jobs:
        raise ConfigError("config needs a nonempty 'jobs' list")
    seen = set()
    for j in jobs:
        if not isinstance(j, dict) or "id" not in j:
            raise ConfigError("every job needs an 'id'")
        jid = str(j["id"])
        if jid in seen:
            raise ConfigError(f"duplicate job id {jid!r}")
        seen.add(jid)
        kind = j.get("type", "average")
        if kind not in JOB_TYPES:
            raise ConfigError(f"job {jid!r}: unknown type {kind!r}; known types: {', '.join(sorted(JOB_TYPES))}")
        tag = (j.get("system") or {}).get("tag") if isinstance(j.get("system"), dict) else j.get("system")
        if tag is not None and tag not in KNOWN_TAGS:
            raise ConfigError(f"job {jid!r}: unknown system tag {tag!r}; known tags: {', '.join(KNOWN_TAGS)}")
        need = _job_max_n(j, cps)
        if need > limit:
            raise ConfigError(f"job {jid!r} needs mu up to {need} but sieve.limit is {limit}")
    out_dir = str(overrides.get("out_dir", doc.get("output", {}).get("dir", "")))
    return ExperimentConfig(str(doc.get("name", "suite")), limit, jobs, seed, tuple(cps), workers, out_dir, doc)


def _job_max_n(job, cps):
    kind = job.get("type", "average")
    if kind in ("sieve", "entropy", "topology", "nested"):
        return 1
    if kind == "chowla":
        top = max((max(q.get("shifts", [0]) or [0]) for q in job.get("queries", [])), default=0)
        return int(float(job["N"])) + int(top)
    if kind in ("mertens", "progressions"):
        return int(float(job["N"]))
    return int(float(job.get("N", 0))) or int(_checkpoints(job, cps)[-1])


def _checkpoints(job, cps):
    if "checkpoints" in job:
        return tuple(int(float(c)) for c in job["checkpoints"])
    if "N" in job:
        n = int(float(job["N"]))
        return tuple(c for c in cps if c < n) + (n,)
    return tuple(cps)


def job_rng(seed, job_id):
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(str(job_id).encode())]))


# --- results ------------------------------------------------------------------


@dataclass
class JobResult:
    job_id: str
    reports: list = field(default_factory=list)
    columns: tuple = ()
    rows: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    wall_time: float = field(default=0.0, compare=False)

    def check(self, name, passed, value=None, bound=None, detail=""):
        self.checks[f"{self.job_id}:{name}"] = {
            "passed": bool(passed),
            "value": _jsonable(value),
            "bound": _jsonable(bound),
            "detail": detail,
        }

    def csv_text(self):
        """Report CSV when the job produced convergence reports, else its table."""
        if self.reports:
            parts = [self.reports[0].to_csv()] + [r.to_csv(header=False) for r in self.reports[1:]]
            return "".join(parts)
        return self.table_text()

    def table_text(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows([[_cell(v) for v in row] for row in self.rows])
        return buf.getvalue()


def _cell(v):
    return repr(float(v)) if isinstance(v, (float, np.floating)) else v


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(u) for u in v]
    return v


# --- helpers shared by jobs ------------------------------------------------------


def _system(job):
    spec = dict(job.get("system") or {})
    if "tag" not in spec:
        raise ConfigError(f"job {job['id']!r}: system needs a 'tag'")
    tag = spec.pop("tag")
    return build_system(tag, spec)


def _points(sys, job, rng):
    if "points" in job:
        return [parse_point(sys.space, p) for p in job["points"]]
    return [sys.sample(rng) for _ in range(int(job.get("sample", 1)))]


def _edge(sys, spec):
    if isinstance(spec, dict) and "word" in spec:
        return sys.dendrite.arc_edges(tuple(spec["word"]))[0]
    return int(spec)


def make_function(sys, spec):
    kind = spec.get("kind")
    space = sys.space
    if kind == "psi_U":
        if "free_arc" in spec:
            e, lo, hi = spec["free_arc"]
            U = FreeArc(space, _edge(sys, e), float(lo), float(hi))
        elif "component" in spec:
            c = spec["component"]
            U = ComponentRegion(space, parse_point(space, c["cut"]), parse_point(space, c["toward"]))
        else:
            raise ConfigError("psi_U needs 'free_arc' or 'component'")
        return psi_U(space, U)
    if kind == "cos":
        return circle_cosine(sys) if sys.descriptor == "rotation" else interval_cosine(sys)
    if kind == "distance":
        base = parse_point(space, spec.get("base", {"vertex": 0}))
        return distance_to(space, base, float(spec.get("scale", 1.0)), float(spec.get("shift", 0.0)))
    if kind == "constant":
        return constant_function(spec.get("value", 1.0))
    if kind == "tabulated":
        vals = {parse_point(space, p): float(v) for p, v in spec["values"]}
        return tabulated(vals, float(spec.get("default", 0.0)))
    raise ConfigError(f"unknown function kind {kind!r}")


# --- jobs -----------------------------------------------------------------------------


def job_average(job, table, cps, rng, res):
    sys = _system(job)
    points = _points(sys, job, rng)
    fns = [make_function(sys, f) for f in job.get("functions", [{"kind": "constant", "value": 1.0}])]
    checks = job.get("checks", {})
    for i, x in enumerate(points):
        for j, phi in enumerate(fns):
            rep = s_average(table, sys, x, phi, _checkpoints(job, cps), job_id=f"{res.job_id}#p{i}f{j}")
            res.reports.append(rep)
            tag = f"p{i}f{j}"
            res.check(f"{tag}:bounded", all(abs(v) <= phi.sup * (1 + 1e-12) for v in rep.values), max(abs(v) for v in rep.values), phi.sup)
            if "final_below" in checks:
                res.check(f"{tag}:final_below", abs(rep.final) < checks["final_below"], abs(rep.final), checks["final_below"])
            if "last_decade_below" in checks:
                b = float(checks["last_decade_below"])
                res.check(f"{tag}:last_decade_below", rep.last_decade_max() <= b, rep.last_decade_max(), b)
            if "envelope_nonincreasing" in checks:
                c = checks["envelope_nonincreasing"] or {}
                after, slack = int(float(c.get("after", 10_000))), float(c.get("slack", 0.2))
                ok = rep.envelope_nonincreasing(after, slack)
                res.check(f"{tag}:envelope_nonincreasing", ok, [v for _, v in rep.decade_envelope()], slack)


def job_sieve(job, table, cps, rng, res):
    n = int(float(job.get("N", 10_000)))
    small = sieve_mobius(n)
    res.columns = ("n", "mu", "lambda")
    bad_mu = [k for k in range(1, n + 1) if small.mu[k] != oracles.mu_trial(k)]
    bad_lam = [k for k in range(1, n + 1) if small.lam[k] != oracles.liouville_trial(k)]
    divsum = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        divsum[d::d] += small.mu[d]
    bad_div = [k for k in range(2, n + 1) if divsum[k] != 0]
    res.rows = [(k, int(small.mu[k]), int(small.lam[k])) for k in range(1, min(n, 100) + 1)]
    res.check("mu_matches_trial_division", not bad_mu, len(bad_mu), 0)
    res.check("lambda_matches_trial_division", not bad_lam, len(bad_lam), 0)
    res.check("divisor_sum_vanishes", not bad_div and divsum[1] == 1, len(bad_div), 0)


def job_mertens(job, table, cps, rng, res):
    N = int(float(job["N"]))
    tol = float(job.get("tol", 1e-3))
    M = mertens(table, N)
    ref = oracles.mertens_recursive(N)
    res.columns = ("N", "M(N)", "mean")
    for c in _checkpoints(job, cps):
        res.rows.append((c, mertens(table, c), mean_mobius(table, c)))
    res.check("matches_independent_mertens", M == ref, M, ref)
    res.check("mean_below", abs(M / N) < tol, abs(M / N), tol)


def job_progressions(job, table, cps, rng, res):
    N = int(float(job["N"]))
    m_max = int(job.get("m_max", 12))
    tol = float(job.get("tol", 1e-2))
    res.columns = ("m", "a", "mean")
    worst = 0.0
    for m in range(1, m_max + 1):
        for a in range(m):
            v = progression_mean(table, N, a, m)
            res.rows.append((m, a, v))
            worst = max(worst, abs(v))
    res.check("max_progression_mean", worst < tol, worst, tol)


def job_gap(job, table, cps, rng, res):
    ks = [int(k) for k in job.get("ks", [10, 100, 1000])]
    count = int(job.get("count", 20))
    slack = float(job.get("slack", 0.01))
    transient = int(job.get("transient", 0))
    weighted = bool(job.get("weighted", False))
    checks_n = _checkpoints(job, cps)
    res.columns = ("k", "sequence", "last_decade_max", "bound")
    for k in ks:
        worst = 0.0
        for s in range(count):
            spec = GapSequenceSpec.random(k, rng, transient=transient)
            x = spec.generate(checks_n[-1])
            if weighted:
                x = x * table.mu[1 : checks_n[-1] + 1]
            sums = [math.fsum(x[:N].tolist()) / N for N in checks_n]
            top = checks_n[-1]
            ldm = max(abs(v) for N, v in zip(checks_n, sums) if 10 * N >= top)
            worst = max(worst, ldm)
            res.rows.append((k, s, ldm, 1.0 / k + slack))
        res.check(f"k={k}", worst <= 1.0 / k + slack, worst, 1.0 / k + slack)


def straddling_region(sol, level, rng, through=None):
    """An open arc that straddles one level-``level`` interval, ending in the following gap.

    With ``through`` the interval is the one holding that point and the arc
    starts halfway between the interval's left end and the point.
    """
    comps = sol.components(level)
    order = sorted(comps, key=lambda c: comps[c][0])
    if through is None:
        c = order[int(rng.integers(0, len(order)))]
        lo, hi = comps[c]
        start = 0.5 * (lo + hi)
    else:
        c = sol.component_index(through, level)
        if c is None:
            raise ValueError("point is not in a level-%d interval" % level)
        lo, hi = comps[c]
        start = 0.5 * (lo + sol.coordinate(through))
    pos = order.index(c)
    nxt = comps[order[pos + 1]][0] if pos + 1 < len(order) else 1.0
    return FreeArc(sol.space, 0, start, 0.5 * (hi + nxt))


def job_solenoid(job, table, cps, rng, res):
    sol = make_solenoid(job.get("levels", [2, 4, 8, 16]), float(job.get("gap", 1.0 / 3.0)))
    level = int(job.get("level", sol.depth))
    slack = float(job.get("slack", 0.05))
    res.columns = ("point", "component", "case", "visits", "contribution", "bound")
    for i, x in enumerate(_points(sol, job, rng)):
        # through f(x): visits at n = 1 (mod k), a class where mu does not vanish identically
        U = FreeArc(sol.space, 0, *map(float, job["U"])) if "U" in job else straddling_region(sol, level, rng, through=sol.step(x))
        sp = solenoid_case_split(table, sol, x, U, level, _checkpoints(job, cps), slack=slack)
        sp.report.job_id = f"{res.job_id}#p{i}"
        res.reports.append(sp.report)
        for r in sp.rows:
            res.rows.append((i, r.component, r.case, r.visits, r.contribution, r.bound))
        recon = sp.transient + math.fsum(r.contribution for r in sp.rows)
        res.check(f"p{i}:bound", sp.passed, sp.last_decade_max, sp.bound + slack)
        res.check(f"p{i}:straddling_at_most_2", sp.straddling_count <= 2, sp.straddling_count, 2)
        res.check(f"p{i}:split_sums_to_total", abs(recon - sp.total) <= 1e-12, abs(recon - sp.total), 1e-12)
        for r in sp.rows:
            if r.case == STRADDLING and abs(r.contribution) > 1.0 / sp.k + 1e-12:
                res.check(f"p{i}:c{r.component}:straddling_gap_bound", False, abs(r.contribution), 1.0 / sp.k)


def job_nested(job, table, cps, rng, res):
    ns = [int(n) for n in job.get("n", [2, 3, 2])]
    horizon = int(float(job.get("horizon", 10_000)))
    sys = make_nested_decomposition(ns)
    res.columns = ("point", "level", "period", "start_piece", "mismatches")
    for i, x in enumerate(_points(sys, job, rng)):
        orbit = sys.orbit(x, horizon)
        for level in range(1, len(ns) + 1):
            period = math.prod(ns[:level])
            s0 = sys.piece_index(x, level)
            bad = 0
            for m, p in enumerate(orbit):
                # f^m(x) lies in f^s(D_level) exactly when m = s - s0 (mod period)
                idx = sys.piece_index(p, level)
                if s0 is None or idx != (s0 + m) % period:
                    bad += 1
            res.rows.append((i, level, period, s0, bad))
            res.check(f"p{i}:level{level}:itinerary", bad == 0, bad, 0)


def job_ergodic_bound(job, table, cps, rng, res):
    sys = _system(job)
    fn_spec = job.get("function", {"kind": "distance"})
    if fn_spec.get("kind") == "distance" and "base" not in fn_spec:
        phi = distance_to(sys.space, sys.fixed_point)
    else:
        phi = make_function(sys, fn_spec)
    at = int(float(job.get("term1_at", 10_000)))
    tol = float(job.get("term1_tol", 1e-2))
    res.columns = ("point", "N", "abs_S", "term1", "term2", "holds")
    for i, x in enumerate(_points(sys, job, rng)):
        rows = ergodic_bound_decomposition(table, sys, x, phi, _checkpoints(job, cps))
        for r in rows:
            res.rows.append((i, r.N, r.s_abs, r.term1, r.term2, r.holds))
        res.check(f"p{i}:inequality_exact", all(r.holds for r in rows), min(r.slack for r in rows), 0.0)
        hit = [r for r in rows if r.N == at]
        if hit:
            res.check(f"p{i}:term1_at_{at}", hit[0].term1 < tol, hit[0].term1, tol)


def job_entropy(job, table, cps, rng, res):
    sys = _system(job)
    n_list = [int(n) for n in job.get("n", range(1, 11))]
    eps_list = [float(e) for e in job.get("eps", [0.2, 0.1])]
    size = int(float(job.get("grid", 10_000)))
    grid = entropy_grid(sys, size, rng, job.get("grid_kind", "uniform"))
    est = entropy_estimate(sys, n_list, eps_list, grid)
    res.columns = ("n", "eps", "count")
    for n in est.n_list:
        for e in est.eps_list:
            res.rows.append((n, e, est.counts[(n, e)]))
    lo, hi = job.get("expect", [0.0, math.inf])
    res.check("estimate_in_range", lo <= est.value <= hi, est.value, [lo, hi])
    mono = all(
        est.counts[(a, e)] <= est.counts[(b, e)] for e in est.eps_list for a, b in zip(est.n_list, est.n_list[1:])
    ) and all(est.counts[(n, a)] <= est.counts[(n, b)] for n in est.n_list for a, b in zip(est.eps_list, est.eps_list[1:]))
    res.check("monotone_table", mono)
    ex = int(float(job.get("exhaustive_grid", 0)))
    if ex:
        g2 = entropy_grid(sys, ex, rng, "random")
        small = entropy_estimate(sys, n_list, eps_list, g2)
        ref_counts, _ = exhaustive_counts(sys, g2, n_list, eps_list)
        res.check("greedy_matches_exhaustive", ref_counts == small.counts, sum(small.counts.values()))
        n, e = small.n_list[-1], small.eps_list[-1]
        if ex <= int(job.get("verify_limit", 600)):
            res.check("kept_set_separated_and_maximal", verify_separated_maximal(sys, g2, n, e, small.kept[(n, e)]))


def entropy_grid(sys, size, rng, kind="uniform"):
    if kind == "uniform" and hasattr(sys, "at"):
        return [sys.at((i + 0.5) / size) for i in range(size)]
    return [sys.sample(rng) for _ in range(size)]


def job_transfer(job, table, cps, rng, res):
    sys = _system(job)
    phi = make_function(sys, job.get("function", {"kind": "distance"}))
    pairs = int(job.get("pairs", 10))
    tol = float(job.get("tol", 1e-3))
    res.columns = ("pair", "N", "deviation")
    chk = _checkpoints(job, cps)
    worst = 0.0
    for i in range(pairs):
        x, y = sys.sample(rng), sys.sample(rng)
        tr = asymptotic_transfer_check(table, sys, x, y, phi, chk, eps=tol)
        for N, d in zip(chk, tr.deviations):
            res.rows.append((i, N, d))
        worst = max(worst, tr.max_deviation)
        res.check(f"pair{i}:epsilon_split", tr.split_holds, tr.max_deviation, tol)
    res.check("max_deviation", worst < tol, worst, tol)


def job_topology(job, table, cps, rng, res):
    model = build_universal_dendrite(int(job.get("m", 4)), float(job.get("decay", 0.5)), int(job.get("D", 8)))
    out = run_topology_suite(model, rng, samples=int(job.get("samples", 200)))
    res.columns = ("check", "cases", "failures")
    for name, (cases, failures) in sorted(out.items()):
        res.rows.append((name, cases, failures))
        res.check(name, failures == 0 and cases > 0, failures, 0)


def job_chowla(job, table, cps, rng, res):
    N = int(float(job["N"]))
    fn = job.get("function", "mu")
    tol = job.get("tol")
    res.columns = ("shifts", "exponents", "N", "value")
    for q in job.get("queries", [{"shifts": [1], "exponents": [1, 1]}]):
        cq = CorrelationQuery(tuple(q["shifts"]), tuple(q["exponents"]), N)
        v = chowla_sum(table, cq, fn)
        key = "|".join(map(str, cq.shifts))
        res.rows.append((key, "|".join(map(str, cq.exponents)), N, v))
        if tol is not None:
            res.check(f"shifts={key}:exps={'|'.join(map(str, cq.exponents))}", abs(v) < float(tol), abs(v), float(tol))


JOB_TYPES = {
    "average": job_average,
    "sieve": job_sieve,
    "mertens": job_mertens,
    "progressions": job_progressions,
    "gap": job_gap,
    "solenoid": job_solenoid,
    "nested": job_nested,
    "ergodic-bound": job_ergodic_bound,
    "entropy": job_entropy,
    "transfer": job_transfer,
    "topology": job_topology,
    "chowla": job_chowla,
}


# --- running ------------------------------------------------------------------------

_TABLES = {}


def _table(limit, cache_dir=None):
    t = _TABLES.get(limit)
    if t is None:
        t = load_or_sieve(limit, cache_dir)
        _TABLES[limit] = t
    return t


def load_or_sieve(limit, cache_dir=None):
    """Reuse ``mobius_<limit>.bin`` from ``cache_dir`` if present, else sieve."""
    from mobiuslab.arithmetic import MobiusTable

    if cache_dir:
        p = Path(cache_dir) / f"mobius_{limit}.bin"
        if p.exists():
            try:
                return MobiusTable.load(p)
            except ValueError:
                pass
    return sieve_mobius(limit)


def run_job(job, limit, cps, seed, cache_dir=None):
    jid = str(job["id"])
    res = JobResult(jid)
    table = _table(limit, cache_dir)
    t0 = time.perf_counter()
    JOB_TYPES[job.get("type", "average")](job, table, cps, job_rng(seed, jid), res)
    res.wall_time = time.perf_counter() - t0
    return res


def _run_job_star(args):
    return run_job(*args)


def run_config(cfg, cache_dir=None):
    """Run every job; the result list is ordered by job id whatever the worker count."""
    args = [(job, cfg.limit, cfg.checkpoints, cfg.seed, cache_dir) for job in cfg.jobs]
    if cfg.workers == 1 or len(args) == 1:
        results = [run_job(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, len(args))) as pool:
            results = list(pool.map(_run_job_star, args))
    return sorted(results, key=lambda r: r.job_id)


def write_outputs(cfg, results, out_dir):
    """One CSV per job plus ``summary.json``; returns the summary document."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    checks = {}
    jobs = []
    for r in results:
        (out / f"{r.job_id}.csv").write_text(r.csv_text(), encoding="utf-8")
        if r.reports and r.rows:
            (out / f"{r.job_id}.table.csv").write_text(r.table_text(), encoding="utf-8")
        checks.update(r.checks)
        jobs.append(
            {
                "id": r.job_id,
                "reports": [rep.summary() for rep in r.reports],
                "passed": all(c["passed"] for c in r.checks.values()),
            }
        )
    doc = {
        "name": cfg.name,
        "seed": cfg.seed,
        "sieve_limit": cfg.limit,
        "checkpoints": list(cfg.checkpoints),
        "jobs": jobs,
        "checks": dict(sorted(checks.items())),
        "all_passed": all(c["passed"] for c in checks.values()),
    }
    (out / "summary.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return doc


__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "JobResult",
    "CapacityError",
    "ConvergenceReport",
    "bundled_config",
    "data_dir",
    "load_config",
    "run_config",
    "write_outputs",
]
