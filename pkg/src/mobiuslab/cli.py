"""Command-line entry point: ``mobiuslab {sieve,run,entropy,chowla,report}``.

Exit codes: 0 success (and every bound check passed), 1 some check failed,
2 invalid input or config, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from mobiuslab.analyzer import entropy_estimate, read_report_csv
from mobiuslab.arithmetic import CorrelationQuery, MobiusTable, chowla_sum, sieve_mobius
from mobiuslab.errors import CapacityError
from mobiuslab.suite import (
    ConfigError,
    bundled_config,
    data_dir,
    entropy_grid,
    load_config,
    load_or_sieve,
    run_config,
    write_outputs,
)
from mobiuslab.systems import build_system

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_CAPACITY = 0, 1, 2, 3


def _int(text):
    return int(float(text))


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _n_range(text):
    if "-" in text and "," not in text:
        a, b = text.split("-")
        return list(range(int(a), int(b) + 1))
    return _ints(text)


def _params(pairs):
    out = {}
    for p in pairs or []:
        if "=" not in p:
            raise ValueError(f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


def cmd_sieve(args):
    N = args.N
    if N < 1:
        raise ValueError("N must be >= 1")
    table = sieve_mobius(N, workers=args.workers, max_limit=args.max_limit)
    path = Path(args.dump) if args.dump else data_dir() / f"mobius_{N}.bin"
    path.parent.mkdir(parents=True, exist_ok=True)
    table.dump(path)
    digest = table.checksum()
    again = MobiusTable.load(path).checksum()
    print(f"N={N} M(N)={int(table.mertens[N])} dump={path} checksum={digest}")
    if again != digest:
        print(f"reload checksum mismatch: {again}", file=sys.stderr)
        return EXIT_FAIL
    print("reload: checksum verified")
    return EXIT_OK


def cmd_run(args):
    path = args.config or bundled_config()
    overrides = {"limit": args.limit, "seed": args.seed, "workers": args.workers, "out_dir": args.out}
    cfg = load_config(path, overrides)
    out = cfg.out_dir or str(data_dir() / "runs" / cfg.name)
    results = run_config(cfg, cache_dir=str(data_dir()))
    doc = write_outputs(cfg, results, out)
    failed = [k for k, c in doc["checks"].items() if not c["passed"]]
    for k, c in doc["checks"].items():
        if args.verbose or not c["passed"]:
            print(f"{'PASS' if c['passed'] else 'FAIL'} {k} value={c['value']} bound={c['bound']}")
    print(f"{len(results)} jobs, {len(doc['checks'])} checks, {len(failed)} failed; outputs in {out}")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_entropy(args):
    sys_ = build_system(args.system, _params(args.param))
    rng = np.random.default_rng(args.seed)
    grid = entropy_grid(sys_, args.grid, rng, args.grid_kind)
    est = entropy_estimate(sys_, _n_range(args.n), _floats(args.eps), grid)
    lines = ["n,eps,count"] + [f"{n},{e!r},{est.counts[(n, e)]}" for n in est.n_list for e in est.eps_list]
    text = "\n".join(lines) + "\n"
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    slopes = ", ".join(f"eps={e!r}: {s:.4f}" for e, s in est.slopes.items())
    print(f"estimate={est.value:.6f} ({slopes})", file=sys.stderr if not args.csv else sys.stdout)
    return EXIT_OK


def cmd_chowla(args):
    shifts = _ints(args.shifts)
    exps = _ints(args.exponents)
    q = CorrelationQuery(tuple(shifts), tuple(exps), args.N)
    table = load_or_sieve(args.N + (max(shifts) if shifts else 0), str(data_dir()))
    v = chowla_sum(table, q, args.function)
    print(f"function={args.function} shifts={shifts} exponents={exps} N={args.N} value={v!r}")
    return EXIT_OK


def cmd_report(args):
    rows = []
    for p in args.csv:
        for jid, rep in sorted(read_report_csv(p).items()):
            env = rep.envelope_nonincreasing(args.after, args.slack)
            rows.append((jid, rep.system, rep.function, rep.checkpoints[-1], rep.final, rep.last_decade_max(), env))
    if args.json:
        keys = ("job-id", "system", "function", "N", "final", "last_decade_max", "envelope_nonincreasing")
        print(json.dumps([dict(zip(keys, r)) for r in rows], indent=2))
    else:
        print(f"{'job-id':32} {'N':>9} {'final':>12} {'decade max':>12} envelope")
        for jid, _, _, N, fin, ldm, env in rows:
            print(f"{jid:32} {N:>9} {fin:>12.4e} {ldm:>12.4e} {'ok' if env else 'rises'}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="mobiuslab", description="Möbius disjointness experiments on graph and dendrite maps.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve", help="sieve mu and lambda up to N, dump the table and verify the reload")
    s.add_argument("N", type=_int)
    s.add_argument("--dump", help="output path (default: $MOBIUSLAB_DATA_DIR/mobius_N.bin)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--max-limit", type=_int, default=200_000_000)
    s.set_defaults(fn=cmd_sieve)

    r = sub.add_parser("run", help="run a YAML experiment config (default: the bundled paper suite)")
    r.add_argument("config", nargs="?")
    r.add_argument("--workers", type=int)
    r.add_argument("--seed", type=int)
    r.add_argument("--limit", type=_int, help="override sieve.limit")
    r.add_argument("--out", help="override output.dir")
    r.add_argument("-v", "--verbose", action="store_true", help="print every check, not only failures")
    r.set_defaults(fn=cmd_run)

    e = sub.add_parser("entropy", help="greedy separated-set entropy estimate")
    e.add_argument("--system", required=True)
    e.add_argument("--param", action="append", metavar="KEY=VALUE")
    e.add_argument("--n", default="1-10", help="range a-b or list a,b,c")
    e.add_argument("--eps", default="0.2,0.1")
    e.add_argument("--grid", type=_int, default=10_000)
    e.add_argument("--grid-kind", choices=("uniform", "random"), default="uniform")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--csv")
    e.set_defaults(fn=cmd_entropy)

    c = sub.add_parser("chowla", help="normalized correlation of mu (or lambda) with shifts")
    c.add_argument("--N", type=_int, default=1_000_000)
    c.add_argument("--shifts", default="1")
    c.add_argument("--exponents", default="1,1")
    c.add_argument("--function", choices=("mu", "liouville"), default="mu")
    c.set_defaults(fn=cmd_chowla)

    rp = sub.add_parser("report", help="summarize report CSVs written by 'run'")
    rp.add_argument("csv", nargs="+")
    rp.add_argument("--json", action="store_true")
    rp.add_argument("--after", type=_int, default=10_000)
    rp.add_argument("--slack", type=float, default=0.2)
    rp.set_defaults(fn=cmd_report)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConfigError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
