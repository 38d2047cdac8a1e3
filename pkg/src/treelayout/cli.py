"""Command line front end for the benchmark experiments."""

import argparse
import csv
import sys

from .bench import (
    STRATEGY_ALIASES, WorkloadSpec,
    bench_offline_potential, bench_online, bench_reorder_algorithms,
    emit_csv, generate_workload, online_threshold_sweep,
)
from .policy import PolicyConfig
from .reorder import ALGORITHMS
from .trees import TREE_KINDS


def _add_workload_args(p):
    p.add_argument("--seed", type=int, required=True,
                   help="workload seed (runs are reproducible per seed)")
    p.add_argument("--tree", choices=TREE_KINDS, required=True)
    p.add_argument("--n-write", type=int, default=1000)
    p.add_argument("--n-read", type=int, default=5000)
    p.add_argument("--hot-fraction", type=float, default=0.1)
    p.add_argument("--hot-weight", type=float, default=0.9)
    p.add_argument("--out", required=True, help="output CSV path")


def _spec(args):
    return WorkloadSpec(tree_kind=args.tree, n_write_keys=args.n_write,
                        n_reads=args.n_read, seed=args.seed,
                        hot_fraction=args.hot_fraction,
                        hot_weight=args.hot_weight)


def _cmd_gen_workload(args):
    writes, reads = generate_workload(_spec(args))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("op", "key", "value"))
        for k, v in writes:
            writer.writerow(("write", k, v))
        for k in reads:
            writer.writerow(("read", k, ""))
    print(f"wrote {len(writes)} writes and {len(reads)} reads to {args.out}")


def _cmd_bench_reorder(args):
    algorithms = args.algorithms.split(",") if args.algorithms else None
    if algorithms:
        for name in algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}")
    rows = bench_reorder_algorithms(_spec(args), algorithms)
    emit_csv(rows, args.out)
    for r in rows:
        print(f"{r.algorithm}: {r.copy_ops} copy ops, {r.wall_ns / 1e6:.2f} ms")


def _cmd_bench_offline(args):
    rows = bench_offline_potential(
        _spec(args), args.strategy, region0_frac=args.region0_frac,
        region_weights=tuple(float(w) for w in args.region_weights.split(",")))
    emit_csv(rows, args.out)
    by_phase = {r.phase: r for r in rows}
    base = by_phase["baseline-read"]
    re = by_phase["reordered-read"]
    if base.wall_ns:
        print(f"runtime ratio (reordered/baseline): {re.wall_ns / base.wall_ns:.4f}")
    if base.weighted_cost:
        print("weighted cost ratio (reordered/baseline): "
              f"{re.weighted_cost / base.weighted_cost:.4f}")


def _cmd_bench_online(args):
    spec = _spec(args)
    if args.thresholds:
        thresholds = [int(t) for t in args.thresholds.split(",")]
        rows = online_threshold_sweep(spec, args.strategy, thresholds,
                                      scope=args.scope)
    else:
        cfg = PolicyConfig(kind=args.policy,
                           access_threshold=args.access_threshold,
                           ratio_delta=args.ratio_delta,
                           ratio_guard_accesses=args.ratio_guard,
                           strategy=args.strategy, scope=args.scope)
        rows = bench_online(spec, cfg)
    emit_csv(rows, args.out)
    for r in rows:
        if r.phase in ("baseline-read", "online-read"):
            print(f"{r.phase} [{r.policy}]: {r.wall_ns / 1e6:.2f} ms, "
                  f"{r.reorders} reorders")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="treelayout",
        description="Benchmarks for in-memory tree node reordering.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-workload", help="emit a workload as CSV")
    _add_workload_args(p)
    p.set_defaults(func=_cmd_gen_workload)

    p = sub.add_parser("bench-reorder",
                       help="time all reorder algorithms on a shuffled tree")
    _add_workload_args(p)
    p.add_argument("--algorithms", default="",
                   help="comma list (default: all six)")
    p.set_defaults(func=_cmd_bench_reorder)

    p = sub.add_parser("bench-offline",
                       help="re-read runtime before vs after one reorder")
    _add_workload_args(p)
    p.add_argument("--strategy", default="path-reorder",
                   help="merge-sort, path-reorder, or a concrete algorithm")
    p.add_argument("--region0-frac", type=float, default=None,
                   help="put this share of slots into a cheap region 0")
    p.add_argument("--region-weights", default="1,3",
                   help="access cost weights of region 0 and 1")
    p.set_defaults(func=_cmd_bench_offline)

    p = sub.add_parser("bench-online",
                       help="baseline vs policy-triggered reordering")
    _add_workload_args(p)
    p.add_argument("--policy", default="access-threshold",
                   choices=("none", "access-threshold", "ratio-threshold"))
    p.add_argument("--strategy", default="native-path-reorder",
                   choices=sorted(ALGORITHMS))
    p.add_argument("--access-threshold", type=int, default=1 << 16)
    p.add_argument("--ratio-delta", type=float, default=0.3)
    p.add_argument("--ratio-guard", type=int, default=64)
    p.add_argument("--scope", default="full-tree",
                   choices=("full-tree", "subtree"))
    p.add_argument("--thresholds", default="",
                   help="comma list of access thresholds to sweep")
    p.set_defaults(func=_cmd_bench_online)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
