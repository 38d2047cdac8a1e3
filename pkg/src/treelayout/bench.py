"""Workload generation, experiment orchestration, and CSV metrics output.

Three experiment families:

* :func:`bench_reorder_algorithms` builds a tree, profiles it, shuffles the
  slots uniformly, and times every reorder algorithm from identical copies
  of that shuffled state.
* :func:`bench_offline_potential` measures re-reading the whole read set
  before and after a one-shot reorder (runtime and simulated region cost).
* :func:`bench_online` compares a plain run against a run with an online
  trigger policy attached to every lookup.

Everything except wall-clock fields is deterministic in (spec, seed).
"""

import csv
import random
import time
from bisect import bisect_right
from dataclasses import dataclass, field

from .arena import ArenaFull, MemoryRegion
from .freq import AccessModel
from .policy import PolicyConfig, after_tree_op_hook
from .reorder import ALGORITHMS
from .trees import MASK63, TREE_KINDS, new_tree

# Aliases: the two order strategies, each realized by its cheapest algorithm.
STRATEGY_ALIASES = {
    "merge-sort": "map-buffer-merge-sort",
    "path-reorder": "native-path-reorder",
}

CSV_COLUMNS = ("experiment", "tree", "algorithm", "policy", "n_write",
               "n_read", "seed", "phase", "wall_ns", "copy_ops", "reorders",
               "weighted_cost", "fingerprint")


@dataclass(frozen=True)
class WorkloadSpec:
    tree_kind: str
    n_write_keys: int
    n_reads: int
    seed: int
    hot_fraction: float = 0.1
    hot_weight: float = 0.9

    def __post_init__(self):
        if self.tree_kind not in TREE_KINDS:
            raise ValueError(f"unknown tree kind {self.tree_kind!r}")
        if self.n_write_keys < 0 or self.n_reads < 0:
            raise ValueError("negative workload sizes")
        if not 0.0 < self.hot_fraction < 1.0:
            raise ValueError("hot_fraction must be in (0, 1)")
        if not self.hot_fraction <= self.hot_weight < 1.0:
            raise ValueError("need hot_fraction <= hot_weight < 1")


@dataclass
class RunMetrics:
    """One measured phase; maps 1:1 onto a CSV row."""

    experiment: str
    tree: str
    algorithm: str = "-"
    policy: str = "-"
    n_write: int = 0
    n_read: int = 0
    seed: int = 0
    phase: str = "-"
    wall_ns: int = 0
    copy_ops: int = 0
    reorders: int = 0
    weighted_cost: float = 0.0
    fingerprint: str = "-"
    region_counts: list = field(default_factory=list)  # not part of the CSV

    def to_row(self):
        return [getattr(self, c) for c in CSV_COLUMNS]


def generate_workload(spec):
    """Deterministic (writes, reads) for a spec.

    Writes are unique uniform 64-bit keys (also unique in their low 63 bits
    so the octree sees them as distinct points) with random values.  Reads
    draw from a hot subset of the keys with probability ``hot_weight`` and
    uniformly from the rest otherwise.
    """
    rng = random.Random(spec.seed)
    n = spec.n_write_keys
    if n == 0:
        return [], []
    keys = []
    seen = set()
    while len(keys) < n:
        k = rng.getrandbits(64)
        low = k & MASK63
        if low in seen:
            continue
        seen.add(low)
        keys.append(k)
    writes = [(k, rng.getrandbits(64)) for k in keys]
    shuffled = keys[:]
    rng.shuffle(shuffled)
    hot_count = max(1, round(spec.hot_fraction * n))
    hot = shuffled[:hot_count]
    cold = shuffled[hot_count:]
    reads = []
    for _ in range(spec.n_reads):
        if cold and rng.random() >= spec.hot_weight:
            reads.append(cold[rng.randrange(len(cold))])
        else:
            reads.append(hot[rng.randrange(len(hot))])
    return writes, reads


def _default_capacity(kind, n_write):
    if kind == "octree":
        return 2 * n_write + 8
    return n_write + 8


def build_tree(spec, writes, regions=None, capacity=None, fanout=16):
    """Build the tree for a write set, growing the arena on overflow.

    Octree and fanout-tree node counts are not known up front, so with the
    default single-region arena a full arena simply doubles the capacity and
    rebuilds (the insert sequence is deterministic).  Explicit regions are
    used as given and overflow is an error.
    """
    kind = spec.tree_kind
    if regions is not None:
        arena, tree = new_tree(kind, regions=regions, fanout=fanout)
        for k, v in writes:
            tree.insert(k, v)
        return arena, tree
    cap = capacity or _default_capacity(kind, len(writes))
    while True:
        try:
            arena, tree = new_tree(kind, capacity=cap, fanout=fanout)
            for k, v in writes:
                tree.insert(k, v)
            return arena, tree
        except ArenaFull:
            cap *= 2


def profile_reads(tree, model, reads):
    lookup = tree.lookup_path
    for k in reads:
        lookup(k, model)


def shuffle_layout(arena, tree, seed):
    """Uniform random slot permutation, applied with link-preserving swaps."""
    rng = random.Random(seed)
    n = arena.next_free
    swap = arena.swap_nodes
    for i in range(n - 1, 0, -1):
        j = rng.randrange(i + 1)
        if j != i:
            swap(tree, i, j)


def clone_state(arena, tree, model):
    a2 = arena.clone()
    return a2, tree.clone(a2), model.clone()


def _timed_reads(tree, reads):
    lookup = tree.lookup
    t0 = time.perf_counter_ns()
    for k in reads:
        lookup(k)
    return time.perf_counter_ns() - t0


def _read_cost(arena, tree, reads):
    """Weighted region cost and per-region counts of replaying the reads."""
    counts = [0] * len(arena.regions)
    cum = arena._cum_caps
    lookup_path = tree.lookup_path
    for k in reads:
        for s in lookup_path(k)[1]:
            counts[bisect_right(cum, s)] += 1
    weights = [r.access_cost_weight for r in arena.regions]
    cost = sum(c * w for c, w in zip(counts, weights))
    return cost, counts


def bench_reorder_algorithms(spec, algorithms=None, shuffle_seed=None):
    """Time every algorithm from identical shuffled states; one row each."""
    if algorithms is None:
        algorithms = list(ALGORITHMS)
    writes, reads = generate_workload(spec)
    arena, tree = build_tree(spec, writes)
    model = AccessModel()
    profile_reads(tree, model, reads)
    shuffle_layout(arena, tree, spec.seed if shuffle_seed is None else shuffle_seed)
    rows = []
    for name in algorithms:
        a2, t2, m2 = clone_state(arena, tree, model)
        copies = a2.copy_ops
        t0 = time.perf_counter_ns()
        ALGORITHMS[name](a2, t2, m2)
        wall = time.perf_counter_ns() - t0
        rows.append(RunMetrics(
            experiment="reorder-algorithms", tree=spec.tree_kind,
            algorithm=name, n_write=spec.n_write_keys, n_read=spec.n_reads,
            seed=spec.seed, phase="reorder", wall_ns=wall,
            copy_ops=a2.copy_ops - copies, reorders=1,
            fingerprint=a2.layout_fingerprint()))
    return rows


def two_region_split(total_slots, region0_frac=0.125, weights=(1.0, 3.0)):
    """Region pair putting a `region0_frac` share of slots in cheap memory."""
    cap0 = max(1, int(total_slots * region0_frac))
    if cap0 >= total_slots:
        cap0 = total_slots - 1
    return [MemoryRegion(0, cap0, 0, weights[0]),
            MemoryRegion(1, total_slots - cap0, 1, weights[1])]


def bench_offline_potential(spec, strategy, region0_frac=None,
                            region_weights=(1.0, 3.0)):
    """Baseline re-read vs reorder-then-re-read, identical read sequences."""
    algorithm = STRATEGY_ALIASES.get(strategy, strategy)
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown strategy {strategy!r}")
    writes, reads = generate_workload(spec)
    arena, tree = build_tree(spec, writes)
    if region0_frac is not None:
        # re-home the nodes onto a two-region arena of the exact total size
        regions = two_region_split(arena.next_free, region0_frac, region_weights)
        arena, tree = build_tree(spec, writes, regions=regions)
    model = AccessModel()
    t0 = time.perf_counter_ns()
    profile_reads(tree, model, reads)
    profile_wall = time.perf_counter_ns() - t0

    common = dict(experiment="offline-potential", tree=spec.tree_kind,
                  algorithm=algorithm, n_write=spec.n_write_keys,
                  n_read=spec.n_reads, seed=spec.seed)
    rows = [RunMetrics(phase="profile", wall_ns=profile_wall,
                       fingerprint=arena.layout_fingerprint(), **common)]

    base_wall = _timed_reads(tree, reads)
    base_cost, base_counts = _read_cost(arena, tree, reads)
    rows.append(RunMetrics(phase="baseline-read", wall_ns=base_wall,
                           weighted_cost=base_cost, region_counts=base_counts,
                           fingerprint=arena.layout_fingerprint(), **common))

    copies = arena.copy_ops
    t0 = time.perf_counter_ns()
    ALGORITHMS[algorithm](arena, tree, model)
    reorder_wall = time.perf_counter_ns() - t0
    rows.append(RunMetrics(phase="reorder", wall_ns=reorder_wall,
                           copy_ops=arena.copy_ops - copies, reorders=1,
                           fingerprint=arena.layout_fingerprint(), **common))

    re_wall = _timed_reads(tree, reads)
    re_cost, re_counts = _read_cost(arena, tree, reads)
    rows.append(RunMetrics(phase="reordered-read", wall_ns=re_wall,
                           weighted_cost=re_cost, region_counts=re_counts,
                           fingerprint=arena.layout_fingerprint(), **common))
    return rows


def bench_online(spec, cfg):
    """Plain execution vs execution with a trigger policy on every lookup."""
    writes, reads = generate_workload(spec)
    policy_label = _policy_label(cfg)
    common = dict(experiment="online", tree=spec.tree_kind,
                  algorithm=cfg.strategy if cfg.kind != "none" else "-",
                  n_write=spec.n_write_keys, n_read=spec.n_reads,
                  seed=spec.seed)
    rows = []

    t0 = time.perf_counter_ns()
    arena_b, tree_b = build_tree(spec, writes)
    build_wall = time.perf_counter_ns() - t0
    rows.append(RunMetrics(phase="baseline-build", policy="-",
                           wall_ns=build_wall, **common))
    base_wall = _timed_reads(tree_b, reads)
    rows.append(RunMetrics(phase="baseline-read", policy="-",
                           wall_ns=base_wall,
                           fingerprint=arena_b.layout_fingerprint(), **common))

    t0 = time.perf_counter_ns()
    arena, tree = build_tree(spec, writes)
    online_build_wall = time.perf_counter_ns() - t0
    rows.append(RunMetrics(phase="online-build", policy=policy_label,
                           wall_ns=online_build_wall, **common))
    model = AccessModel()
    copies = arena.copy_ops
    reorders = 0
    reorder_ns = 0
    lookup_path = tree.lookup_path
    t0 = time.perf_counter_ns()
    for k in reads:
        _, path = lookup_path(k, model)
        report = after_tree_op_hook(tree, model, cfg, path)
        if report is not None:
            reorders += 1
            reorder_ns += report.duration_ns
    online_wall = time.perf_counter_ns() - t0
    rows.append(RunMetrics(phase="online-read", policy=policy_label,
                           wall_ns=online_wall, copy_ops=arena.copy_ops - copies,
                           reorders=reorders,
                           fingerprint=arena.layout_fingerprint(), **common))
    rows.append(RunMetrics(phase="online-reorder-overhead", policy=policy_label,
                           wall_ns=reorder_ns, reorders=reorders, **common))
    return rows


def _policy_label(cfg):
    if cfg.kind == "none":
        return "none"
    if cfg.kind == "access-threshold":
        return f"access-threshold(T={cfg.access_threshold})"
    return (f"ratio-threshold(delta={cfg.ratio_delta},"
            f"guard={cfg.ratio_guard_accesses})")


def online_threshold_sweep(spec, strategy, thresholds, scope="full-tree"):
    """One online summary row per access threshold value."""
    rows = []
    for t in thresholds:
        cfg = PolicyConfig(kind="access-threshold", access_threshold=t,
                           strategy=strategy, scope=scope)
        for row in bench_online(spec, cfg):
            if row.phase == "online-read":
                rows.append(row)
    return rows


def emit_csv(results, path):
    """Write metrics rows as UTF-8 CSV with the fixed column header."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in results:
                writer.writerow(r.to_row())
    except OSError as exc:
        raise OSError(f"cannot write metrics to {path}: {exc}") from exc
