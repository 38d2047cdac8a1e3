"""Online reorder triggers, evaluated after every tree operation.

Two trigger styles:

* access threshold: reorder once more than ``access_threshold`` tree
  operations have completed since the last reorder.
* ratio threshold: reorder when the access share among some path node's
  children drifted further than ``ratio_delta`` from the snapshot taken at
  its last reorder.  A per-node access guard (a small access threshold)
  keeps freshly reset counters from firing on noise, and the reorder starts
  at the drifted node's parent so all its siblings get reconsidered.

Path-strategy triggers reorder just the affected subtree, starting at the
subtree root's current slot; merge-sort strategies have no subtree form and
always run over the whole tree, as does any trigger that lands after a
structural change.
"""

import time
from dataclasses import dataclass

from .arena import NONE_LINK, OFF_NODE_ID, OFF_PARENT
from .reorder import (
    ALGORITHMS, MERGE_SORT_FAMILY,
    map_path_reorder, native_path_reorder,
)


@dataclass
class PolicyConfig:
    kind: str = "none"  # none | access-threshold | ratio-threshold
    access_threshold: int = 1 << 16
    ratio_delta: float = 0.3
    ratio_guard_accesses: int = 64
    strategy: str = "native-path-reorder"
    scope: str = "full-tree"  # full-tree | subtree

    def __post_init__(self):
        if self.kind not in ("none", "access-threshold", "ratio-threshold"):
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.strategy not in ALGORITHMS:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.scope not in ("full-tree", "subtree"):
            raise ValueError(f"unknown scope {self.scope!r}")
        if not 0.0 < self.ratio_delta <= 1.0:
            raise ValueError("ratio_delta must be in (0, 1]")
        if self.kind == "ratio-threshold" and \
                self.ratio_guard_accesses > self.access_threshold:
            raise ValueError("ratio guard must not exceed the access threshold")


@dataclass
class ReorderReport:
    triggered: bool
    scope: str
    strategy: str
    start_slot: int
    copy_ops_delta: int
    duration_ns: int


def evaluate_access_threshold(model, cfg):
    """True once strictly more operations ran than the threshold allows."""
    return model.accesses_since_reorder_global > cfg.access_threshold


def evaluate_ratio_threshold(model, tree, cfg, accessed_path):
    """Start slot for a reorder, or None.

    Checks each node on the just-accessed path, root first.  A node whose
    child ratios drifted beyond ``ratio_delta`` (and that passed the access
    guard since its last reorder) nominates its parent as the start; the
    root nominates itself.
    """
    arena = tree.arena
    data = arena.data
    w = arena.slot_words
    delta = cfg.ratio_delta
    guard = cfg.ratio_guard_accesses
    for s in accessed_path:
        nid = data[s * w + OFF_NODE_ID]
        if model.accesses_since_reorder(nid) <= guard:
            continue
        snap = dict(model.per_node_ratio_snapshot.get(nid, ()))
        cur = dict(model.child_ratios(tree, s))
        drift = 0.0
        for pos in snap.keys() | cur.keys():
            d = abs(cur.get(pos, 0.0) - snap.get(pos, 0.0))
            if d > drift:
                drift = d
        if drift > delta:
            p = data[s * w + OFF_PARENT]
            return s if p == NONE_LINK else p
    return None


def _run_full(tree, model, strategy):
    ALGORITHMS[strategy](tree.arena, tree, model)


def after_tree_op_hook(tree, model, cfg, accessed_path):
    """Evaluate the configured policy; run and report the reorder on trigger."""
    if cfg.kind == "none":
        return None
    arena = tree.arena

    if cfg.kind == "access-threshold":
        if not evaluate_access_threshold(model, cfg):
            return None
        start = tree.root
        copies = arena.copy_ops
        t0 = time.perf_counter_ns()
        if cfg.scope == "subtree" and cfg.strategy not in MERGE_SORT_FAMILY:
            # subtree rooted at the root: start at its current slot
            if cfg.strategy == "native-path-reorder":
                native_path_reorder(arena, tree, model, start, start)
            else:
                map_path_reorder(arena, tree, model, start, start)
            scope = "subtree"
        else:
            _run_full(tree, model, cfg.strategy)
            scope = "full-tree"
        return ReorderReport(True, scope, cfg.strategy, start,
                             arena.copy_ops - copies,
                             time.perf_counter_ns() - t0)

    start = evaluate_ratio_threshold(model, tree, cfg, accessed_path)
    if start is None:
        return None
    was_root = start == tree.root
    copies = arena.copy_ops
    t0 = time.perf_counter_ns()
    if (cfg.strategy in MERGE_SORT_FAMILY or cfg.scope == "full-tree"
            or tree.structure_changed_since_reorder):
        # no subtree form, or the structure moved under us: full pass
        _run_full(tree, model, cfg.strategy)
        scope = "full-tree"
    else:
        if cfg.strategy == "native-path-reorder":
            ok = native_path_reorder(arena, tree, model, start, start)
        else:
            ok = map_path_reorder(arena, tree, model, start, start)
        scope = "full-tree" if was_root else "subtree"
        if not ok:  # refused; should not happen after the guard above
            _run_full(tree, model, cfg.strategy)
            scope = "full-tree"
    return ReorderReport(True, scope, cfg.strategy, start,
                         arena.copy_ops - copies,
                         time.perf_counter_ns() - t0)
