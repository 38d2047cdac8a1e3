"""Access frequency model: per-node counters that drive every reorder order.

Counters are keyed by node id, not by slot, so moving nodes around in the
arena never changes any frequency.  Besides the lifetime counters the model
keeps what the online trigger policies need: how many tree operations ran
since the last reorder, how often each node was touched since then, and a
snapshot of each node's child access ratios taken at its last reorder.
"""

from .arena import OFF_NODE_ID


class AccessModel:
    __slots__ = ("count_by_node_id", "accesses_since_reorder_global",
                 "per_node_ratio_snapshot", "per_node_accesses_since_reorder")

    def __init__(self):
        self.count_by_node_id = {}
        # counts completed tree operations (one per lookup), reset by reorders
        self.accesses_since_reorder_global = 0
        self.per_node_ratio_snapshot = {}
        self.per_node_accesses_since_reorder = {}

    def record_access(self, node_id):
        """Count one visit of the node (called per path node of a lookup)."""
        c = self.count_by_node_id
        c[node_id] = c.get(node_id, 0) + 1
        p = self.per_node_accesses_since_reorder
        p[node_id] = p.get(node_id, 0) + 1

    def record_operation(self):
        """Count one completed tree operation."""
        self.accesses_since_reorder_global += 1

    def frequency(self, node_id):
        return self.count_by_node_id.get(node_id, 0)

    def accesses_since_reorder(self, node_id):
        return self.per_node_accesses_since_reorder.get(node_id, 0)

    def children_sorted_by_frequency(self, tree, slot):
        """Child slots ordered by frequency descending, node id ascending.

        The node id tiebreak makes the order a strict total order, so every
        reorder strategy chases one canonical target layout.
        """
        a = tree.arena
        data = a.data
        w = a.slot_words
        freq = self.count_by_node_id.get
        kids = [(c, data[c * w + OFF_NODE_ID]) for c, _ in tree.children_of(slot)]
        kids.sort(key=lambda e: (-freq(e[1], 0), e[1]))
        return [c for c, _ in kids]

    def child_ratios(self, tree, slot):
        """(position, frequency share) per live child; all zero when unread."""
        a = tree.arena
        data = a.data
        w = a.slot_words
        freq = self.count_by_node_id.get
        kids = tree.children_of(slot)
        counts = [freq(data[c * w + OFF_NODE_ID], 0) for c, _ in kids]
        total = sum(counts)
        if total == 0:
            return [(pos, 0.0) for _, pos in kids]
        return [(pos, counts[i] / total) for i, (_, pos) in enumerate(kids)]

    def snapshot_after_reorder(self, tree, slots):
        """Refresh ratio snapshots and reset since-reorder counters.

        ``slots`` is the set of just-reordered nodes (their current slots);
        a full-tree reorder passes every live slot.  The global operation
        counter restarts whenever any reorder ran.
        """
        a = tree.arena
        data = a.data
        w = a.slot_words
        for s in slots:
            nid = data[s * w + OFF_NODE_ID]
            self.per_node_ratio_snapshot[nid] = self.child_ratios(tree, s)
            self.per_node_accesses_since_reorder[nid] = 0
        self.accesses_since_reorder_global = 0

    def clone(self):
        m = AccessModel()
        m.count_by_node_id = dict(self.count_by_node_id)
        m.accesses_since_reorder_global = self.accesses_since_reorder_global
        m.per_node_ratio_snapshot = {k: list(v) for k, v
                                     in self.per_node_ratio_snapshot.items()}
        m.per_node_accesses_since_reorder = dict(self.per_node_accesses_since_reorder)
        return m
