"""Slot arena: fixed-size node slots laid out over ordered memory regions.

Trees built on the arena keep every node in exactly one slot.  A node is
addressable three ways: through the tree links (parent/child slot indices),
through its logical array index, and through the physical (region, offset)
pair that index maps to.  Region slot ranges are concatenated in benefit
order, so lower indices always live in more beneficial memory and logical
index order mirrors physical order.

Slots are stored back to back in one ``array('Q')`` buffer, which makes a
node copy a real block copy and keeps spatial locality tied to slot order.
All node movement goes through :meth:`SlotArena.copy_node` /
:meth:`SlotArena.swap_nodes`.  Those repair every link that referenced the
moved node (the parent's child link, or the tree's root reference, plus the
parent links of the node's children) and count each block copy in
``copy_ops``, the cost metric the reorder algorithms minimize.
"""

from array import array
from bisect import bisect_right
from dataclasses import dataclass
from hashlib import blake2b

NONE_LINK = 0xFFFF_FFFF_FFFF_FFFF  # link sentinel stored in child/parent words

# slot header words
OFF_KIND = 0
OFF_NODE_ID = 1
OFF_PARENT = 2
OFF_COUNT = 3
HEADER_WORDS = 4

# node kind tags
KIND_BST = 1
KIND_AVL = 2
KIND_OCT_INTERNAL = 3
KIND_OCT_LEAF = 4
KIND_BPT_INTERNAL = 5
KIND_BPT_LEAF = 6


class ArenaFull(Exception):
    """Raised when an allocation exceeds the configured slot capacity."""


@dataclass(frozen=True)
class MemoryRegion:
    """One contiguous run of slots in a single memory technology.

    ``benefit_rank`` 0 is the most beneficial region; ranks must form
    0..R-1 across the regions of an arena.  ``access_cost_weight`` is the
    simulated cost of touching a slot in this region.
    """

    region_id: int
    capacity_slots: int
    benefit_rank: int
    access_cost_weight: float = 1.0

    def __post_init__(self):
        if self.capacity_slots < 1:
            raise ValueError(f"region {self.region_id}: capacity must be >= 1")
        if self.access_cost_weight < 0:
            raise ValueError(f"region {self.region_id}: negative access cost")


@dataclass(frozen=True)
class NodeFormat:
    """Slot geometry for one tree kind.

    A slot is a tagged union sized for the largest node of the kind:
    4 header words, ``max_entries`` key/value pairs, ``max_children``
    child links, and ``extra_words`` of kind-specific payload.
    """

    name: str
    max_entries: int
    max_children: int
    extra_words: int = 0

    @property
    def slot_words(self):
        return HEADER_WORDS + 2 * self.max_entries + self.max_children + self.extra_words


class NodeView:
    """Decoded read view of one slot, for tests and debugging."""

    __slots__ = ("_arena", "slot")

    def __init__(self, arena, slot):
        self._arena = arena
        self.slot = slot

    def _word(self, off):
        return self._arena.data[self.slot * self._arena.slot_words + off]

    @property
    def kind(self):
        return self._word(OFF_KIND)

    @property
    def node_id(self):
        return self._word(OFF_NODE_ID)

    @property
    def parent_link(self):
        p = self._word(OFF_PARENT)
        return None if p == NONE_LINK else p

    @property
    def entry_count(self):
        return self._word(OFF_COUNT)

    @property
    def keys(self):
        a = self._arena
        base = self.slot * a.slot_words + a.off_keys
        return [a.data[base + i] for i in range(a.nkeys)]

    @property
    def values(self):
        a = self._arena
        base = self.slot * a.slot_words + a.off_vals
        return [a.data[base + i] for i in range(a.nkeys)]

    @property
    def child_links(self):
        a = self._arena
        base = self.slot * a.slot_words + a.off_children
        return [None if a.data[base + j] == NONE_LINK else a.data[base + j]
                for j in range(a.nchildren)]

    @property
    def extra(self):
        a = self._arena
        base = self.slot * a.slot_words + a.off_extra
        return [a.data[base + i] for i in range(a.fmt.extra_words)]

    def __repr__(self):
        return (f"NodeView(slot={self.slot}, kind={self.kind}, id={self.node_id}, "
                f"parent={self.parent_link}, children={self.child_links})")


class SlotArena:
    """Abstract array of node slots spanning the configured regions.

    One extra slot past the logical index space is reserved as scratch for
    swaps and cycle application (``temp_slot``); it never counts toward
    capacity and cannot be resolved to a region.
    """

    __slots__ = ("regions", "fmt", "capacity", "next_free", "copy_ops", "data",
                 "slot_words", "nkeys", "nchildren",
                 "off_keys", "off_vals", "off_children", "off_extra", "_cum_caps")

    def __init__(self, regions, fmt):
        regions = sorted(regions, key=lambda r: r.benefit_rank)
        ranks = [r.benefit_rank for r in regions]
        if ranks != list(range(len(regions))):
            raise ValueError(f"benefit ranks must form 0..R-1, got {ranks}")
        if len({r.region_id for r in regions}) != len(regions):
            raise ValueError("duplicate region ids")
        self.regions = regions
        self.fmt = fmt
        self.capacity = sum(r.capacity_slots for r in regions)
        cum = []
        total = 0
        for r in regions:
            total += r.capacity_slots
            cum.append(total)
        self._cum_caps = cum
        self.next_free = 0
        self.copy_ops = 0
        self.slot_words = fmt.slot_words
        self.nkeys = fmt.max_entries
        self.nchildren = fmt.max_children
        self.off_keys = HEADER_WORDS
        self.off_vals = HEADER_WORDS + fmt.max_entries
        self.off_children = HEADER_WORDS + 2 * fmt.max_entries
        self.off_extra = self.off_children + fmt.max_children
        # one spare slot at index `capacity` is the reorder scratch area
        self.data = array("Q", bytes(8 * self.slot_words * (self.capacity + 1)))

    @property
    def temp_slot(self):
        return self.capacity

    # -- allocation and location resolution ------------------------------

    def allocate_slot(self, kind):
        """Hand out the next slot in fill order; node ids follow creation order."""
        idx = self.next_free
        if idx >= self.capacity:
            raise ArenaFull(f"all {self.capacity} slots allocated")
        self.next_free = idx + 1
        data = self.data
        base = idx * self.slot_words
        data[base + OFF_KIND] = kind
        data[base + OFF_NODE_ID] = idx
        data[base + OFF_PARENT] = NONE_LINK
        data[base + OFF_COUNT] = 0
        cb = base + self.off_children
        for j in range(self.nchildren):
            data[cb + j] = NONE_LINK
        return idx

    def resolve(self, slot):
        """Map a logical index to its (region_id, offset) pair."""
        if not 0 <= slot < self.capacity:
            raise IndexError(f"slot {slot} outside 0..{self.capacity - 1}")
        r = bisect_right(self._cum_caps, slot)
        prev = self._cum_caps[r - 1] if r else 0
        return self.regions[r].region_id, slot - prev

    def resolve_physical(self, region_id, offset):
        """Inverse of :meth:`resolve`."""
        for i, r in enumerate(self.regions):
            if r.region_id == region_id:
                if not 0 <= offset < r.capacity_slots:
                    raise IndexError(f"offset {offset} outside region {region_id}")
                prev = self._cum_caps[i - 1] if i else 0
                return prev + offset
        raise IndexError(f"unknown region {region_id}")

    def region_index_of_slot(self, slot):
        if not 0 <= slot < self.capacity:
            raise IndexError(f"slot {slot} outside 0..{self.capacity - 1}")
        return bisect_right(self._cum_caps, slot)

    # -- node movement ----------------------------------------------------

    def copy_node(self, tree, src, dst):
        """Block-copy the node at ``src`` into ``dst`` and repair links.

        Everything that referenced ``src`` afterwards references ``dst``:
        the parent's child link (or ``tree.root`` for the root), and the
        parent links of the node's children.  Counts as one copy operation.
        """
        if src == dst:
            raise ValueError(f"copy_node: src == dst == {src}")
        cap = self.capacity
        if not (0 <= src <= cap and 0 <= dst <= cap):
            raise IndexError(f"copy_node: slot out of range ({src} -> {dst})")
        data = self.data
        w = self.slot_words
        db = dst * w
        data[db:db + w] = data[src * w:src * w + w]
        parent = data[db + OFF_PARENT]
        if parent == NONE_LINK:
            if tree.root == src:
                tree.root = dst
        else:
            cb = parent * w + self.off_children
            for j in range(self.nchildren):
                if data[cb + j] == src:
                    data[cb + j] = dst
                    break
        cb = db + self.off_children
        for j in range(self.nchildren):
            c = data[cb + j]
            if c != NONE_LINK:
                data[c * w + OFF_PARENT] = dst
        self.copy_ops += 1

    def swap_nodes(self, tree, a, b):
        """Exchange two live nodes through the scratch slot (three copies)."""
        if a == b:
            raise ValueError(f"swap_nodes: a == b == {a}")
        t = self.capacity
        self.copy_node(tree, a, t)
        self.copy_node(tree, b, a)
        self.copy_node(tree, t, b)

    # -- metrics ----------------------------------------------------------

    def weighted_access_cost(self, trace):
        """Sum of region access weights over a slot-index trace."""
        cum = self._cum_caps
        weights = [r.access_cost_weight for r in self.regions]
        cap = self.capacity
        total = 0.0
        for slot in trace:
            if not 0 <= slot < cap:
                raise IndexError(f"slot {slot} outside 0..{cap - 1}")
            total += weights[bisect_right(cum, slot)]
        return total

    def region_access_counts(self, trace):
        """Per-region access counts over a slot-index trace (rank order)."""
        cum = self._cum_caps
        counts = [0] * len(self.regions)
        for slot in trace:
            counts[bisect_right(cum, slot)] += 1
        return counts

    def layout_fingerprint(self):
        """Hash of the slot -> node_id layout of all allocated slots."""
        ids = self.data[OFF_NODE_ID:self.next_free * self.slot_words:self.slot_words]
        return blake2b(ids.tobytes(), digest_size=16).hexdigest()

    # -- misc ---------------------------------------------------------------

    def node_view(self, slot):
        return NodeView(self, slot)

    def node_id_of(self, slot):
        return self.data[slot * self.slot_words + OFF_NODE_ID]

    def clone(self):
        """Deep copy sharing only the immutable region/format config."""
        new = SlotArena.__new__(SlotArena)
        new.regions = self.regions
        new.fmt = self.fmt
        new.capacity = self.capacity
        new._cum_caps = self._cum_caps
        new.next_free = self.next_free
        new.copy_ops = self.copy_ops
        new.slot_words = self.slot_words
        new.nkeys = self.nkeys
        new.nchildren = self.nchildren
        new.off_keys = self.off_keys
        new.off_vals = self.off_vals
        new.off_children = self.off_children
        new.off_extra = self.off_extra
        new.data = self.data[:]
        return new
