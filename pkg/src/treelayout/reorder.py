"""Node reordering: two in-place sort strategies, path-sequential layout,
and a minimal-copy executor for precomputed permutations.

Every strategy chases the same canonical comparator, frequency descending
with node id ascending as tiebreak, so independent algorithms can be checked
against each other layout for layout.

Native variants move the nodes themselves while computing the order; every
move is a three-copy swap through the scratch slot.  Map variants first
compute a :class:`ReorderMap` over plain indices (no node copies at all) and
then apply it with :func:`map_reorder`, which walks the permutation cycles
and spends exactly ``c + 1`` node copies per nontrivial cycle of length
``c``, the provable minimum.

A map in *location representation* stores at index ``i`` the current slot of
the node that must end up at ``i``; *target representation* is the inverse
(where the node now at ``i`` must go).  Cycle application wants location
representation; building a path-sequential map needs both at once because
tree links keep addressing current slots while the map is under
construction.
"""

import math
from dataclasses import dataclass, field

from .arena import NONE_LINK, OFF_NODE_ID

# Observed worst cases for the buffer strategy stay around 7.5 n log2 n
# copies (2.5 n log2 n swaps); the factor below is the asserted ceiling.
BUFFER_SORT_COPY_FACTOR = 12


@dataclass
class ReorderMap:
    """A permutation of the live slot indices."""

    representation: str  # "location" | "target"
    perm: list = field(default_factory=list)

    def validate(self):
        n = len(self.perm)
        seen = bytearray(n)
        for v in self.perm:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise ValueError(f"not a permutation of 0..{n - 1}")
            seen[v] = 1
        if self.representation not in ("location", "target"):
            raise ValueError(f"unknown representation {self.representation!r}")


@dataclass
class CycleStats:
    """Cycle decomposition summary of a reorder map."""

    cycle_lengths: list   # lengths of the cycles with more than one slot
    trivial_cycles: int   # slots already in place

    @property
    def predicted_copies(self):
        return sum(c + 1 for c in self.cycle_lengths)


def invert_map(rmap):
    """Flip between location and target representation (an involution)."""
    rmap.validate()
    perm = rmap.perm
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    other = "target" if rmap.representation == "location" else "location"
    return ReorderMap(other, out)


def cycle_stats(rmap):
    rmap.validate()
    perm = rmap.perm
    n = len(perm)
    seen = bytearray(n)
    lengths = []
    trivial = 0
    for i in range(n):
        if seen[i]:
            continue
        c = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = perm[j]
            c += 1
        if c == 1:
            trivial += 1
        else:
            lengths.append(c)
    return CycleStats(lengths, trivial)


def map_reorder(arena, tree, rmap):
    """Apply a location-representation map with the minimal number of copies.

    Walks each nontrivial cycle once: the first node parks in the scratch
    slot, every other node moves straight to its final slot, and the parked
    node closes the cycle.  The map is consumed: it reads as the identity
    afterwards.
    """
    if rmap.representation != "location":
        raise ValueError("map_reorder needs location representation")
    n = arena.next_free
    if len(rmap.perm) != n:
        raise ValueError(f"map length {len(rmap.perm)} != live slots {n}")
    rmap.validate()
    m = rmap.perm
    temp = arena.temp_slot
    copy = arena.copy_node
    for i in range(n):
        if m[i] != i:
            copy(tree, i, temp)
            cl = i
            cs = m[i]
            while cs != i:
                copy(tree, cs, cl)
                m[cl] = cl
                cl = cs
                cs = m[cl]
            copy(tree, temp, cl)
            m[cl] = cl


# -- the two in-place merge strategies, generic over positions ------------
#
# Both operate on abstract positions 0..n-1 through key_of/swap callbacks,
# which lets the same code sort real nodes (swap = three-copy node swap) or
# a plain index array (map building, no node copies).

def _buffer_merge_sort(n, key_of, swap):
    """In-place merge sort that merges through an internal work area.

    Kronrod-style: the upper half serves as the work area whose order may
    rot; merging exchanges elements with the area instead of copying out of
    place.  The area halves each round until at most two stragglers remain,
    which bubble into place.  Every merge step swaps unconditionally, so the
    strategy pays its full cost even on sorted input.
    """

    def wmerge(i, m, j, u, w):
        while i < m and j < u:
            if key_of(i) < key_of(j):
                swap(w, i)
                i += 1
            else:
                swap(w, j)
                j += 1
            w += 1
        while i < m:
            swap(w, i)
            i += 1
            w += 1
        while j < u:
            swap(w, j)
            j += 1
            w += 1

    def wsort(l, u, w):
        # sort [l, u) and leave the result in the area starting at w
        if u - l > 1:
            m = (l + u) // 2
            imsort(l, m)
            imsort(m, u)
            wmerge(l, m, m, u, w)
        elif l < u:
            swap(l, w)

    def imsort(l, u):
        if u - l <= 1:
            return
        m = (l + u) // 2
        w = l + u - m
        wsort(l, m, w)  # lower half now sorted inside [w, u)
        while w - l > 2:
            u2 = w
            w = (l + u2 + 1) // 2
            wsort(w, u2, l)  # sort upper area part, parking it at the front
            wmerge(l, l + u2 - w, u2, u, w)
        # bubble the last area stragglers into the sorted tail
        nn = w
        while nn > l:
            m2 = nn
            while m2 < u and key_of(m2) < key_of(m2 - 1):
                swap(m2, m2 - 1)
                m2 += 1
            nn -= 1

    imsort(0, n)


def _shell_merge_sort(n, key_of, swap):
    """Merge sort whose merge step is a shrinking-gap comparison sweep.

    The merge compares elements ``gap`` apart and swaps only the pairs that
    are out of order, halving the gap (rounding up) until it hits one.  On
    sorted input no comparison fires, so the pass costs zero copies.
    """

    def gap_merge(lo, hi):
        gap = hi - lo + 1
        gap = gap // 2 + (gap & 1)
        while gap > 0:
            i = lo
            while i + gap <= hi:
                j = i + gap
                if key_of(i) > key_of(j):
                    swap(i, j)
                i += 1
            gap = 0 if gap == 1 else gap // 2 + (gap & 1)

    def ms(lo, hi):
        if lo >= hi:
            return
        mid = (lo + hi) // 2
        ms(lo, mid)
        ms(mid + 1, hi)
        gap_merge(lo, hi)

    if n > 1:
        ms(0, n - 1)


def _slot_sort_keys(arena, model, n):
    """Canonical comparator key for the node currently in each slot."""
    data = arena.data
    w = arena.slot_words
    freq = model.count_by_node_id.get
    keys = []
    for slot in range(n):
        nid = data[slot * w + OFF_NODE_ID]
        keys.append((-freq(nid, 0), nid))
    return keys


def _finish_full_reorder(arena, tree, model):
    model.snapshot_after_reorder(tree, range(arena.next_free))
    tree.structure_changed_since_reorder = False


def _node_swapper(arena, tree, keys):
    """Position swap over real nodes; a self-swap moves nothing and is free."""
    def swap(i, j):
        if i != j:
            arena.swap_nodes(tree, i, j)
            keys[i], keys[j] = keys[j], keys[i]
    return swap


def native_buffer_merge_sort(arena, tree, model):
    """Sort the nodes themselves into canonical frequency order (buffer merge)."""
    n = arena.next_free
    if n > 1:
        keys = _slot_sort_keys(arena, model, n)
        before = arena.copy_ops
        _buffer_merge_sort(n, keys.__getitem__, _node_swapper(arena, tree, keys))
        bound = BUFFER_SORT_COPY_FACTOR * n * max(1.0, math.log2(n))
        assert arena.copy_ops - before <= bound, \
            f"buffer merge sort blew its copy budget ({arena.copy_ops - before} > {bound})"
    _finish_full_reorder(arena, tree, model)


def native_shell_merge_sort(arena, tree, model):
    """Sort the nodes themselves into canonical frequency order (gap merge)."""
    n = arena.next_free
    if n > 1:
        keys = _slot_sort_keys(arena, model, n)
        _shell_merge_sort(n, keys.__getitem__, _node_swapper(arena, tree, keys))
    _finish_full_reorder(arena, tree, model)


def build_merge_sort_map(model, arena, variant="buffer"):
    """Run a merge strategy over a slot-index array instead of the nodes.

    Comparisons read node frequencies through the index array; no node is
    copied.  The result is the canonical layout in location representation.
    """
    n = arena.next_free
    perm = list(range(n))
    keys = _slot_sort_keys(arena, model, n)

    def key_of(pos):
        return keys[perm[pos]]

    def swap(i, j):
        perm[i], perm[j] = perm[j], perm[i]

    if variant == "buffer":
        _buffer_merge_sort(n, key_of, swap)
    elif variant == "shell":
        _shell_merge_sort(n, key_of, swap)
    else:
        raise ValueError(f"unknown merge variant {variant!r}")
    return ReorderMap("location", perm)


def map_buffer_merge_sort(arena, tree, model):
    map_reorder(arena, tree, build_merge_sort_map(model, arena, "buffer"))
    _finish_full_reorder(arena, tree, model)


def map_shell_merge_sort(arena, tree, model):
    map_reorder(arena, tree, build_merge_sort_map(model, arena, "shell"))
    _finish_full_reorder(arena, tree, model)


# -- path-sequential layout ------------------------------------------------

def _ordered_child_positions(arena, model, slot):
    """Child (slot, position) pairs in canonical frequency order."""
    data = arena.data
    w = arena.slot_words
    cb = slot * w + arena.off_children
    freq = model.count_by_node_id.get
    kids = []
    for j in range(arena.nchildren):
        c = data[cb + j]
        if c != NONE_LINK:
            nid = data[c * w + OFF_NODE_ID]
            kids.append((-freq(nid, 0), nid, j))
    kids.sort()
    return kids


def native_path_reorder(arena, tree, model, start_node=None, start_loc=None):
    """Lay the tree out in hot-path order by swapping nodes during a DFS.

    Visits children most-frequent first; the k-th visited node lands at
    ``(start_loc + k) mod n``, so every frequent root-to-leaf run becomes a
    contiguous ascending slot range.  Starting from a non-root node reorders
    just that subtree; the default start location is then the subtree root's
    current slot, which rewrites only the subtree's own interval as long as
    the previous full-tree pass also used this strategy and the structure
    has not changed since.

    Returns False without touching anything when asked for a subtree pass
    after a structural change; the caller should escalate to a full pass.
    Nodes already sitting at their target slot are not swapped, so the copy
    counter grows by exactly three per actually-moved node.
    """
    n = arena.next_free
    if n == 0 or tree.root is None:
        model.snapshot_after_reorder(tree, ())
        tree.structure_changed_since_reorder = False
        return True
    if start_node is None:
        start_node = tree.root
    full = start_node == tree.root
    if start_loc is None:
        start_loc = 0 if full else start_node
    if not 0 <= start_loc < n:
        raise ValueError(f"start_loc {start_loc} outside 0..{n - 1}")
    if not full and tree.structure_changed_since_reorder:
        return False

    data = arena.data
    w = arena.slot_words
    cho = arena.off_children
    swap = arena.swap_nodes
    loc = start_loc
    placed = []
    # Stack entries are (parent_position, child_word); placed nodes never
    # move again, so re-reading the child link when popped always yields the
    # child's current slot even though later swaps shuffle pending nodes.
    stack = []
    cur = start_node
    while True:
        if cur != loc:
            swap(tree, cur, loc)
        pos = loc
        placed.append(pos)
        loc = (loc + 1) % n
        kids = _ordered_child_positions(arena, model, pos)
        for _, _, j in reversed(kids):
            stack.append((pos, j))
        if not stack:
            break
        ppos, j = stack.pop()
        cur = data[ppos * w + cho + j]
    model.snapshot_after_reorder(tree, placed)
    if full:
        tree.structure_changed_since_reorder = False
    return True


def _build_path_map(tree, model, start_node=None, start_loc=None):
    """Simulate the path DFS over indices; returns (map, placed) or None.

    No node moves, so tree links stay valid throughout; the simulation keeps
    the map in both representations at once (``virt`` maps position ->
    current slot, ``pos`` the inverse) to track where each still-unmoved
    node would currently sit.
    """
    arena = tree.arena
    n = arena.next_free
    if n == 0 or tree.root is None:
        return ReorderMap("location", []), []
    if start_node is None:
        start_node = tree.root
    full = start_node == tree.root
    if start_loc is None:
        start_loc = 0 if full else start_node
    if not 0 <= start_loc < n:
        raise ValueError(f"start_loc {start_loc} outside 0..{n - 1}")
    if not full and tree.structure_changed_since_reorder:
        return None

    virt = list(range(n))  # location representation under construction
    pos = list(range(n))   # target representation: slot -> virtual position
    loc = start_loc
    placed = []
    stack = [start_node]
    order = _ordered_child_positions
    data = arena.data
    w = arena.slot_words
    cho = arena.off_children
    while stack:
        s = stack.pop()
        cur = pos[s]
        if cur != loc:
            other = virt[loc]
            virt[loc], virt[cur] = virt[cur], virt[loc]
            pos[s] = loc
            pos[other] = cur
        placed.append(loc)
        loc = (loc + 1) % n
        for _, _, j in reversed(order(arena, model, s)):
            stack.append(data[s * w + cho + j])
    return ReorderMap("location", virt), placed


def build_path_reorder_map(tree, model, start_node=None, start_loc=None):
    """Path-sequential target layout as a whole-array location map.

    Identity outside the reordered subtree.  Returns None when refusing a
    subtree pass after a structural change, like the native variant.
    """
    built = _build_path_map(tree, model, start_node, start_loc)
    if built is None:
        return None
    return built[0]


def map_path_reorder(arena, tree, model, start_node=None, start_loc=None):
    """Path-sequential layout via map building plus minimal-copy application."""
    full = start_node is None or start_node == tree.root
    built = _build_path_map(tree, model, start_node, start_loc)
    if built is None:
        return False
    rmap, placed = built
    map_reorder(arena, tree, rmap)
    model.snapshot_after_reorder(tree, placed)
    if full:
        tree.structure_changed_since_reorder = False
    return True


# Full-tree entry points under their benchmark names.
ALGORITHMS = {
    "native-buffer-merge-sort": native_buffer_merge_sort,
    "native-shell-merge-sort": native_shell_merge_sort,
    "native-path-reorder": lambda a, t, m: native_path_reorder(a, t, m),
    "map-buffer-merge-sort": map_buffer_merge_sort,
    "map-shell-merge-sort": map_shell_merge_sort,
    "map-path-reorder": lambda a, t, m: map_path_reorder(a, t, m),
}

MERGE_SORT_FAMILY = frozenset((
    "native-buffer-merge-sort", "native-shell-merge-sort",
    "map-buffer-merge-sort", "map-shell-merge-sort",
))

PATH_REORDER_FAMILY = frozenset(("native-path-reorder", "map-path-reorder"))
