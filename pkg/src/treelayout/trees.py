"""Key-value trees stored in a slot arena.

Four kinds share one interface (insert, lookup, children_of, verify_structure)
so the reorder machinery applies to any of them unchanged:

* ``BSTree``     unbalanced binary search tree, shaped by insertion order
* ``AVLTree``    height-balanced binary search tree
* ``Octree``     spatial tree over Morton-interleaved keys, up to 8 children
* ``BPlusTree``  entries only in leaves, configurable fanout, no sibling links

Keys and values are unsigned 64-bit integers.  The octree interprets the low
63 bits of a key as three interleaved 21-bit coordinates; the top bit is
ignored for placement and identity.  Duplicate keys overwrite the stored
value without structural change.  Lookups walk a single root-to-termination
path and, when given an access model, record every node on that path.
"""

import copy

from .arena import (
    NONE_LINK, OFF_COUNT, OFF_KIND, OFF_NODE_ID, OFF_PARENT,
    KIND_AVL, KIND_BPT_INTERNAL, KIND_BPT_LEAF, KIND_BST,
    KIND_OCT_INTERNAL, KIND_OCT_LEAF,
    MemoryRegion, NodeFormat, SlotArena,
)

MASK63 = (1 << 63) - 1
MORTON_LEVELS = 21  # 63 bits / 3 per level

TREE_KINDS = ("bst", "avl", "octree", "bptree")


class TreeHandle:
    """Shared tree state and the uniform operations over one arena."""

    kind = ""

    __slots__ = ("arena", "root", "structure_changed_since_reorder")

    def __init__(self, arena):
        self.arena = arena
        self.root = None
        self.structure_changed_since_reorder = False

    @property
    def node_count(self):
        return self.arena.next_free

    def children_of(self, slot):
        """Live children of a node as (child_slot, position), position order."""
        a = self.arena
        if slot is None or not 0 <= slot < a.next_free:
            raise ValueError(f"children_of: dead slot {slot}")
        data = a.data
        cb = slot * a.slot_words + a.off_children
        return [(data[cb + j], j) for j in range(a.nchildren)
                if data[cb + j] != NONE_LINK]

    def lookup(self, key, model=None):
        """Return stored value or None; record the access path when asked."""
        if model is None:
            return self._get(key)
        return self.lookup_path(key, model)[0]

    def lookup_path(self, key, model=None):
        """Like lookup, but also return the list of visited slots."""
        value, path = self._search(key)
        if model is not None:
            a = self.arena
            data = a.data
            w = a.slot_words
            rec = model.record_access
            for s in path:
                rec(data[s * w + OFF_NODE_ID])
            model.record_operation()
        return value, path

    def verify_structure(self):
        """Return None when consistent, else a description of the first violation."""
        a = self.arena
        n = a.next_free
        if self.root is None:
            return None if n == 0 else f"empty root but {n} allocated slots"
        if not 0 <= self.root < n:
            return f"root slot {self.root} out of range"
        data = a.data
        w = a.slot_words
        if data[self.root * w + OFF_PARENT] != NONE_LINK:
            return f"root slot {self.root} has a parent link"
        seen = bytearray(n)
        count = 0
        stack = [self.root]
        cb_off = a.off_children
        nch = a.nchildren
        while stack:
            s = stack.pop()
            if seen[s]:
                return f"slot {s} reachable twice"
            seen[s] = 1
            count += 1
            cb = s * w + cb_off
            for j in range(nch):
                c = data[cb + j]
                if c == NONE_LINK:
                    continue
                if not c < n:
                    return f"slot {s} child {j} dangles to {c}"
                if data[c * w + OFF_PARENT] != s:
                    return (f"slot {c} parent_link "
                            f"{data[c * w + OFF_PARENT]} != {s}")
                stack.append(c)
        if count != n:
            return f"{n - count} allocated slots unreachable from root"
        return self._verify_kind()

    def clone(self, arena):
        t = copy.copy(self)
        t.arena = arena
        return t

    # kind-specific parts
    def insert(self, key, value):
        raise NotImplementedError

    def _get(self, key):
        raise NotImplementedError

    def _search(self, key):
        raise NotImplementedError

    def _verify_kind(self):
        raise NotImplementedError


class _BinaryTree(TreeHandle):
    """Common search/path code for the two binary kinds (child 0 = left)."""

    __slots__ = ()

    def _get(self, key):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        co = a.off_children
        cur = self.root
        if cur is None:
            return None
        while True:
            b = cur * w
            k = data[b + ko]
            if key == k:
                return data[b + a.off_vals]
            nxt = data[b + co] if key < k else data[b + co + 1]
            if nxt == NONE_LINK:
                return None
            cur = nxt

    def _search(self, key):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        co = a.off_children
        path = []
        cur = self.root
        if cur is None:
            return None, path
        while True:
            path.append(cur)
            b = cur * w
            k = data[b + ko]
            if key == k:
                return data[b + a.off_vals], path
            nxt = data[b + co] if key < k else data[b + co + 1]
            if nxt == NONE_LINK:
                return None, path
            cur = nxt

    def _verify_order(self):
        # iterative in-order walk, keys must be strictly increasing
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        co = a.off_children
        stack = []
        cur = self.root
        prev = None
        while stack or (cur is not None and cur != NONE_LINK):
            while cur is not None and cur != NONE_LINK:
                stack.append(cur)
                cur = data[cur * w + co]
            cur = stack.pop()
            k = data[cur * w + ko]
            if prev is not None and k <= prev:
                return f"search order violated at slot {cur}"
            prev = k
            cur = data[cur * w + co + 1]
        return None


class BSTree(_BinaryTree):
    kind = "bst"

    __slots__ = ()

    def insert(self, key, value):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        vo = a.off_vals
        co = a.off_children
        if self.root is None:
            s = a.allocate_slot(KIND_BST)
            b = s * w
            data[b + ko] = key
            data[b + vo] = value
            data[b + OFF_COUNT] = 1
            self.root = s
            self.structure_changed_since_reorder = True
            return
        cur = self.root
        while True:
            b = cur * w
            k = data[b + ko]
            if key == k:
                data[b + vo] = value
                return
            j = 0 if key < k else 1
            c = data[b + co + j]
            if c == NONE_LINK:
                s = a.allocate_slot(KIND_BST)
                nb = s * w
                data[nb + ko] = key
                data[nb + vo] = value
                data[nb + OFF_COUNT] = 1
                data[nb + OFF_PARENT] = cur
                data[b + co + j] = s
                self.structure_changed_since_reorder = True
                return
            cur = c

    def _verify_kind(self):
        return self._verify_order()


class AVLTree(_BinaryTree):
    kind = "avl"

    __slots__ = ()

    def _height(self, slot):
        if slot == NONE_LINK:
            return 0
        a = self.arena
        return a.data[slot * a.slot_words + a.off_extra]

    def _rotate_left(self, x):
        a = self.arena
        data = a.data
        w = a.slot_words
        co = a.off_children
        he = a.off_extra
        xb = x * w
        y = data[xb + co + 1]
        yb = y * w
        t2 = data[yb + co]
        data[xb + co + 1] = t2
        if t2 != NONE_LINK:
            data[t2 * w + OFF_PARENT] = x
        p = data[xb + OFF_PARENT]
        data[yb + co] = x
        data[xb + OFF_PARENT] = y
        data[yb + OFF_PARENT] = p
        if p == NONE_LINK:
            self.root = y
        else:
            pb = p * w + co
            data[pb + (0 if data[pb] == x else 1)] = y
        data[xb + he] = 1 + max(self._height(data[xb + co]),
                                self._height(data[xb + co + 1]))
        data[yb + he] = 1 + max(self._height(data[yb + co]),
                                self._height(data[yb + co + 1]))
        self.structure_changed_since_reorder = True

    def _rotate_right(self, x):
        a = self.arena
        data = a.data
        w = a.slot_words
        co = a.off_children
        he = a.off_extra
        xb = x * w
        y = data[xb + co]
        yb = y * w
        t2 = data[yb + co + 1]
        data[xb + co] = t2
        if t2 != NONE_LINK:
            data[t2 * w + OFF_PARENT] = x
        p = data[xb + OFF_PARENT]
        data[yb + co + 1] = x
        data[xb + OFF_PARENT] = y
        data[yb + OFF_PARENT] = p
        if p == NONE_LINK:
            self.root = y
        else:
            pb = p * w + co
            data[pb + (0 if data[pb] == x else 1)] = y
        data[xb + he] = 1 + max(self._height(data[xb + co]),
                                self._height(data[xb + co + 1]))
        data[yb + he] = 1 + max(self._height(data[yb + co]),
                                self._height(data[yb + co + 1]))
        self.structure_changed_since_reorder = True

    def insert(self, key, value):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        vo = a.off_vals
        co = a.off_children
        he = a.off_extra
        if self.root is None:
            s = a.allocate_slot(KIND_AVL)
            b = s * w
            data[b + ko] = key
            data[b + vo] = value
            data[b + OFF_COUNT] = 1
            data[b + he] = 1
            self.root = s
            self.structure_changed_since_reorder = True
            return
        cur = self.root
        while True:
            b = cur * w
            k = data[b + ko]
            if key == k:
                data[b + vo] = value
                return
            j = 0 if key < k else 1
            c = data[b + co + j]
            if c == NONE_LINK:
                s = a.allocate_slot(KIND_AVL)
                nb = s * w
                data[nb + ko] = key
                data[nb + vo] = value
                data[nb + OFF_COUNT] = 1
                data[nb + he] = 1
                data[nb + OFF_PARENT] = cur
                data[b + co + j] = s
                self.structure_changed_since_reorder = True
                break
            cur = c
        # climb from the new leaf's parent, restoring heights and balance
        node = cur
        while node is not None:
            b = node * w
            hl = self._height(data[b + co])
            hr = self._height(data[b + co + 1])
            bf = hl - hr
            if bf > 1:
                lc = data[b + co]
                if key < data[lc * w + ko]:
                    self._rotate_right(node)
                else:
                    self._rotate_left(lc)
                    self._rotate_right(node)
                break
            if bf < -1:
                rc = data[b + co + 1]
                if key > data[rc * w + ko]:
                    self._rotate_left(node)
                else:
                    self._rotate_right(rc)
                    self._rotate_left(node)
                break
            nh = 1 + max(hl, hr)
            if data[b + he] == nh:
                break
            data[b + he] = nh
            p = data[b + OFF_PARENT]
            node = None if p == NONE_LINK else p

    def _verify_kind(self):
        err = self._verify_order()
        if err is not None:
            return err
        a = self.arena
        data = a.data
        w = a.slot_words
        co = a.off_children
        he = a.off_extra
        # preorder, then heights bottom-up (children precede parents reversed)
        order = []
        stack = [self.root]
        while stack:
            s = stack.pop()
            order.append(s)
            for c in (data[s * w + co], data[s * w + co + 1]):
                if c != NONE_LINK:
                    stack.append(c)
        heights = {}
        for s in reversed(order):
            hl = heights.get(data[s * w + co], 0)
            hr = heights.get(data[s * w + co + 1], 0)
            heights[s] = 1 + max(hl, hr)
            if data[s * w + he] != heights[s]:
                return f"stale height at slot {s}"
            if abs(hl - hr) > 1:
                return f"balance factor {hl - hr} at slot {s}"
        return None


class Octree(TreeHandle):
    """Point tree over the low 63 bits of the key, split 3 bits per level.

    Internal nodes carry no entries; the octant of a key at depth d is its
    Morton triple at that level.  Two keys that agree on all 63 placement
    bits are the same point, so inserts treat them as one key.
    """

    kind = "octree"

    __slots__ = ()

    def _new_leaf(self, km, value, parent):
        a = self.arena
        s = a.allocate_slot(KIND_OCT_LEAF)
        data = a.data
        b = s * a.slot_words
        data[b + a.off_keys] = km
        data[b + a.off_vals] = value
        data[b + OFF_COUNT] = 1
        data[b + OFF_PARENT] = parent
        return s

    def _new_internal(self, parent):
        a = self.arena
        s = a.allocate_slot(KIND_OCT_INTERNAL)
        a.data[s * a.slot_words + OFF_PARENT] = parent
        return s

    def insert(self, key, value):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        vo = a.off_vals
        co = a.off_children
        km = key & MASK63
        if self.root is None:
            self.root = self._new_leaf(km, value, NONE_LINK)
            self.structure_changed_since_reorder = True
            return
        cur = self.root
        depth = 0
        last_o = -1
        while data[cur * w + OFF_KIND] == KIND_OCT_INTERNAL:
            o = (km >> (60 - 3 * depth)) & 7
            nxt = data[cur * w + co + o]
            if nxt == NONE_LINK:
                data[cur * w + co + o] = self._new_leaf(km, value, cur)
                self.structure_changed_since_reorder = True
                return
            last_o = o
            cur = nxt
            depth += 1
        old_key = data[cur * w + ko]
        if old_key == km:
            data[cur * w + vo] = value
            return
        # replace the leaf with an internal chain until the two keys diverge
        p = data[cur * w + OFF_PARENT]
        head = self._new_internal(p)
        if p == NONE_LINK:
            self.root = head
        else:
            data[p * w + co + last_o] = head
        d = depth
        node = head
        while True:
            o_new = (km >> (60 - 3 * d)) & 7
            o_old = (old_key >> (60 - 3 * d)) & 7
            if o_new != o_old:
                data[node * w + co + o_new] = self._new_leaf(km, value, node)
                data[node * w + co + o_old] = cur
                data[cur * w + OFF_PARENT] = node
                break
            nxt = self._new_internal(node)
            data[node * w + co + o_old] = nxt
            node = nxt
            d += 1
        self.structure_changed_since_reorder = True

    def _get(self, key):
        a = self.arena
        data = a.data
        w = a.slot_words
        co = a.off_children
        km = key & MASK63
        cur = self.root
        if cur is None:
            return None
        depth = 0
        while data[cur * w + OFF_KIND] == KIND_OCT_INTERNAL:
            cur = data[cur * w + co + ((km >> (60 - 3 * depth)) & 7)]
            if cur == NONE_LINK:
                return None
            depth += 1
        if data[cur * w + a.off_keys] == km:
            return data[cur * w + a.off_vals]
        return None

    def _search(self, key):
        a = self.arena
        data = a.data
        w = a.slot_words
        co = a.off_children
        km = key & MASK63
        path = []
        cur = self.root
        if cur is None:
            return None, path
        depth = 0
        while data[cur * w + OFF_KIND] == KIND_OCT_INTERNAL:
            path.append(cur)
            nxt = data[cur * w + co + ((km >> (60 - 3 * depth)) & 7)]
            if nxt == NONE_LINK:
                return None, path
            cur = nxt
            depth += 1
        path.append(cur)
        if data[cur * w + a.off_keys] == km:
            return data[cur * w + a.off_vals], path
        return None, path

    def _verify_kind(self):
        a = self.arena
        data = a.data
        w = a.slot_words
        co = a.off_children
        stack = [(self.root, 0, 0)]  # slot, depth, octant prefix so far
        while stack:
            s, depth, prefix = stack.pop()
            kind = data[s * w + OFF_KIND]
            if kind == KIND_OCT_LEAF:
                if depth > MORTON_LEVELS:
                    return f"leaf {s} deeper than {MORTON_LEVELS}"
                km = data[s * w + a.off_keys]
                if depth and (km >> (63 - 3 * depth)) != prefix:
                    return f"leaf {s} outside its octant region"
                continue
            if kind != KIND_OCT_INTERNAL:
                return f"slot {s} has foreign kind {kind}"
            if depth >= MORTON_LEVELS:
                return f"internal {s} deeper than the key space"
            kids = 0
            for o in range(8):
                c = data[s * w + co + o]
                if c != NONE_LINK:
                    kids += 1
                    stack.append((c, depth + 1, (prefix << 3) | o))
            if kids == 0:
                return f"internal {s} has no children"
        return None


class BPlusTree(TreeHandle):
    """Order-``fanout`` tree; entries live in leaves, internals route only.

    Searches always run root to leaf.  There are no sibling links, so the
    access path of a lookup is exactly one downward chain.
    """

    kind = "bptree"

    __slots__ = ("fanout",)

    def __init__(self, arena, fanout=16):
        super().__init__(arena)
        if fanout < 3:
            raise ValueError("fanout must be >= 3")
        if arena.nkeys < fanout or arena.nchildren < fanout:
            raise ValueError("arena slots too small for this fanout")
        self.fanout = fanout

    def _descend_to_leaf(self, key, path=None):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        co = a.off_children
        cur = self.root
        while data[cur * w + OFF_KIND] == KIND_BPT_INTERNAL:
            if path is not None:
                path.append(cur)
            b = cur * w
            c = data[b + OFF_COUNT]
            i = 0
            while i < c - 1 and key >= data[b + ko + i]:
                i += 1
            cur = data[b + co + i]
        if path is not None:
            path.append(cur)
        return cur

    def insert(self, key, value):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        vo = a.off_vals
        f = self.fanout
        if self.root is None:
            s = a.allocate_slot(KIND_BPT_LEAF)
            b = s * w
            data[b + ko] = key
            data[b + vo] = value
            data[b + OFF_COUNT] = 1
            self.root = s
            self.structure_changed_since_reorder = True
            return
        leaf = self._descend_to_leaf(key)
        b = leaf * w
        m = data[b + OFF_COUNT]
        pos = 0
        while pos < m and data[b + ko + pos] < key:
            pos += 1
        if pos < m and data[b + ko + pos] == key:
            data[b + vo + pos] = value
            return
        if m < f:
            data[b + ko + pos + 1:b + ko + m + 1] = data[b + ko + pos:b + ko + m]
            data[b + vo + pos + 1:b + vo + m + 1] = data[b + vo + pos:b + vo + m]
            data[b + ko + pos] = key
            data[b + vo + pos] = value
            data[b + OFF_COUNT] = m + 1
            return
        # leaf split
        keys = list(data[b + ko:b + ko + f])
        vals = list(data[b + vo:b + vo + f])
        keys.insert(pos, key)
        vals.insert(pos, value)
        lh = (f + 1) // 2
        right = a.allocate_slot(KIND_BPT_LEAF)
        self._write_leaf(leaf, keys[:lh], vals[:lh])
        self._write_leaf(right, keys[lh:], vals[lh:])
        data[right * w + OFF_PARENT] = data[b + OFF_PARENT]
        self.structure_changed_since_reorder = True
        self._insert_into_parent(leaf, keys[lh], right)

    def _write_leaf(self, slot, keys, vals):
        a = self.arena
        data = a.data
        b = slot * a.slot_words
        ko = a.off_keys
        vo = a.off_vals
        m = len(keys)
        for i in range(m):
            data[b + ko + i] = keys[i]
            data[b + vo + i] = vals[i]
        for i in range(m, a.nkeys):
            data[b + ko + i] = 0
            data[b + vo + i] = 0
        data[b + OFF_COUNT] = m

    def _write_internal(self, slot, seps, children):
        a = self.arena
        data = a.data
        w = a.slot_words
        b = slot * w
        ko = a.off_keys
        co = a.off_children
        c = len(children)
        for i in range(c - 1):
            data[b + ko + i] = seps[i]
        for i in range(c - 1, a.nkeys):
            data[b + ko + i] = 0
        for i in range(c):
            data[b + co + i] = children[i]
            data[children[i] * w + OFF_PARENT] = slot
        for i in range(c, a.nchildren):
            data[b + co + i] = NONE_LINK
        data[b + OFF_COUNT] = c

    def _insert_into_parent(self, left, sep, right):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        co = a.off_children
        f = self.fanout
        p = data[left * w + OFF_PARENT]
        if p == NONE_LINK:
            r = a.allocate_slot(KIND_BPT_INTERNAL)
            self._write_internal(r, [sep], [left, right])
            data[r * w + OFF_PARENT] = NONE_LINK
            self.root = r
            return
        b = p * w
        c = data[b + OFF_COUNT]
        i = 0
        while data[b + co + i] != left:
            i += 1
        if c < f:
            data[b + co + i + 2:b + co + c + 1] = data[b + co + i + 1:b + co + c]
            data[b + ko + i + 1:b + ko + c] = data[b + ko + i:b + ko + c - 1]
            data[b + co + i + 1] = right
            data[b + ko + i] = sep
            data[b + OFF_COUNT] = c + 1
            data[right * w + OFF_PARENT] = p
            return
        children = list(data[b + co:b + co + f])
        seps = list(data[b + ko:b + ko + f - 1])
        children.insert(i + 1, right)
        seps.insert(i, sep)
        mid = f // 2
        newr = a.allocate_slot(KIND_BPT_INTERNAL)
        promoted = seps[mid]
        self._write_internal(p, seps[:mid], children[:mid + 1])
        self._write_internal(newr, seps[mid + 1:], children[mid + 1:])
        self._insert_into_parent(p, promoted, newr)

    def _get(self, key):
        if self.root is None:
            return None
        a = self.arena
        data = a.data
        leaf = self._descend_to_leaf(key)
        b = leaf * a.slot_words
        ko = a.off_keys
        m = data[b + OFF_COUNT]
        for i in range(m):
            if data[b + ko + i] == key:
                return data[b + a.off_vals + i]
        return None

    def _search(self, key):
        path = []
        if self.root is None:
            return None, path
        a = self.arena
        data = a.data
        leaf = self._descend_to_leaf(key, path)
        b = leaf * a.slot_words
        ko = a.off_keys
        m = data[b + OFF_COUNT]
        for i in range(m):
            if data[b + ko + i] == key:
                return data[b + a.off_vals + i], path
        return None, path

    def _verify_kind(self):
        a = self.arena
        data = a.data
        w = a.slot_words
        ko = a.off_keys
        co = a.off_children
        f = self.fanout
        min_leaf = (f + 1) // 2
        min_internal = (f + 1) // 2
        leaf_depth = None
        stack = [(self.root, 0, None, None)]  # slot, depth, lo, hi
        while stack:
            s, depth, lo, hi = stack.pop()
            b = s * w
            kind = data[b + OFF_KIND]
            c = data[b + OFF_COUNT]
            is_root = s == self.root
            if kind == KIND_BPT_LEAF:
                if leaf_depth is None:
                    leaf_depth = depth
                elif depth != leaf_depth:
                    return f"leaf {s} at depth {depth}, expected {leaf_depth}"
                if c < 1 or (not is_root and c < min_leaf) or c > f:
                    return f"leaf {s} occupancy {c} out of bounds"
                prev = None
                for i in range(c):
                    k = data[b + ko + i]
                    if prev is not None and k <= prev:
                        return f"leaf {s} keys not increasing"
                    if (lo is not None and k < lo) or (hi is not None and k >= hi):
                        return f"leaf {s} key {k} outside its range"
                    prev = k
            elif kind == KIND_BPT_INTERNAL:
                if c < 2 or (not is_root and c < min_internal) or c > f:
                    return f"internal {s} occupancy {c} out of bounds"
                prev = None
                for i in range(c - 1):
                    k = data[b + ko + i]
                    if prev is not None and k <= prev:
                        return f"internal {s} separators not increasing"
                    if (lo is not None and k < lo) or (hi is not None and k >= hi):
                        return f"internal {s} separator {k} outside its range"
                    prev = k
                for i in range(c):
                    clo = data[b + ko + i - 1] if i else lo
                    chi = data[b + ko + i] if i < c - 1 else hi
                    stack.append((data[b + co + i], depth + 1, clo, chi))
            else:
                return f"slot {s} has foreign kind {kind}"
        return None


TREE_CLASSES = {
    "bst": BSTree,
    "avl": AVLTree,
    "octree": Octree,
    "bptree": BPlusTree,
}


def make_format(kind, fanout=16):
    """Slot format for one tree kind (union sized to its largest node)."""
    if kind == "bst":
        return NodeFormat("bst", 1, 2, 0)
    if kind == "avl":
        return NodeFormat("avl", 1, 2, 1)  # extra word: subtree height
    if kind == "octree":
        return NodeFormat("octree", 1, 8, 0)
    if kind == "bptree":
        return NodeFormat("bptree", fanout, fanout, 0)
    raise ValueError(f"unknown tree kind {kind!r}")


def new_tree(kind, capacity=None, regions=None, fanout=16):
    """Create an arena sized for `kind` plus a fresh tree bound to it."""
    if regions is None:
        if capacity is None:
            raise ValueError("need capacity or explicit regions")
        regions = [MemoryRegion(0, capacity, 0, 1.0)]
    arena = SlotArena(regions, make_format(kind, fanout))
    cls = TREE_CLASSES[kind]
    tree = cls(arena, fanout) if kind == "bptree" else cls(arena)
    return arena, tree
