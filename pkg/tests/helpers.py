"""Shared builders for the test suite."""

import random

import treelayout as tl
from treelayout.arena import ArenaFull
from treelayout.trees import MASK63


def make_writes(rng, n):
    """n unique (key, value) pairs; keys also unique in their low 63 bits."""
    seen = set()
    out = []
    while len(out) < n:
        k = rng.getrandbits(64)
        low = k & MASK63
        if low in seen:
            continue
        seen.add(low)
        out.append((k, rng.getrandbits(64)))
    return out


def build_tree(kind, writes, fanout=8, capacity=None):
    cap = capacity or (2 * len(writes) + 8 if kind == "octree" else len(writes) + 8)
    while True:
        try:
            arena, tree = tl.new_tree(kind, capacity=cap, fanout=fanout)
            for k, v in writes:
                tree.insert(k, v)
            return arena, tree
        except ArenaFull:
            cap *= 2


def skewed_reads(rng, writes, n_reads, hot_fraction=0.1, hot_weight=0.9):
    keys = [k for k, _ in writes]
    rng.shuffle(keys)
    hot = keys[:max(1, round(hot_fraction * len(keys)))]
    cold = keys[len(hot):]
    reads = []
    for _ in range(n_reads):
        if cold and rng.random() >= hot_weight:
            reads.append(cold[rng.randrange(len(cold))])
        else:
            reads.append(hot[rng.randrange(len(hot))])
    return reads


def random_instance(kind, size, seed, n_reads=None, fanout=8):
    """Tree + profiled access model over a skewed random workload."""
    rng = random.Random(seed)
    writes = make_writes(rng, size)
    arena, tree = build_tree(kind, writes, fanout=fanout)
    model = tl.AccessModel()
    reads = skewed_reads(rng, writes, n_reads if n_reads is not None else 2 * size)
    for k in reads:
        tree.lookup(k, model)
    return arena, tree, model, writes, reads


def lookup_all_ok(tree, writes):
    for k, v in writes:
        if tree.lookup(k) != v:
            return False
    return True


def slot_ids(arena):
    return [arena.node_id_of(i) for i in range(arena.next_free)]


def set_frequencies(model, freqs_by_node_id):
    for nid, f in freqs_by_node_id.items():
        model.count_by_node_id[nid] = f
