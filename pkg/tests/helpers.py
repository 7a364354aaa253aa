"""Shared builders and small reference solvers for the test suite.

The reference solvers are deliberately independent of the package's
search code: the optimum below enumerates raw set partitions in plain
item order, and the two-coloring check tries every assignment.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from bmcolor import Mode, WeightedGraph, gen_bipartite, gen_general, gen_tree
from bmcolor.graphs import item_conflict_masks


def vertex_graph(weights, edges=()):
    return WeightedGraph.vertex_weighted(len(weights), edges, weights)


def star_vertex(center, *leaves):
    """Vertex-weighted star; the center is item 0."""
    return vertex_graph([center, *leaves], [(0, i + 1) for i in range(len(leaves))])


def path_edges(*weights):
    """Edge-weighted path; edge i joins vertices i and i+1."""
    return WeightedGraph.edge_weighted(
        len(weights) + 1, [(i, i + 1) for i in range(len(weights))], weights
    )


def star_edges(*weights):
    return WeightedGraph.edge_weighted(
        len(weights) + 1, [(0, i + 1) for i in range(len(weights))], weights
    )


def with_denominator(g: WeightedGraph, denominator: int) -> WeightedGraph:
    """Same graph with every weight divided by `denominator`."""
    ws = [w / denominator for w in g.weights]
    if g.mode is Mode.VERTEX:
        return WeightedGraph.vertex_weighted(g.vertex_count, g.edges, ws)
    return WeightedGraph.edge_weighted(g.vertex_count, g.edges, ws)


def conflict_pairs(g: WeightedGraph) -> list[tuple[int, int]]:
    """All conflicting item pairs (j, i) with j < i."""
    masks = item_conflict_masks(g)
    pairs = []
    for i in range(g.item_count):
        m = masks[i] & ((1 << i) - 1)
        while m:
            pairs.append(((m & -m).bit_length() - 1, i))
            m &= m - 1
    return pairs


def brute_force_minimum(g: WeightedGraph, b: int) -> Fraction:
    """Optimum by enumerating every set partition with classes of size <= b."""
    n = g.item_count
    if n == 0:
        return Fraction(0)
    masks = item_conflict_masks(g)
    best: Fraction | None = None

    def rec(i, blocks, bmasks):
        nonlocal best
        if i == n:
            total = sum(
                (max(g.item_weight(j) for j in blk) for blk in blocks), Fraction(0)
            )
            if best is None or total < best:
                best = total
            return
        for bi, blk in enumerate(blocks):
            if len(blk) < b and not bmasks[bi] & masks[i]:
                blk.append(i)
                bmasks[bi] |= 1 << i
                rec(i + 1, blocks, bmasks)
                bmasks[bi] ^= 1 << i
                blk.pop()
        blocks.append([i])
        bmasks.append(1 << i)
        rec(i + 1, blocks, bmasks)
        bmasks.pop()
        blocks.pop()

    rec(0, [], [])
    assert best is not None
    return best


def exhaustive_two_color_feasible(g, lists, b1, b2) -> bool:
    """Try every list-respecting assignment; True when one fits the bounds."""
    pairs = conflict_pairs(g)
    for assign in product(*[tuple(sorted(lst)) for lst in lists]):
        if sum(1 for c in assign if c == 1) > b1:
            continue
        if sum(1 for c in assign if c == 2) > b2:
            continue
        if all(assign[i] != assign[j] for i, j in pairs):
            return True
    return False


def check_list_assignment(g, lists, bounds, assignment):
    """Assert an assignment respects lists, bounds, and adjacency."""
    counts = [0] * (len(bounds) + 1)
    for item, color in enumerate(assignment):
        assert color in lists[item]
        counts[color] += 1
    for color, bound in enumerate(bounds, 1):
        assert counts[color] <= bound
    for i, j in conflict_pairs(g):
        assert assignment[i] != assignment[j]


# --- seeded instance pools ----------------------------------------------


def bipartite_vertex_pool(base_seed, count, *, unit=False, max_vertices=12):
    """Bipartite vertex-weighted instances together with their sides."""
    pool = []
    for trial in range(count):
        rng = random.Random(base_seed + trial)
        n_left = rng.randint(1, 6)
        n_right = rng.randint(1, min(6, max_vertices - n_left))
        density = rng.choice((0.0, 0.15, 0.35, 0.6, 0.9))
        weight_range = (1, 1) if unit else (1, 10)
        g, sides = gen_bipartite(
            rng, n_left, n_right, density, weight_range=weight_range
        )
        pool.append((g, sides))
    return pool


def edge_mode_pool(base_seed, count, family, *, max_edges=12):
    """Edge-weighted instances with 1..max_edges edges."""
    pool = []
    attempt = 0
    while len(pool) < count:
        rng = random.Random(base_seed + attempt)
        attempt += 1
        if family == "general":
            g = gen_general(rng, rng.randint(2, 8), rng.uniform(0.2, 0.7), mode=Mode.EDGE)
        elif family == "bipartite":
            n_left = rng.randint(1, 5)
            n_right = rng.randint(1, 6)
            g, _ = gen_bipartite(rng, n_left, n_right, rng.uniform(0.2, 0.8), mode=Mode.EDGE)
        else:
            raise ValueError(family)
        if 0 < len(g.edges) <= max_edges:
            pool.append(g)
    return pool


def tree_pool(base_seed, count, *, max_vertices=13):
    """Edge-weighted random trees with at most max_vertices - 1 edges."""
    pool = []
    for trial in range(count):
        rng = random.Random(base_seed + trial)
        pool.append(gen_tree(rng, rng.randint(1, max_vertices), mode=Mode.EDGE))
    return pool


def small_mixed_pool(base_seed, count, *, max_items=10):
    """Instances in both modes with at most max_items items."""
    pool = []
    attempt = 0
    while len(pool) < count:
        rng = random.Random(base_seed + attempt)
        attempt += 1
        if rng.random() < 0.5:
            g = gen_general(rng, rng.randint(1, max_items), rng.uniform(0.1, 0.8))
        else:
            g = gen_general(rng, rng.randint(2, 6), rng.uniform(0.2, 0.9), mode=Mode.EDGE)
            if not 1 <= g.item_count <= max_items:
                continue
        pool.append(g)
    return pool
