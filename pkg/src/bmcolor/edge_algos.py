"""Edge-mode algorithms for bounded max-coloring (classes are matchings
of size at most b).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GuardExceededError, InvalidParameterError, InvalidStructureError
from .graphs import (
    Coloring,
    Mode,
    WeightedGraph,
    adjacency_lists,
    item_conflict_masks,
    ordered_b_partition,
    structure_probe,
    vertex_incident_edges,
)


def _require_edge_mode(g: WeightedGraph):
    if g.mode is not Mode.EDGE:
        raise InvalidParameterError("expected an edge-weighted graph")


def greedy_ec(g: WeightedGraph, b: int) -> Coloring:
    """First-fit over edges in non-increasing weight order.

    Each edge joins the earliest class that is below the bound and has
    no adjacent edge; otherwise it opens a new class.  Classes come back
    in creation order (weights non-increasing), which is the order the
    niceness property refers to.
    """
    _require_edge_mode(g)
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    order = sorted(range(len(g.edges)), key=lambda i: (-g.weights[i], i))
    classes: list[list[int]] = []
    endpoints: list[set[int]] = []
    for ei in order:
        u, v = g.edges[ei]
        for ci, cls in enumerate(classes):
            if len(cls) < b and u not in endpoints[ci] and v not in endpoints[ci]:
                cls.append(ei)
                endpoints[ci].update((u, v))
                break
        else:
            classes.append([ei])
            endpoints.append({u, v})
    return Coloring.from_classes(g, classes, keep_order=True)


@dataclass(frozen=True)
class ColorCountBounds:
    lower: int
    upper: int
    regime: str  # "general" or "bipartite"


def nice_color_count_bounds(
    edge_count: int, delta: int, b: int, bipartite: bool
) -> ColorCountBounds:
    """Class-count window every nice solution falls into.

    lower = max(delta, ceil(m/b)).  The upper bound comes from counting
    the small classes blocking the last edge at its two endpoints: with
    x and y of them per endpoint, k <= ceil(m/b) + x + y + 1 -
    ceil((x+1)(y+1)/d) where d = 2b (d = b when bipartite).  That
    expression is bilinear in (x, y) up to the ceiling, so it peaks at a
    corner of [0, delta-1]^2; the x = y = delta-1 corner alone is not
    always the peak, so both nontrivial corners are taken.
    """
    if edge_count < 0 or delta < 0 or b < 1:
        raise InvalidParameterError("need edge_count >= 0, delta >= 0, b >= 1")
    ceil_m = -(-edge_count // b)
    lower = max(delta, ceil_m)
    divisor = b if bipartite else 2 * b
    one_sided = delta - (-(-delta // divisor))
    balanced = 2 * delta - 1 - (-(-(delta * delta) // divisor))
    return ColorCountBounds(
        lower=lower,
        upper=ceil_m + max(0, one_sided, balanced),
        regime="bipartite" if bipartite else "general",
    )


def tree_delta_matchings(g: WeightedGraph) -> list[list[int]]:
    """Proper edge coloring of a forest into exactly max-degree matchings.

    Each tree is rooted at its smallest vertex and walked in pre-order
    (children ascending); at every vertex the non-parent edges, heaviest
    first, go to the first matching with no edge at that vertex.
    Matchings of different trees share indices.
    """
    _require_edge_mode(g)
    if not structure_probe(g).is_forest:
        raise InvalidStructureError("graph is not a forest")
    adj = adjacency_lists(g)
    incident = vertex_incident_edges(g)
    matchings: list[list[int]] = []
    used: list[set[int]] = [set() for _ in range(g.vertex_count)]
    visited = [False] * g.vertex_count

    for root in range(g.vertex_count):
        if visited[root]:
            continue
        stack = [(root, -1)]
        while stack:
            v, parent = stack.pop()
            visited[v] = True
            # parent is -1 at roots, matching no endpoint
            pending = [ei for ei in incident[v] if parent not in g.edges[ei]]
            pending.sort(key=lambda ei: (-g.weights[ei], ei))
            for ei in pending:
                u, w = g.edges[ei]
                other = w if u == v else u
                mi = 0
                while mi in used[v]:
                    mi += 1
                while len(matchings) <= mi:
                    matchings.append([])
                matchings[mi].append(ei)
                used[v].add(mi)
                used[other].add(mi)
            for child in sorted(adj[v], reverse=True):
                if child != parent:
                    stack.append((child, v))
    return matchings


def convert_ec_tree(g: WeightedGraph, b: int) -> Coloring:
    """Two-phase tree algorithm: max-degree matchings, then each matching
    replaced by its ordered b-partition.  Factor-2 on forests.
    """
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    matchings = tree_delta_matchings(g)
    classes: list[tuple[int, ...]] = []
    for matching in matchings:
        part = ordered_b_partition(
            matching, [g.weights[ei] for ei in matching], b
        )
        classes.extend(part.blocks)
    return Coloring.from_classes(g, classes)


def _nonconflicting_subsets(g: WeightedGraph, b: int, size_guard: int):
    """All non-empty independent/matching subsets of size <= b, ascending ids."""
    n = g.item_count
    conf = item_conflict_masks(g)
    subsets: list[tuple[int, ...]] = []

    def rec(start: int, current: list[int], mask: int):
        if len(subsets) > size_guard:
            raise GuardExceededError(
                f"candidate subset count exceeds size guard {size_guard}"
            )
        for i in range(start, n):
            if conf[i] & mask:
                continue
            current.append(i)
            subsets.append(tuple(current))
            if len(current) < b:
                rec(i + 1, current, mask | (1 << i))
            current.pop()

    rec(0, [], 0)
    if len(subsets) > size_guard:
        raise GuardExceededError(
            f"candidate subset count exceeds size guard {size_guard}"
        )
    return subsets


def setcover_approx(g: WeightedGraph, b: int, size_guard: int = 200000) -> Coloring:
    """Greedy weighted set cover over all bounded non-conflicting subsets.

    Cost of a subset is its heaviest item; each round picks the minimum
    cost per newly covered item (ties: smaller cost, then lexicographic
    ids); items stay with the class that covered them first.  Factor
    H_b in both modes.
    """
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    n = g.item_count
    if n == 0:
        return Coloring.from_classes(g, [])
    candidates = [
        (subset, max(g.item_weight(i) for i in subset))
        for subset in _nonconflicting_subsets(g, b, size_guard)
    ]
    covered: set[int] = set()
    classes: list[list[int]] = []
    while len(covered) < n:
        best_key = None
        best_new = None
        for subset, cost in candidates:
            new = [i for i in subset if i not in covered]
            if not new:
                continue
            key = (cost / len(new), cost, subset)
            if best_key is None or key < best_key:
                best_key = key
                best_new = new
        assert best_new is not None  # singletons always remain
        classes.append(best_new)
        covered.update(best_new)
    return Coloring.from_classes(g, classes)


def is_nice_solution(g: WeightedGraph, coloring: Coloring, b: int) -> bool:
    """Each class is full or a maximal matching among the edges not used
    by earlier classes (order-sensitive).
    """
    _require_edge_mode(g)
    remaining = set(range(len(g.edges)))
    for cls in coloring.classes:
        if len(cls) < b:
            endpoints = set()
            for ei in cls:
                endpoints.update(g.edges[ei])
            for ei in remaining - cls:
                u, v = g.edges[ei]
                if u not in endpoints and v not in endpoints:
                    return False
        remaining -= cls
    return not remaining


def harmonic_number(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n as an exact rational."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def within_sqrt_ratio_bound(
    w: Fraction, opt: Fraction, q: int | Fraction
) -> bool:
    """Exact check of w <= opt * (3 - 2/sqrt(q)) without irrationals.

    Equivalent to 3*opt - w >= 0 and 4*opt^2 <= q*(3*opt - w)^2.
    """
    if q <= 0:
        raise InvalidParameterError("q must be positive")
    t = 3 * Fraction(opt) - Fraction(w)
    if t < 0:
        return False
    return 4 * Fraction(opt) ** 2 <= Fraction(q) * t * t
