"""Core types for bounded max-coloring.

A bounded max-coloring groups items (vertices or edges) into classes of
at most b pairwise non-adjacent items; a class costs the weight of its
heaviest item and a solution costs the sum of class costs.  Weights are
exact rationals end to end.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidParameterError, InvalidStructureError

Weightish = Fraction | int | str


class Mode(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"


def as_weight(value: Weightish) -> Fraction:
    """Coerce to a positive Fraction; weights must be > 0."""
    w = Fraction(value)
    if w <= 0:
        raise InvalidParameterError(f"weights must be positive, got {w}")
    return w


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with rational weights on its items.

    `weights` is aligned with vertices (vertex mode) or with `edges`
    (edge mode).  Edges are stored with the smaller endpoint first; the
    edge sequence order is the item id order in edge mode.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]
    mode: Mode

    @staticmethod
    def vertex_weighted(
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        vertex_weights: Sequence[Weightish],
    ) -> "WeightedGraph":
        ws = tuple(as_weight(w) for w in vertex_weights)
        if len(ws) != vertex_count:
            raise InvalidParameterError(
                f"expected {vertex_count} vertex weights, got {len(ws)}"
            )
        return WeightedGraph(
            vertex_count, _canonical_edges(vertex_count, edges), ws, Mode.VERTEX
        )

    @staticmethod
    def edge_weighted(
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        edge_weights: Sequence[Weightish],
    ) -> "WeightedGraph":
        es = _canonical_edges(vertex_count, edges)
        ws = tuple(as_weight(w) for w in edge_weights)
        if len(ws) != len(es):
            raise InvalidParameterError(
                f"expected {len(es)} edge weights, got {len(ws)}"
            )
        return WeightedGraph(vertex_count, es, ws, Mode.EDGE)

    @property
    def item_count(self) -> int:
        return self.vertex_count if self.mode is Mode.VERTEX else len(self.edges)

    @property
    def vertex_weights(self) -> tuple[Fraction, ...]:
        if self.mode is not Mode.VERTEX:
            raise InvalidParameterError("graph is not vertex-weighted")
        return self.weights

    @property
    def edge_weights(self) -> tuple[Fraction, ...]:
        if self.mode is not Mode.EDGE:
            raise InvalidParameterError("graph is not edge-weighted")
        return self.weights

    def item_weight(self, item: int) -> Fraction:
        return self.weights[item]


def _canonical_edges(
    vertex_count: int, edges: Iterable[tuple[int, int]]
) -> tuple[tuple[int, int], ...]:
    if vertex_count < 0:
        raise InvalidParameterError("vertex_count must be >= 0")
    out: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise InvalidParameterError(f"edge ({u},{v}) out of vertex range")
        if u == v:
            raise InvalidParameterError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise InvalidParameterError(f"duplicate edge ({e[0]},{e[1]})")
        seen.add(e)
        out.append(e)
    return tuple(out)


def adjacency_lists(g: WeightedGraph) -> list[list[int]]:
    """Neighbor lists, each sorted ascending."""
    adj: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()
    return adj


def vertex_incident_edges(g: WeightedGraph) -> list[list[int]]:
    """For each vertex, the indices of edges touching it (ascending)."""
    inc: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for i, (u, v) in enumerate(g.edges):
        inc[u].append(i)
        inc[v].append(i)
    return inc


def item_conflict_masks(g: WeightedGraph) -> list[int]:
    """Bitmask per item of the items it may not share a class with.

    Vertex mode: graph neighbors.  Edge mode: edges sharing an endpoint.
    """
    n = g.item_count
    masks = [0] * n
    if g.mode is Mode.VERTEX:
        for u, v in g.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
    else:
        for group in vertex_incident_edges(g):
            gmask = 0
            for i in group:
                gmask |= 1 << i
            for i in group:
                masks[i] |= gmask & ~(1 << i)
    return masks


def conflict_groups(g: WeightedGraph) -> list[tuple[int, ...]]:
    """Groups of pairwise-conflicting items, used for search lower bounds.

    Edge mode: the edges at each vertex.  Vertex mode: each edge's pair.
    """
    if g.mode is Mode.EDGE:
        return [tuple(group) for group in vertex_incident_edges(g) if len(group) >= 2]
    return [tuple(e) for e in g.edges]


def max_degree(g: WeightedGraph) -> int:
    deg = [0] * g.vertex_count
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return max(deg, default=0)


@dataclass(frozen=True)
class StructureInfo:
    is_bipartite: bool
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None
    is_forest: bool
    is_tree: bool
    max_degree: int
    component_count: int


def structure_probe(g: WeightedGraph) -> StructureInfo:
    """BFS classification: bipartition (deterministic sides), forest/tree flags.

    Component roots are taken in ascending id order and land on side 0,
    so the bipartition is reproducible.
    """
    adj = adjacency_lists(g)
    side = [-1] * g.vertex_count
    bipartite = True
    components = 0
    for root in range(g.vertex_count):
        if side[root] != -1:
            continue
        components += 1
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if side[v] == -1:
                    side[v] = side[u] ^ 1
                    queue.append(v)
                elif side[v] == side[u]:
                    bipartite = False
    acyclic = len(g.edges) == g.vertex_count - components
    bipartition = None
    if bipartite:
        left = tuple(v for v in range(g.vertex_count) if side[v] == 0)
        right = tuple(v for v in range(g.vertex_count) if side[v] == 1)
        bipartition = (left, right)
    return StructureInfo(
        is_bipartite=bipartite,
        bipartition=bipartition,
        is_forest=acyclic,
        is_tree=acyclic and components == 1 and g.vertex_count >= 1,
        max_degree=max_degree(g),
        component_count=components,
    )


@dataclass(frozen=True)
class OrderedPartition:
    """Consecutive blocks of items sorted by non-increasing weight."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)


def sort_items_by_weight(items: Sequence[int], weights: Sequence[Fraction]) -> list[int]:
    """Non-increasing weight; ties go to the smaller id."""
    order = sorted(range(len(items)), key=lambda i: (-weights[i], items[i]))
    return [items[i] for i in order]


def ordered_b_partition(
    items: Sequence[int], weights: Sequence[Fraction], b: int
) -> OrderedPartition:
    """Chop the weight-sorted items into ceil(len/b) blocks of size <= b.

    `weights[i]` is the weight of `items[i]`.  Block 1 holds the b
    heaviest items, block 2 the next b, and so on.
    """
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    if len(items) != len(weights):
        raise InvalidParameterError("items and weights must have equal length")
    if len(set(items)) != len(items):
        raise InvalidParameterError("items must be distinct")
    ordered = sort_items_by_weight(items, [Fraction(w) for w in weights])
    blocks = tuple(
        tuple(ordered[i : i + b]) for i in range(0, len(ordered), b)
    )
    return OrderedPartition(blocks=blocks)


@dataclass(frozen=True)
class Coloring:
    """An ordered sequence of color classes with derived weights."""

    classes: tuple[frozenset[int], ...]
    class_weights: tuple[Fraction, ...]
    total_weight: Fraction

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @staticmethod
    def from_classes(
        g: WeightedGraph,
        classes: Iterable[Iterable[int]],
        keep_order: bool = False,
    ) -> "Coloring":
        """Build a coloring; empty classes drop out.

        Unless `keep_order` is set, classes are sorted by (weight
        descending, smallest member id) for a canonical presentation.
        """
        cleaned = [frozenset(c) for c in classes if frozenset(c)]
        weighted = [
            (c, max(g.item_weight(i) for i in c)) for c in cleaned
        ]
        if not keep_order:
            weighted.sort(key=lambda cw: (-cw[1], min(cw[0])))
        return Coloring(
            classes=tuple(c for c, _ in weighted),
            class_weights=tuple(w for _, w in weighted),
            total_weight=sum((w for _, w in weighted), Fraction(0)),
        )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str | None
    detail: str | None
    class_weights: tuple[Fraction, ...]
    total_weight: Fraction

    @staticmethod
    def failure(reason: str, detail: str) -> "ValidationReport":
        return ValidationReport(False, reason, detail, (), Fraction(0))


def validate_coloring(
    g: WeightedGraph, classes: Coloring | Sequence[Iterable[int]], b: int
) -> ValidationReport:
    """Check a candidate solution: partition, non-adjacency, |class| <= b.

    Weights are recomputed from the graph regardless of what the caller
    supplied, so a Coloring with stale weights is also caught.
    """
    if b < 1:
        return ValidationReport.failure("invalid bound", f"b must be >= 1, got {b}")
    if isinstance(classes, Coloring):
        supplied = classes
        class_list = [set(c) for c in classes.classes]
    else:
        supplied = None
        class_list = [set(c) for c in classes]

    n = g.item_count
    seen: set[int] = set()
    for idx, cls in enumerate(class_list):
        if not cls:
            return ValidationReport.failure("not a partition", f"class {idx} is empty")
        for item in cls:
            if not (0 <= item < n):
                return ValidationReport.failure(
                    "not a partition", f"unknown item {item} in class {idx}"
                )
            if item in seen:
                return ValidationReport.failure(
                    "not a partition", f"item {item} appears twice"
                )
            seen.add(item)
    if len(seen) != n:
        missing = next(i for i in range(n) if i not in seen)
        return ValidationReport.failure(
            "not a partition", f"item {missing} is uncovered"
        )

    masks = item_conflict_masks(g)
    for idx, cls in enumerate(class_list):
        if len(cls) > b:
            return ValidationReport.failure(
                "cardinality bound", f"class {idx} has {len(cls)} items > b={b}"
            )
        cmask = 0
        for item in cls:
            cmask |= 1 << item
        for item in cls:
            if masks[item] & cmask:
                other = (masks[item] & cmask).bit_length() - 1
                return ValidationReport.failure(
                    "adjacent items", f"items {item} and {other} share class {idx}"
                )

    weights = tuple(
        max(g.item_weight(i) for i in cls) for cls in class_list
    )
    total = sum(weights, Fraction(0))
    if supplied is not None and (
        tuple(supplied.class_weights) != weights or supplied.total_weight != total
    ):
        return ValidationReport.failure(
            "weight mismatch",
            f"recomputed weights {weights} / total {total} differ from stored",
        )
    return ValidationReport(True, None, None, weights, total)


def induced_subgraph(
    g: WeightedGraph, vertices: Iterable[int]
) -> tuple[WeightedGraph, list[int]]:
    """Vertex-induced subgraph plus the sub-id -> original-id mapping."""
    if g.mode is not Mode.VERTEX:
        raise InvalidParameterError("induced_subgraph expects a vertex-weighted graph")
    ids = sorted(set(vertices))
    if ids and not (0 <= ids[0] and ids[-1] < g.vertex_count):
        raise InvalidParameterError("vertex out of range")
    index = {v: i for i, v in enumerate(ids)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    sub = WeightedGraph.vertex_weighted(
        len(ids), edges, [g.weights[v] for v in ids]
    )
    return sub, ids


def integer_scaled_weights(weights: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale rationals to integers by the lcm of denominators.

    Returns (scaled integers, scale).  Exact searches compare in the
    integer domain and convert back at the boundary.
    """
    scale = 1
    for w in weights:
        scale = math.lcm(scale, w.denominator)
    return [int(w * scale) for w in weights], scale
