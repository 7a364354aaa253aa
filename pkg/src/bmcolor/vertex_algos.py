"""Vertex-mode algorithms for bounded max-coloring of bipartite graphs
and exact solving on forests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    GuardExceededError,
    InvalidParameterError,
    InvalidStructureError,
)
from .graphs import (
    Coloring,
    Mode,
    WeightedGraph,
    induced_subgraph,
    ordered_b_partition,
    structure_probe,
)
from .oracle import (
    OracleResult,
    _capacity_ok,
    _decide_multiset,
    _weight_profile,
    exact_bounded_coloring_upto,
    two_color_list_bounded,
)

Bipartition = tuple[Sequence[int], Sequence[int]]


def _checked_bipartition(
    g: WeightedGraph, bipartition: Bipartition | None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if g.mode is not Mode.VERTEX:
        raise InvalidParameterError("expected a vertex-weighted graph")
    if bipartition is None:
        info = structure_probe(g)
        if not info.is_bipartite:
            raise InvalidStructureError("graph is not bipartite")
        assert info.bipartition is not None
        return info.bipartition
    left, right = (tuple(sorted(bipartition[0])), tuple(sorted(bipartition[1])))
    if sorted(left + right) != list(range(g.vertex_count)):
        raise InvalidStructureError("bipartition does not partition the vertices")
    left_set = set(left)
    for u, v in g.edges:
        if (u in left_set) == (v in left_set):
            raise InvalidStructureError(f"edge ({u},{v}) does not cross the bipartition")
    return left, right


def split(
    g: WeightedGraph, b: int, bipartition: Bipartition | None = None
) -> Coloring:
    """Color each side by its ordered b-partition.

    Uses at most one class more than optimal and at most twice the
    optimal weight on bipartite graphs.
    """
    left, right = _checked_bipartition(g, bipartition)
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    classes: list[tuple[int, ...]] = []
    for side in (left, right):
        part = ordered_b_partition(side, [g.weights[v] for v in side], b)
        classes.extend(part.blocks)
    return Coloring.from_classes(g, classes)


def vc_b_bipartite(
    g: WeightedGraph, b: int, bipartition: Bipartition | None = None
) -> Coloring:
    """Unit-weight bipartite solver with ratio 4/3.

    Three size regimes: everything in one or two classes when n <= b;
    a two-versus-three color decision when b < n <= 2b; split otherwise.
    Weights must be all equal (the class count is then the whole cost).
    """
    left, right = _checked_bipartition(g, bipartition)
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    if len(set(g.weights)) > 1:
        raise InvalidParameterError("vc_b_bipartite requires equal weights")
    n = g.vertex_count
    if n == 0:
        return Coloring.from_classes(g, [])
    if n <= b:
        if not g.edges:
            return Coloring.from_classes(g, [range(n)])
        return Coloring.from_classes(g, [left, right])
    if n <= 2 * b:
        lists = [frozenset({1, 2})] * n
        assignment = two_color_list_bounded(g, lists, b, b)
        if assignment is not None:
            ones = [v for v in range(n) if assignment[v] == 1]
            twos = [v for v in range(n) if assignment[v] == 2]
            return Coloring.from_classes(g, [ones, twos])
    return split(g, b, (left, right))


@dataclass(frozen=True)
class SchemeParams:
    """p is the prefix color budget; the guard caps b when p >= 4
    (the exhaustive sub-solver is exponential in b*(p-1))."""

    p: int
    fixed_b_guard: int = 4


SubSolver = Callable[[WeightedGraph, int, int], OracleResult | None]


def _prefix_upto_two(sub: WeightedGraph, b: int) -> Coloring | None:
    """Minimum-weight coloring of `sub` with at most two classes, or None.

    The heavier class always weighs max(w); candidates for the second
    class weight are the distinct vertex weights, each settled by the
    polynomial two-color decision.
    """
    n = sub.vertex_count
    if n == 0:
        return Coloring.from_classes(sub, [])
    best: Coloring | None = None
    if not sub.edges and n <= b:
        best = Coloring.from_classes(sub, [range(n)])
    for w2 in sorted(set(sub.weights), reverse=True):
        lists = [frozenset({1}) if w > w2 else frozenset({1, 2}) for w in sub.weights]
        assignment = two_color_list_bounded(sub, lists, b, b)
        if assignment is None:
            continue
        classes = [
            [v for v in range(n) if assignment[v] == c] for c in (1, 2)
        ]
        cand = Coloring.from_classes(sub, classes)
        if best is None or cand.total_weight < best.total_weight:
            best = cand
    return best


def _optimal_prefix(
    sub: WeightedGraph, b: int, p: int, subsolver: SubSolver
) -> Coloring | None:
    if sub.vertex_count == 0:
        return Coloring.from_classes(sub, [])
    if p <= 1:
        return None
    if p == 2:
        if not sub.edges and sub.vertex_count <= b:
            return Coloring.from_classes(sub, [range(sub.vertex_count)])
        return None
    if p == 3:
        return _prefix_upto_two(sub, b)
    result = subsolver(sub, b, p - 1)
    return result.witness if result is not None else None


def scheme(
    g: WeightedGraph,
    b: int,
    params: SchemeParams,
    subsolver: SubSolver | None = None,
    bipartition: Bipartition | None = None,
) -> Coloring:
    """Prefix-and-split family with ratio 1 + 1/H_p on bipartite graphs.

    For each prefix of the j heaviest vertices (j up to b*(p-1)) that
    admits at most p-1 classes, concatenate its optimal coloring with
    split on the remainder; keep the lightest candidate (smallest j on
    ties).  scheme with p=1 reduces to split.
    """
    left, right = _checked_bipartition(g, bipartition)
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    if params.p < 1:
        raise InvalidParameterError(f"p must be >= 1, got {params.p}")
    if params.p >= 4 and b > params.fixed_b_guard:
        raise GuardExceededError(
            f"p={params.p} with b={b} exceeds fixed_b_guard={params.fixed_b_guard}"
        )
    if subsolver is None:
        subsolver = exact_bounded_coloring_upto

    n = g.vertex_count
    order = sorted(range(n), key=lambda v: (-g.weights[v], v))
    left_set = set(left)

    best_weight: Fraction | None = None
    best_classes: list[list[int]] | None = None
    for j in range(0, min(b * (params.p - 1), n) + 1):
        prefix_ids = order[:j]
        rest_ids = order[j:]
        sub_prefix, prefix_map = induced_subgraph(g, prefix_ids)
        prefix_col = _optimal_prefix(sub_prefix, b, params.p, subsolver)
        if prefix_col is None:
            continue
        sub_rest, rest_map = induced_subgraph(g, rest_ids)
        rest_bip = (
            [i for i, v in enumerate(rest_map) if v in left_set],
            [i for i, v in enumerate(rest_map) if v not in left_set],
        )
        rest_col = split(sub_rest, b, rest_bip)
        weight = prefix_col.total_weight + rest_col.total_weight
        if best_weight is None or weight < best_weight:
            best_weight = weight
            best_classes = [
                [prefix_map[i] for i in cls] for cls in prefix_col.classes
            ] + [
                [rest_map[i] for i in cls] for cls in rest_col.classes
            ]
    assert best_classes is not None  # j=0 always yields a candidate
    return Coloring.from_classes(g, best_classes)


def tree_exact_fixed_k(
    g: WeightedGraph, k: int, b: int, size_guard: int = 16
) -> Coloring | None:
    """Exact optimum with exactly k class weights on forests, or None.

    Enumerates the realizable weight multisets of size k (ascending
    total weight), turning each into a list-coloring decision: an item
    may take color i when its weight is at most the i-th class weight.
    Works in both modes; in edge mode the underlying graph must still
    be a forest.
    """
    if k < 0 or b < 1:
        raise InvalidParameterError("need k >= 0 and b >= 1")
    if not structure_probe(g).is_forest:
        raise InvalidStructureError("graph is not a forest")
    n = g.item_count
    if n > size_guard:
        raise GuardExceededError(f"{n} items exceed size guard {size_guard}")
    if k == 0 or k > n:
        return Coloring.from_classes(g, []) if n == 0 else None

    values, counts = _weight_profile(g.weights)
    multisets: list[tuple[Fraction, tuple[Fraction, ...]]] = []

    def rec(vi: int, chosen: list[Fraction], total: Fraction):
        if len(chosen) == k:
            multisets.append((total, tuple(chosen)))
            return
        if vi == len(values) or len(chosen) + sum(counts[vi:]) < k:
            return
        take_max = min(counts[vi], k - len(chosen))
        for take in range(take_max, -1, -1):
            rec(vi + 1, chosen + [values[vi]] * take, total + values[vi] * take)

    rec(0, [], Fraction(0))
    multisets.sort(key=lambda tw: (tw[0], tw[1]))
    for _, ms in multisets:
        if not _capacity_ok(ms, values, counts, b):
            continue
        witness = _decide_multiset(g, b, ms)
        if witness is not None:
            return witness
    return None
