"""Hardness-instance construction: from list edge-coloring on chains to
bounded max-edge-coloring on a single tree.

Every original edge becomes a three-edge chain; stars with one edge of
each weight 1..k force the class structure; color gadgets equalize list
frequencies; finally the forest is stitched into one tree by a matching
of tiny-weight edges.  All built weights are doubled so the stitch
weight can be the integer 1 while staying below every structural weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    InvalidCertificateError,
    InvalidParameterError,
    InvalidStructureError,
)
from .graphs import (
    Coloring,
    Mode,
    WeightedGraph,
    adjacency_lists,
    max_degree,
    structure_probe,
    vertex_incident_edges,
)
from .oracle import ListColoringInstance

CHAIN_BOUND = 5  # uniform per-color capacity in normalized chains instances


@dataclass(frozen=True)
class ChainListInstance:
    """List edge-coloring on disjoint paths, two colors per list, b=5."""

    graph: WeightedGraph
    k: int
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.graph.mode is not Mode.EDGE:
            raise InvalidParameterError("chains instance must be edge mode")
        info = structure_probe(self.graph)
        if not info.is_forest or info.max_degree > 2:
            raise InvalidStructureError("underlying graph is not a disjoint union of paths")
        if self.k < 2:
            raise InvalidParameterError("chains instance needs k >= 2")
        if len(self.lists) != len(self.graph.edges):
            raise InvalidParameterError("one list per edge required")
        palette = set(range(1, self.k + 1))
        for i, lst in enumerate(self.lists):
            if len(lst) != 2 or not set(lst) <= palette:
                raise InvalidParameterError(
                    f"edge {i} needs exactly two colors from 1..{self.k}"
                )

    def as_list_instance(self) -> ListColoringInstance:
        return ListColoringInstance(
            graph=self.graph,
            k=self.k,
            lists=self.lists,
            bounds=(CHAIN_BOUND,) * self.k,
        )


def _require_chains(g: WeightedGraph):
    if g.mode is not Mode.EDGE:
        raise InvalidParameterError("expected an edge-mode instance")
    info = structure_probe(g)
    if not info.is_forest or info.max_degree > 2:
        raise InvalidStructureError("underlying graph is not a disjoint union of paths")


def vertex_chain_to_edge_chain(inst: ListColoringInstance) -> ListColoringInstance:
    """Line-graph step: vertex lists on paths become edge lists on paths.

    Each path component of t vertices maps to a fresh path of t edges
    whose j-th edge inherits the j-th vertex's list; the component walk
    starts at its smallest endpoint, so the result is deterministic.
    """
    g = inst.graph
    if g.mode is not Mode.VERTEX:
        raise InvalidParameterError("expected a vertex-mode instance")
    info = structure_probe(g)
    if not info.is_forest or max_degree(g) > 2:
        raise InvalidStructureError("underlying graph is not a disjoint union of paths")
    adj = adjacency_lists(g)
    seen = [False] * g.vertex_count
    new_edges: list[tuple[int, int]] = []
    new_lists: list[frozenset[int]] = []
    next_vertex = 0
    for start in range(g.vertex_count):
        if seen[start] or len(adj[start]) > 1:
            continue
        # walk the path from this endpoint (isolated vertices included)
        walk = [start]
        seen[start] = True
        prev, cur = -1, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen[cur] = True
            walk.append(cur)
        base = next_vertex
        next_vertex += len(walk) + 1
        for offset, v in enumerate(walk):
            new_edges.append((base + offset, base + offset + 1))
            new_lists.append(inst.lists[v])
    graph = WeightedGraph.edge_weighted(
        next_vertex, new_edges, [1] * len(new_edges)
    )
    return ListColoringInstance(
        graph=graph, k=inst.k, lists=tuple(new_lists), bounds=inst.bounds
    )


def normalize_chain_list_instance(inst: ListColoringInstance) -> ChainListInstance:
    """Bring a chains list instance to the uniform shape: every list has
    exactly two colors and every bound is 5.

    Per color i, 5-b_i fresh edges listed {i} eat the excess capacity;
    two fresh colors are added, the first joins every singleton list and
    is pinned down by ten fresh edges listed with both new colors.
    """
    _require_chains(inst.graph)
    k = inst.k
    if k < 1:
        raise InvalidParameterError("need k >= 1")
    for i, lst in enumerate(inst.lists):
        if len(lst) > 2:
            raise InvalidParameterError(f"edge {i} lists more than two colors")
    for i, bound in enumerate(inst.bounds, 1):
        if bound > CHAIN_BOUND:
            raise InvalidParameterError(
                f"bound of color {i} exceeds {CHAIN_BOUND}"
            )

    edges = list(inst.graph.edges)
    lists: list[set[int]] = [set(lst) for lst in inst.lists]
    n = inst.graph.vertex_count

    def fresh_edge() -> tuple[int, int]:
        nonlocal n
        e = (n, n + 1)
        n += 2
        return e

    for i, bound in enumerate(inst.bounds, 1):
        for _ in range(CHAIN_BOUND - bound):
            edges.append(fresh_edge())
            lists.append({i})
    filler, closer = k + 1, k + 2
    for lst in lists:
        if len(lst) == 1:
            lst.add(filler)
    for _ in range(10):
        edges.append(fresh_edge())
        lists.append({filler, closer})
    graph = WeightedGraph.edge_weighted(n, edges, [1] * len(edges))
    return ChainListInstance(
        graph=graph, k=k + 2, lists=tuple(frozenset(lst) for lst in lists)
    )


@dataclass(frozen=True)
class ReductionOutput:
    tree: WeightedGraph
    b_prime: int
    k: int
    target_weight: Fraction
    epsilon: Fraction
    scale: int
    p: int
    F: int
    frequencies: tuple[int, ...]
    chains: tuple[tuple[int, int, int], ...]
    stitch_edges: tuple[int, ...]
    source: ChainListInstance


class _Builder:
    def __init__(self):
        self.edges: list[tuple[int, int]] = []
        self.weights: list[int] = []
        self.n = 0

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int, w: int) -> int:
        self.edges.append((u, v))
        self.weights.append(w)
        return len(self.edges) - 1

    def star(self, attach: int, connection_weight: int, k: int):
        """A fresh center joined to `attach`, with one edge of every
        weight 1..k (the connection edge carries connection_weight)."""
        center = self.vertex()
        self.edge(attach, center, connection_weight)
        for t in range(1, k + 1):
            if t != connection_weight:
                self.edge(center, self.vertex(), t)


def build_hardness_instance(inst: ChainListInstance) -> ReductionOutput:
    """Emit the single-tree edge instance together with its bound and
    target weight.  Construction is total; for the degenerate shapes
    (k=2 or no edges) the target keeps the formula value even though the
    star forcing that realizes it is absent.
    """
    k = inst.k
    source_edges = inst.graph.edges
    freq = [0] * (k + 1)
    for lst in inst.lists:
        for c in lst:
            freq[c] += 1
    F = max(freq[1:], default=0)

    bd = _Builder()
    vmap: dict[int, int] = {}
    used_vertices = sorted({v for e in source_edges for v in e})
    for v in used_vertices:
        vmap[v] = bd.vertex()

    chains: list[tuple[int, int, int]] = []
    for ei, (u, v) in enumerate(source_edges):
        i, j = sorted(inst.lists[ei])
        u2 = bd.vertex()
        v2 = bd.vertex()
        e1 = bd.edge(vmap[u], u2, 1)
        e2 = bd.edge(u2, v2, 1)
        e3 = bd.edge(v2, vmap[v], 1)
        chains.append((e1, e2, e3))
        for attach in (u2, v2):
            for q in range(1, k + 1):
                if q != i and q != j:
                    bd.star(attach, q, k)

    for color in range(1, k + 1):
        for _ in range(F - freq[color]):
            x = bd.vertex()
            y = bd.vertex()
            bd.edge(x, y, color)
            for q in range(1, k + 1):
                if q != color:
                    bd.star(y, q, k)

    # components before stitching, ordered by smallest vertex
    parent = list(range(bd.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in bd.edges:
        ra, rb = find(u), find(v)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comp_vertices: dict[int, list[int]] = {}
    for v in range(bd.n):
        comp_vertices.setdefault(find(v), []).append(v)
    components = [sorted(vs) for _, vs in sorted(comp_vertices.items())]
    p = len(components)

    scale = 2
    weights = [w * scale for w in bd.weights]
    epsilon = Fraction(1)  # scaled; pre-scale 1/2, below every structural weight

    stitch: list[int] = []
    for t in range(p - 1):
        # outgoing at the second-smallest vertex, incoming at the smallest,
        # so consecutive stitch edges never share a vertex
        out_v = components[t][1]
        in_v = components[t + 1][0]
        bd.edges.append((out_v, in_v))
        weights.append(1)
        stitch.append(len(bd.edges) - 1)

    tree = WeightedGraph.edge_weighted(bd.n, bd.edges, weights)
    b_prime = k * (k - 1) * F - 2 * len(source_edges) + CHAIN_BOUND + F
    if not bd.edges:
        target = Fraction(0)
    else:
        target = Fraction(scale * k * (k + 1), 2)
        if p > 1:
            target += (-(-(p - 1) // b_prime)) * epsilon
    return ReductionOutput(
        tree=tree,
        b_prime=b_prime,
        k=k,
        target_weight=target,
        epsilon=epsilon,
        scale=scale,
        p=p,
        F=F,
        frequencies=tuple(freq[1:]),
        chains=tuple(chains),
        stitch_edges=tuple(stitch),
        source=inst,
    )


def verify_yes_certificate(out: ReductionOutput, cert: Sequence[int]) -> Coloring:
    """Materialize the coloring a chains solution induces on the tree.

    The certificate assigns each source edge a color from its list, uses
    no color more than five times, and colors adjacent source edges
    differently.  Chain edges follow the certificate (ends take the
    chosen color, the middle takes the other list color); every other
    structural edge lands in the class of its own weight; stitch edges
    fill separate classes in blocks of b'.
    """
    inst = out.source
    m = len(inst.graph.edges)
    if len(cert) != m:
        raise InvalidCertificateError(f"expected {m} certificate entries, got {len(cert)}")
    counts = [0] * (out.k + 1)
    for ei, color in enumerate(cert):
        if color not in inst.lists[ei]:
            raise InvalidCertificateError(f"edge {ei} certified with color outside its list")
        counts[color] += 1
        if counts[color] > CHAIN_BOUND:
            raise InvalidCertificateError(f"color {color} used more than {CHAIN_BOUND} times")
    for group in vertex_incident_edges(inst.graph):
        for a in range(len(group)):
            for c in range(a + 1, len(group)):
                if cert[group[a]] == cert[group[c]]:
                    raise InvalidCertificateError(
                        f"adjacent edges {group[a]} and {group[c]} share a color"
                    )

    classes: list[set[int]] = [set() for _ in range(out.k)]
    chain_edges: dict[int, int] = {}  # tree edge index -> class color
    for ei, (e1, e2, e3) in enumerate(out.chains):
        chosen = cert[ei]
        other = next(c for c in inst.lists[ei] if c != chosen)
        chain_edges[e1] = chosen
        chain_edges[e3] = chosen
        chain_edges[e2] = other
    stitch_set = set(out.stitch_edges)
    for idx in range(len(out.tree.edges)):
        if idx in stitch_set:
            continue
        if idx in chain_edges:
            classes[chain_edges[idx] - 1].add(idx)
        else:
            weight = out.tree.weights[idx] / out.scale
            classes[int(weight) - 1].add(idx)
    all_classes: list[set[int]] = [c for c in classes if c]
    block = []
    for idx in out.stitch_edges:
        block.append(idx)
        if len(block) == out.b_prime:
            all_classes.append(set(block))
            block = []
    if block:
        all_classes.append(set(block))
    return Coloring.from_classes(out.tree, all_classes)
