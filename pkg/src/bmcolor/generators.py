"""Seeded instance generators plus a local search for instances that
push first-fit greedy as far from optimal as possible."""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction

from .edge_algos import greedy_ec
from .errors import InvalidParameterError
from .graphs import Mode, WeightedGraph
from .oracle import DEFAULT_SIZE_GUARD, oracle_opt

WeightRange = tuple[int, int]

DEFAULT_WEIGHT_RANGE: WeightRange = (1, 10)


def _draw_weights(rng: random.Random, count: int, weight_range: WeightRange) -> list[Fraction]:
    lo, hi = weight_range
    if lo < 1 or hi < lo:
        raise InvalidParameterError("weight range must satisfy 1 <= lo <= hi")
    return [Fraction(rng.randint(lo, hi)) for _ in range(count)]


def _finish(
    n: int,
    edges: list[tuple[int, int]],
    mode: Mode,
    rng: random.Random,
    weight_range: WeightRange,
) -> WeightedGraph:
    if mode is Mode.VERTEX:
        return WeightedGraph.vertex_weighted(n, edges, _draw_weights(rng, n, weight_range))
    return WeightedGraph.edge_weighted(n, edges, _draw_weights(rng, len(edges), weight_range))


def gen_bipartite(
    rng: random.Random,
    n_left: int,
    n_right: int,
    density: float,
    *,
    weight_range: WeightRange = DEFAULT_WEIGHT_RANGE,
    mode: Mode = Mode.VERTEX,
) -> tuple[WeightedGraph, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Each left-right pair becomes an edge with probability `density`.
    Left vertices are 0..n_left-1, right vertices follow."""
    if n_left < 0 or n_right < 0:
        raise InvalidParameterError("side sizes must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise InvalidParameterError("density must lie in [0, 1]")
    edges = [
        (u, n_left + v)
        for u in range(n_left)
        for v in range(n_right)
        if rng.random() < density
    ]
    g = _finish(n_left + n_right, edges, mode, rng, weight_range)
    sides = (tuple(range(n_left)), tuple(range(n_left, n_left + n_right)))
    return g, sides


def gen_tree(
    rng: random.Random,
    n: int,
    *,
    weight_range: WeightRange = DEFAULT_WEIGHT_RANGE,
    mode: Mode = Mode.VERTEX,
) -> WeightedGraph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n < 0:
        raise InvalidParameterError("vertex count must be non-negative")
    edges: list[tuple[int, int]] = []
    if n >= 2:
        seq = [rng.randrange(n) for _ in range(n - 2)]
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        leaves = [v for v in range(n) if degree[v] == 1]
        heapq.heapify(leaves)
        for x in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, x))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(leaves, x)
        edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return _finish(n, edges, mode, rng, weight_range)


def gen_general(
    rng: random.Random,
    n: int,
    density: float,
    *,
    weight_range: WeightRange = DEFAULT_WEIGHT_RANGE,
    mode: Mode = Mode.VERTEX,
) -> WeightedGraph:
    """Erdos-Renyi style: every unordered pair flips one coin."""
    if n < 0:
        raise InvalidParameterError("vertex count must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise InvalidParameterError("density must lie in [0, 1]")
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < density
    ]
    return _finish(n, edges, mode, rng, weight_range)


def gen_random(
    family: str,
    seed: int,
    *,
    n: int = 0,
    n_left: int = 0,
    n_right: int = 0,
    density: float = 0.5,
    weight_range: WeightRange = DEFAULT_WEIGHT_RANGE,
    mode: Mode = Mode.VERTEX,
):
    """Dispatcher used by the command line; returns (graph, sides) where
    sides is None for the non-bipartite families."""
    rng = random.Random(seed)
    if family == "bipartite":
        return gen_bipartite(
            rng, n_left, n_right, density, weight_range=weight_range, mode=mode
        )
    if family == "tree":
        return gen_tree(rng, n, weight_range=weight_range, mode=mode), None
    if family == "general":
        return gen_general(rng, n, density, weight_range=weight_range, mode=mode), None
    raise InvalidParameterError(f"unknown family {family!r}")


# --- adversarial search ------------------------------------------------

WEIGHT_STEP = Fraction(1, 4096)


@dataclass(frozen=True)
class AdversarialResult:
    graph: WeightedGraph
    b: int
    greedy_weight: Fraction
    opt_weight: Fraction
    ratio: Fraction
    greedy_classes: int
    opt_classes: int
    evaluations: int


def _state_graph(n_vertices: int, order: list[tuple[int, int]]) -> WeightedGraph:
    # weights decrease along the insertion order, so greedy processes the
    # edges exactly in this order while all weights stay near 1
    m = len(order)
    weights = [1 + (m - r) * WEIGHT_STEP for r in range(m)]
    return WeightedGraph.edge_weighted(n_vertices, order, weights)


def _conflict_blocks(g: WeightedGraph, b: int) -> int:
    """How many (edge, class) rejections first-fit suffers for adjacency
    reasons.  Used as a plateau tie-breaker: more rejections means more
    of the forcing structure is in place even when the ratio is flat."""
    ends: list[set[int]] = []
    sizes: list[int] = []
    blocked = 0
    for ei in sorted(range(len(g.edges)), key=lambda i: (-g.weights[i], i)):
        u, v = g.edges[ei]
        for c in range(len(ends)):
            if sizes[c] >= b:
                continue
            if u in ends[c] or v in ends[c]:
                blocked += 1
                continue
            ends[c].update((u, v))
            sizes[c] += 1
            break
        else:
            ends.append({u, v})
            sizes.append(1)
    return blocked


def _mutate(
    rng: random.Random,
    order: list[tuple[int, int]],
    pairs: list[tuple[int, int]],
    budget: int,
) -> list[tuple[int, int]] | None:
    move = rng.randrange(5)
    cand = list(order)
    used = set(order)
    if move == 0 and cand:
        i = rng.randrange(len(cand))
        free = [p for p in pairs if p not in used or p == cand[i]]
        cand[i] = rng.choice(free)
        if cand[i] == order[i]:
            return None
    elif move == 1 and len(cand) >= 2:
        i, j = rng.sample(range(len(cand)), 2)
        cand[i], cand[j] = cand[j], cand[i]
    elif move == 2 and len(cand) >= 2:
        i = rng.randrange(len(cand))
        e = cand.pop(i)
        cand.insert(rng.randrange(len(cand) + 1), e)
        if cand == order:
            return None
    elif move == 3 and len(cand) < budget and len(used) < len(pairs):
        free = [p for p in pairs if p not in used]
        cand.insert(rng.randrange(len(cand) + 1), rng.choice(free))
    elif move == 4 and len(cand) > 1:
        cand.pop(rng.randrange(len(cand)))
    else:
        return None
    return cand


def adversarial_greedy_search(
    b: int,
    *,
    seed: int = 0,
    iterations: int = 300,
    restarts: int = 6,
    edge_budget: int = 12,
    n_left: int = 6,
    n_right: int = 7,
    size_guard: int = DEFAULT_SIZE_GUARD,
) -> AdversarialResult:
    """Hill-climb over bipartite edge sets and their insertion orders,
    maximizing the exact greedy-to-optimal weight ratio.

    The state is an ordered edge list; weights are synthesized from the
    order (near 1, strictly decreasing), so the ratio is governed almost
    entirely by how many classes first-fit opens versus the optimum.
    Sideways moves are accepted; a rejection-count potential breaks
    plateau ties.  Restarts are independent; the best state overall wins.
    """
    if b < 1:
        raise InvalidParameterError("need b >= 1")
    if edge_budget < 1:
        raise InvalidParameterError("need at least one edge")
    if edge_budget > size_guard:
        raise InvalidParameterError("edge budget beyond the exact-solver guard")
    if n_left < 1 or n_right < 1:
        raise InvalidParameterError("need at least one vertex per side")
    rng = random.Random(seed)
    pairs = [(u, n_left + v) for u in range(n_left) for v in range(n_right)]
    n_vertices = n_left + n_right
    evaluations = 0

    def evaluate(order: list[tuple[int, int]]):
        nonlocal evaluations
        evaluations += 1
        g = _state_graph(n_vertices, order)
        greedy = greedy_ec(g, b)
        opt = oracle_opt(g, b, size_guard=size_guard)
        ratio = greedy.total_weight / opt.opt_weight
        return (ratio, _conflict_blocks(g, b)), g, greedy, opt

    best = None  # (score, graph, greedy coloring, oracle result)
    for _ in range(restarts):
        order = rng.sample(pairs, min(edge_budget, len(pairs)))
        score, g, greedy, opt = evaluate(order)
        if best is None or score > best[0]:
            best = (score, g, greedy, opt)
        for _ in range(iterations):
            cand = _mutate(rng, order, pairs, edge_budget)
            if cand is None:
                continue
            cscore, cg, cgreedy, copt = evaluate(cand)
            if cscore >= score:
                score, order = cscore, cand
                if cscore > best[0]:
                    best = (cscore, cg, cgreedy, copt)

    (ratio, _), g, greedy, opt = best[0], best[1], best[2], best[3]
    return AdversarialResult(
        graph=g,
        b=b,
        greedy_weight=greedy.total_weight,
        opt_weight=opt.opt_weight,
        ratio=ratio,
        greedy_classes=len(greedy.classes),
        opt_classes=opt.class_count,
        evaluations=evaluations,
    )
