"""Exact solvers: optimum bounded max-colorings and list-coloring decisions.

These are the reference answers the approximation algorithms are
measured against, so everything here is exhaustive and deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GuardExceededError, InvalidParameterError
from .graphs import (
    Coloring,
    Mode,
    WeightedGraph,
    conflict_groups,
    integer_scaled_weights,
    item_conflict_masks,
    max_degree,
)

DEFAULT_SIZE_GUARD = 12


@dataclass(frozen=True)
class OracleResult:
    opt_weight: Fraction
    class_count: int
    class_weights: tuple[Fraction, ...]
    witness: Coloring


@dataclass(frozen=True)
class ListColoringInstance:
    """Items with per-item allowed colors and per-color cardinality bounds.

    Colors are 1-based ints 1..k.  The graph supplies adjacency (vertex
    or edge mode); its weights play no role in the decision.
    """

    graph: WeightedGraph
    k: int
    lists: tuple[frozenset[int], ...]
    bounds: tuple[int, ...]

    def __post_init__(self):
        if self.k < 0:
            raise InvalidParameterError("k must be >= 0")
        if len(self.bounds) != self.k:
            raise InvalidParameterError(f"expected {self.k} bounds, got {len(self.bounds)}")
        if any(b < 0 for b in self.bounds):
            raise InvalidParameterError("color bounds must be >= 0")
        if len(self.lists) != self.graph.item_count:
            raise InvalidParameterError(
                f"expected {self.graph.item_count} lists, got {len(self.lists)}"
            )
        palette = set(range(1, self.k + 1))
        for i, lst in enumerate(self.lists):
            if not lst:
                raise InvalidParameterError(f"item {i} has an empty list")
            if not set(lst) <= palette:
                raise InvalidParameterError(f"item {i} lists colors outside 1..{self.k}")


def _position_space(g: WeightedGraph):
    """Sort items by (weight desc, id asc) and remap conflicts/groups."""
    n = g.item_count
    weights = g.weights
    int_w, _ = integer_scaled_weights(weights)
    order = sorted(range(n), key=lambda i: (-weights[i], i))
    pos_of = [0] * n
    for p, item in enumerate(order):
        pos_of[item] = p
    pos_w = [int_w[order[p]] for p in range(n)]
    conf = item_conflict_masks(g)
    pos_conf = [0] * n
    for item in range(n):
        m = conf[item]
        pm = 0
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            pm |= 1 << pos_of[j]
        pos_conf[pos_of[item]] = pm
    group_masks = []
    for grp in conflict_groups(g):
        gm = 0
        for item in grp:
            gm |= 1 << pos_of[item]
        group_masks.append(gm)
    return order, pos_w, pos_conf, group_masks


def _branch_and_bound(
    g: WeightedGraph, b: int, max_classes: int, size_guard: int
) -> list[int] | None:
    """Return the optimal class member-masks (position space) or None.

    Items join open classes in creation order before opening a new one,
    so the first leaf reached is the first-fit solution and the final
    witness is the first optimal solution in DFS order.
    """
    n = g.item_count
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    if n > size_guard:
        raise GuardExceededError(f"{n} items exceed size guard {size_guard}")
    if n == 0:
        return []
    order, pos_w, pos_conf, group_masks = _position_space(g)
    min_w = pos_w[-1]

    members: list[int] = []
    blocked: list[int] = []
    sizes: list[int] = []
    best_weight: int | None = None
    best_classes: list[int] | None = None

    def extra_lower_bound(t: int, assigned: int) -> int:
        # capacity: items beyond the open slack force new classes
        slack = 0
        for s in sizes:
            slack += b - s
        over = (n - t) - slack
        extra = ((over + b - 1) // b) * min_w if over > 0 else 0
        # conflict groups: pairwise-adjacent items need distinct classes
        for gm in group_masks:
            um = gm & ~assigned
            cnt = um.bit_count()
            if cnt == 0:
                continue
            avail = 0
            for ci in range(len(members)):
                if sizes[ci] < b and not (members[ci] & gm):
                    avail += 1
            need = cnt - avail
            if need <= 0:
                continue
            # high positions carry the smallest weights
            s = 0
            m = um
            while need:
                p = m.bit_length() - 1
                s += pos_w[p]
                m ^= 1 << p
                need -= 1
            if s > extra:
                extra = s
        return extra

    def dfs(t: int, assigned: int, partial: int):
        nonlocal best_weight, best_classes
        if best_weight is not None:
            if partial >= best_weight:
                return
            if t < n and partial + extra_lower_bound(t, assigned) >= best_weight:
                return
        if t == n:
            best_weight = partial
            best_classes = members.copy()
            return
        bit = 1 << t
        for ci in range(len(members)):
            if sizes[ci] < b and not (blocked[ci] & bit):
                members[ci] |= bit
                sizes[ci] += 1
                saved = blocked[ci]
                blocked[ci] |= pos_conf[t]
                dfs(t + 1, assigned | bit, partial)
                members[ci] ^= bit
                sizes[ci] -= 1
                blocked[ci] = saved
        if len(members) < max_classes:
            members.append(bit)
            sizes.append(1)
            blocked.append(pos_conf[t])
            dfs(t + 1, assigned | bit, partial + pos_w[t])
            members.pop()
            sizes.pop()
            blocked.pop()

    dfs(0, 0, 0)
    if best_classes is None:
        return None
    # translate position masks back to item ids
    out: list[list[int]] = []
    for mask in best_classes:
        cls = []
        m = mask
        while m:
            p = (m & -m).bit_length() - 1
            m &= m - 1
            cls.append(order[p])
        out.append(cls)
    return [sorted(c) for c in out]  # type: ignore[return-value]


def _to_result(g: WeightedGraph, classes: list) -> OracleResult:
    witness = Coloring.from_classes(g, classes, keep_order=True)
    return OracleResult(
        opt_weight=witness.total_weight,
        class_count=witness.class_count,
        class_weights=witness.class_weights,
        witness=witness,
    )


def oracle_opt(
    g: WeightedGraph, b: int, size_guard: int = DEFAULT_SIZE_GUARD
) -> OracleResult:
    """Exact optimum via branch-and-bound; raises past the size guard."""
    classes = _branch_and_bound(g, b, g.item_count, size_guard)
    assert classes is not None  # unbounded class count is always feasible
    return _to_result(g, classes)


def exact_bounded_coloring_upto(
    g: WeightedGraph, b: int, max_colors: int, size_guard: int = DEFAULT_SIZE_GUARD
) -> OracleResult | None:
    """Optimum among colorings with at most `max_colors` classes, if any."""
    if max_colors < 0:
        raise InvalidParameterError("max_colors must be >= 0")
    classes = _branch_and_bound(g, b, max_colors, size_guard)
    if classes is None:
        return None
    return _to_result(g, classes)


def list_coloring_decision(
    inst: ListColoringInstance, size_guard: int = DEFAULT_SIZE_GUARD
) -> list[int] | None:
    """One list-respecting bounded proper assignment (item -> color) or None.

    Exact backtracking; items are tried smallest-list-first, colors in
    ascending order, so the witness is deterministic.
    """
    n = inst.graph.item_count
    if n > size_guard:
        raise GuardExceededError(f"{n} items exceed size guard {size_guard}")
    conf = item_conflict_masks(inst.graph)
    neighbors = [[] for _ in range(n)]
    for i in range(n):
        m = conf[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            neighbors[i].append(j)
    order = sorted(range(n), key=lambda i: (len(inst.lists[i]), i))
    remaining = [0] + list(inst.bounds)  # 1-based
    assign = [0] * n
    choices = [sorted(inst.lists[i]) for i in range(n)]

    def bt(idx: int) -> bool:
        if idx == n:
            return True
        item = order[idx]
        for c in choices[item]:
            if remaining[c] <= 0:
                continue
            if any(assign[j] == c for j in neighbors[item]):
                continue
            assign[item] = c
            remaining[c] -= 1
            if bt(idx + 1):
                return True
            assign[item] = 0
            remaining[c] += 1
        return False

    return assign if bt(0) else None


def _mask_in_range(mask: int, lo: int, hi: int) -> bool:
    if hi < lo:
        return False
    window = ((1 << (hi - lo + 1)) - 1) << lo
    return bool(mask & window)


def two_color_list_bounded(
    g: WeightedGraph,
    lists: Sequence[frozenset[int] | set[int]],
    b1: int,
    b2: int,
) -> list[int] | None:
    """Decide 2-colorability with lists over {1,2} and per-color bounds.

    Polynomial: each connected component of the conflict graph admits at
    most two proper 2-colorings (swap-related); a subset-sum over the
    achievable color-1 usage counts settles the bounds.  The witness
    prefers coloring each component's smallest item with color 1.
    """
    n = g.item_count
    if b1 < 0 or b2 < 0:
        raise InvalidParameterError("color bounds must be >= 0")
    if len(lists) != n:
        raise InvalidParameterError(f"expected {n} lists, got {len(lists)}")
    norm = []
    for i, lst in enumerate(lists):
        s = frozenset(lst)
        if not s or not s <= {1, 2}:
            raise InvalidParameterError(f"item {i} list must be a non-empty subset of {{1,2}}")
        norm.append(s)
    if n == 0:
        return []
    if n > b1 + b2:
        return None

    conf = item_conflict_masks(g)
    neighbors = [[] for _ in range(n)]
    for i in range(n):
        m = conf[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            neighbors[i].append(j)

    seen = [False] * n
    components: list[list[tuple[int, list[int]]]] = []
    # each component: candidate list [(c1_count, colors-by-item)] with the
    # root-takes-color-1 candidate first
    for root in range(n):
        if seen[root]:
            continue
        comp = [root]
        seen[root] = True
        queue = [root]
        while queue:
            u = queue.pop()
            for v in neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comp.sort()
        cands: list[tuple[int, list[int]]] = []
        for root_color in (1, 2):
            colors = {comp[0]: root_color}
            queue = [comp[0]]
            ok = True
            while queue and ok:
                u = queue.pop()
                for v in neighbors[u]:
                    want = 3 - colors[u]
                    if v not in colors:
                        colors[v] = want
                        queue.append(v)
                    elif colors[v] != want:
                        ok = False
                        break
            if not ok:
                continue
            if any(colors[i] not in norm[i] for i in comp):
                continue
            c1 = sum(1 for i in comp if colors[i] == 1)
            cands.append((c1, [colors[i] for i in comp]))
        if not cands:
            return None
        components.append([(c1, comp, colvec) for c1, colvec in cands])  # type: ignore[list-item]

    lo = max(0, n - b2)
    hi = min(b1, n)
    # achievable color-1 totals over suffixes, as bitmasks
    suffix = [0] * (len(components) + 1)
    suffix[len(components)] = 1
    for i in range(len(components) - 1, -1, -1):
        m = 0
        for c1, _, _ in components[i]:
            m |= suffix[i + 1] << c1
        suffix[i] = m
    if not _mask_in_range(suffix[0], lo, hi):
        return None

    assign = [0] * n
    for i, cands in enumerate(components):
        for c1, comp, colvec in cands:
            nlo = max(0, lo - c1)
            nhi = hi - c1
            if _mask_in_range(suffix[i + 1], nlo, nhi):
                for item, color in zip(comp, colvec):
                    assign[item] = color
                lo, hi = nlo, nhi
                break
    return assign


def _weight_profile(weights: Sequence[Fraction]) -> tuple[list[Fraction], list[int]]:
    values = sorted(set(weights), reverse=True)
    counts = [sum(1 for w in weights if w == v) for v in values]
    return values, counts


def _capacity_ok(
    multiset: Sequence[Fraction], values: Sequence[Fraction], counts: Sequence[int], b: int
) -> bool:
    # items needing weight >= v must fit in classes of weight >= v
    items_ge = 0
    for v, cnt in zip(values, counts):
        items_ge += cnt
        classes_ge = sum(1 for w in multiset if w >= v)
        if items_ge > b * classes_ge:
            return False
    return True


def _decide_multiset(
    g: WeightedGraph, b: int, multiset: tuple[Fraction, ...]
) -> Coloring | None:
    lists = []
    for i in range(g.item_count):
        wi = g.item_weight(i)
        allowed = frozenset(ci for ci, wv in enumerate(multiset, 1) if wv >= wi)
        if not allowed:
            return None
        lists.append(allowed)
    inst = ListColoringInstance(
        graph=g, k=len(multiset), lists=tuple(lists), bounds=(b,) * len(multiset)
    )
    assignment = list_coloring_decision(inst, size_guard=g.item_count)
    if assignment is None:
        return None
    classes: list[set[int]] = [set() for _ in multiset]
    for item, c in enumerate(assignment):
        classes[c - 1].add(item)
    return Coloring.from_classes(g, classes)


def coloring_within_budget(
    g: WeightedGraph, b: int, budget: Fraction | int
) -> Coloring | None:
    """Exact decision: a coloring of total weight <= budget, or None.

    Enumerates realizable class-weight multisets (multiplicities capped
    by item counts, sums capped by the budget), discards those failing
    per-weight capacity or the max-degree bound (edge mode), and settles
    survivors with the exact list-coloring decision.  Intended for
    structured instances where pruning bites; no item-count guard.
    """
    budget = Fraction(budget)
    n = g.item_count
    if n == 0:
        return Coloring.from_classes(g, [])
    values, counts = _weight_profile(g.weights)
    min_classes = max(1, -(-n // b))
    if g.mode is Mode.EDGE:
        min_classes = max(min_classes, max_degree(g))

    found: Coloring | None = None

    def rec(vi: int, chosen: list[Fraction], total: Fraction) -> Coloring | None:
        if vi == len(values):
            if len(chosen) < min_classes:
                return None
            ms = tuple(chosen)
            if not _capacity_ok(ms, values, counts, b):
                return None
            return _decide_multiset(g, b, ms)
        v = values[vi]
        max_take = counts[vi]
        if v > 0:
            max_take = min(max_take, int((budget - total) / v))
        # take many heavy classes first: descending-lex multiset order
        for take in range(max_take, -1, -1):
            result = rec(vi + 1, chosen + [v] * take, total + v * take)
            if result is not None:
                return result
        return None

    return rec(0, [], Fraction(0))


def list_driven_minimum(
    g: WeightedGraph, b: int, size_guard: int = DEFAULT_SIZE_GUARD
) -> OracleResult:
    """Independent exact route: minimum over realizable class-weight
    multisets, each settled by list_coloring_decision.

    Multisets are scanned in ascending total-weight order, so the first
    feasible one is optimal.
    """
    n = g.item_count
    if n > size_guard:
        raise GuardExceededError(f"{n} items exceed size guard {size_guard}")
    if b < 1:
        raise InvalidParameterError(f"b must be >= 1, got {b}")
    if n == 0:
        return _to_result(g, [])
    values, counts = _weight_profile(g.weights)
    min_classes = max(1, -(-n // b))
    if g.mode is Mode.EDGE:
        min_classes = max(min_classes, max_degree(g))

    multisets: list[tuple[Fraction, tuple[Fraction, ...]]] = []

    def rec(vi: int, chosen: list[Fraction], total: Fraction):
        if vi == len(values):
            if len(chosen) >= min_classes:
                multisets.append((total, tuple(chosen)))
            return
        for take in range(counts[vi] + 1):
            rec(vi + 1, chosen + [values[vi]] * take, total + values[vi] * take)

    rec(0, [], Fraction(0))
    multisets.sort(key=lambda tw: (tw[0], tw[1]))
    for total, ms in multisets:
        if not _capacity_ok(ms, values, counts, b):
            continue
        witness = _decide_multiset(g, b, ms)
        if witness is not None:
            return OracleResult(
                opt_weight=witness.total_weight,
                class_count=witness.class_count,
                class_weights=witness.class_weights,
                witness=witness,
            )
    raise AssertionError("unbounded class count is always feasible")
