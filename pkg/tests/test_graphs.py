"""Core containers: graphs, ordered partitions, colorings, validation."""
import dataclasses
import random
from fractions import Fraction

import pytest

from bmcolor import (
    Coloring,
    InvalidParameterError,
    Mode,
    WeightedGraph,
    gen_general,
    oracle_opt,
    ordered_b_partition,
    structure_probe,
    validate_coloring,
)
from bmcolor.graphs import induced_subgraph, integer_scaled_weights

from helpers import path_edges, star_vertex, vertex_graph


class TestWeightedGraph:
    def test_edges_stored_smaller_endpoint_first(self):
        g = vertex_graph([1, 2, 3], [(2, 0), (1, 2)])
        assert g.edges == ((0, 2), (1, 2))

    def test_rejects_duplicate_edge_even_when_flipped(self):
        with pytest.raises(InvalidParameterError):
            vertex_graph([1, 2], [(0, 1), (1, 0)])

    def test_rejects_self_loop(self):
        with pytest.raises(InvalidParameterError):
            vertex_graph([1, 2], [(1, 1)])

    def test_rejects_out_of_range_endpoint(self):
        with pytest.raises(InvalidParameterError):
            vertex_graph([1, 2], [(0, 2)])

    def test_rejects_weight_count_mismatch(self):
        with pytest.raises(InvalidParameterError):
            WeightedGraph.vertex_weighted(3, [], [1, 2])
        with pytest.raises(InvalidParameterError):
            WeightedGraph.edge_weighted(3, [(0, 1)], [1, 2])

    def test_rejects_non_positive_weights(self):
        with pytest.raises(InvalidParameterError):
            vertex_graph([0])
        with pytest.raises(InvalidParameterError):
            vertex_graph([-3])

    def test_item_count_follows_mode(self):
        assert path_edges(3, 2).item_count == 2
        assert vertex_graph([1, 1, 1]).item_count == 3

    def test_weight_views_are_mode_guarded(self):
        g = path_edges(3, 2)
        assert g.edge_weights == (Fraction(3), Fraction(2))
        with pytest.raises(InvalidParameterError):
            g.vertex_weights
        with pytest.raises(InvalidParameterError):
            vertex_graph([1]).edge_weights

    def test_fractional_weights_stay_exact(self):
        g = vertex_graph([Fraction(1, 3), "2/7"])
        assert g.weights == (Fraction(1, 3), Fraction(2, 7))


class TestOrderedPartition:
    def test_blocks_by_descending_weight(self):
        part = ordered_b_partition((0, 1, 2, 3), (5, 3, 2, 1), 2)
        assert part.blocks == ((0, 1), (2, 3))
        assert part.block_count == 2

    def test_ties_go_to_the_smaller_id(self):
        part = ordered_b_partition((0, 1, 2, 3), (3, 5, 3, 2), 2)
        assert part.blocks == ((1, 0), (2, 3))

    def test_empty_item_set(self):
        assert ordered_b_partition((), (), 4).blocks == ()

    def test_single_item_oversized_block(self):
        assert ordered_b_partition((7,), (Fraction(7),), 3).blocks == ((7,),)

    def test_rejects_b_zero(self):
        with pytest.raises(InvalidParameterError):
            ordered_b_partition((0,), (1,), 0)

    def test_rejects_repeated_ids(self):
        with pytest.raises(InvalidParameterError):
            ordered_b_partition((1, 1), (2, 3), 1)

    def test_blocks_reproduce_sorted_order(self):
        """Concatenated blocks are the weight-sorted items; count is ceil(n/b)."""
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(0, 15)
            b = rng.randint(1, 5)
            items = rng.sample(range(100), n)
            weights = [Fraction(rng.randint(1, 6)) for _ in items]
            part = ordered_b_partition(items, weights, b)
            assert part.block_count == -(-n // b)
            assert all(len(blk) <= b for blk in part.blocks)
            weight_of = dict(zip(items, weights))
            flat = [i for blk in part.blocks for i in blk]
            assert flat == sorted(items, key=lambda i: (-weight_of[i], i))

    def test_insensitive_to_input_order(self):
        items = [4, 1, 3, 2]
        weights = [Fraction(2), Fraction(9), Fraction(2), Fraction(5)]
        part = ordered_b_partition(items, weights, 2)
        shuffled = [(i, w) for i, w in zip(items, weights)][::-1]
        again = ordered_b_partition([i for i, _ in shuffled], [w for _, w in shuffled], 2)
        assert part == again


class TestStructureProbe:
    def test_path_is_a_bipartite_tree(self):
        info = structure_probe(vertex_graph([1, 1, 1], [(0, 1), (1, 2)]))
        assert info.is_bipartite and info.is_tree and info.is_forest
        assert info.max_degree == 2
        assert info.bipartition == ((0, 2), (1,))

    def test_triangle_is_neither(self):
        info = structure_probe(vertex_graph([1, 1, 1], [(0, 1), (1, 2), (0, 2)]))
        assert not info.is_bipartite and not info.is_tree and not info.is_forest
        assert info.bipartition is None
        assert info.max_degree == 2

    def test_empty_graph(self):
        info = structure_probe(vertex_graph([]))
        assert info.is_bipartite and info.is_forest and not info.is_tree
        assert info.max_degree == 0
        assert info.component_count == 0

    def test_forest_of_two_paths_is_not_a_tree(self):
        info = structure_probe(vertex_graph([1] * 4, [(0, 1), (2, 3)]))
        assert info.is_forest and not info.is_tree
        assert info.component_count == 2

    def test_component_roots_land_on_the_left_side(self):
        info = structure_probe(vertex_graph([1] * 4, [(0, 1), (2, 3)]))
        assert info.bipartition == ((0, 2), (1, 3))


class TestColoring:
    def test_from_classes_sorts_by_weight_then_smallest_member(self):
        g = vertex_graph([5, 3, 2, 1])
        coloring = Coloring.from_classes(g, [[3], [1, 2], [0]])
        assert coloring.classes == (frozenset({0}), frozenset({1, 2}), frozenset({3}))
        assert coloring.class_weights == (Fraction(5), Fraction(3), Fraction(1))
        assert coloring.total_weight == Fraction(9)

    def test_from_classes_drops_empty_classes(self):
        g = vertex_graph([5, 3])
        coloring = Coloring.from_classes(g, [[0], [], [1]])
        assert coloring.class_count == 2

    def test_keep_order_preserves_creation_order(self):
        g = vertex_graph([5, 3])
        coloring = Coloring.from_classes(g, [[1], [0]], keep_order=True)
        assert coloring.classes == (frozenset({1}), frozenset({0}))
        assert coloring.class_weights == (Fraction(3), Fraction(5))


class TestValidateColoring:
    def test_accepts_a_proper_bounded_coloring(self):
        g = star_vertex(5, 3, 2, 1)
        report = validate_coloring(g, [[0], [1, 2], [3]], 2)
        assert report.ok
        assert report.class_weights == (Fraction(5), Fraction(3), Fraction(1))
        assert report.total_weight == Fraction(9)

    def test_rejects_adjacent_items_in_a_class(self):
        g = star_vertex(5, 3, 2, 1)
        report = validate_coloring(g, [[0, 1], [2, 3]], 2)
        assert not report.ok
        assert report.reason == "adjacent items"

    def test_rejects_oversized_class(self):
        g = star_vertex(5, 3, 2, 1)
        report = validate_coloring(g, [[0], [1, 2, 3]], 2)
        assert not report.ok
        assert report.reason == "cardinality bound"

    def test_rejects_uncovered_item(self):
        report = validate_coloring(star_vertex(5, 3), [[0]], 2)
        assert not report.ok
        assert report.reason == "not a partition"

    def test_rejects_repeated_item(self):
        report = validate_coloring(vertex_graph([5, 3]), [[0], [0, 1]], 2)
        assert not report.ok
        assert report.reason == "not a partition"

    def test_rejects_unknown_item_and_empty_class(self):
        g = vertex_graph([5])
        assert validate_coloring(g, [[0], [7]], 2).reason == "not a partition"
        assert validate_coloring(g, [[], [0]], 2).reason == "not a partition"

    def test_rejects_bad_bound(self):
        assert validate_coloring(vertex_graph([5]), [[0]], 0).reason == "invalid bound"

    def test_rejects_stale_stored_weights(self):
        g = vertex_graph([5, 3])
        coloring = Coloring.from_classes(g, [[0, 1]])
        doctored = dataclasses.replace(coloring, total_weight=Fraction(4))
        report = validate_coloring(g, doctored, 2)
        assert not report.ok
        assert report.reason == "weight mismatch"

    def test_rejects_random_corruptions_of_valid_colorings(self):
        rng = random.Random(11)
        for trial in range(30):
            g = gen_general(random.Random(900 + trial), rng.randint(2, 7), 0.5)
            witness = oracle_opt(g, 2).witness
            assert validate_coloring(g, witness, 2).ok
            classes = [set(c) for c in witness.classes]
            kind = rng.randrange(3)
            if kind == 1 and len(classes) < 2:
                kind = 0
            if kind == 0:  # drop one item
                classes[0].pop()
            elif kind == 1:  # duplicate an item into the last class
                classes[-1].add(next(iter(classes[0])))
            else:  # everything into one class
                if g.item_count <= 2 and not g.edges:
                    continue
                classes = [set(range(g.item_count))]
            assert not validate_coloring(g, classes, 2).ok
        # edge mode: adjacent edges in one class
        g = path_edges(3, 2)
        assert validate_coloring(g, [[0, 1]], 2).reason == "adjacent items"


def test_induced_subgraph_keeps_weights_and_inner_edges():
    g = vertex_graph([5, 3, 2, 1], [(0, 1), (1, 2), (2, 3)])
    sub, ids = induced_subgraph(g, [1, 3, 2])
    assert ids == [1, 2, 3]
    assert sub.edges == ((0, 1), (1, 2))
    assert sub.weights == (Fraction(3), Fraction(2), Fraction(1))


def test_induced_subgraph_is_vertex_mode_only():
    with pytest.raises(InvalidParameterError):
        induced_subgraph(path_edges(1, 2), [0])


def test_integer_scaled_weights_uses_the_lcm():
    scaled, scale = integer_scaled_weights([Fraction(1, 2), Fraction(1, 3), Fraction(2)])
    assert scale == 6
    assert scaled == [3, 2, 12]
    assert integer_scaled_weights([]) == ([], 1)
