import unittest
from itertools import combinations

from hyperturan.exceptions import GrowthSequenceError, InvalidArgumentError
from hyperturan.forests import (
    FamilyKind,
    GrowthSequence,
    caterpillar_tree,
    expand,
    family_from_spec,
    forest_from_spec,
    is_linear,
    is_tight,
    is_tight_tree,
    linear_matching,
    linear_path,
    linear_star,
    minimum_sigma_set,
    named_family,
    parse_family_spec,
    sigma,
    tight_completion,
    tight_path,
    validate_growth,
)
from hyperturan.graphs import Graph, matching_graph, nonisomorphic_forests, path_graph, star_graph
from hyperturan.hypergraph import Hypergraph
from hyperturan.parameters import one_cross_cut_number, transversal_number


class TestGrowthSequence(unittest.TestCase):
    def test_derived_defining_sets(self):
        sequence = GrowthSequence(3, ((0, 1, 2), (2, 3, 4), (4, 5, 6)))
        self.assertEqual(sequence.defining_sets, ((2,), (4,)))
        self.assertTrue(validate_growth(sequence))
        self.assertTrue(is_linear(sequence))
        self.assertFalse(is_tight(sequence))

    def test_tight_path(self):
        path = tight_path(3, 3)
        self.assertEqual(path.edges, ((0, 1, 2), (1, 2, 3), (2, 3, 4)))
        self.assertTrue(is_tight_tree(path))
        self.assertEqual(path.parent(2), 1)

    def test_defining_set_outside_every_edge(self):
        sequence = GrowthSequence(3, ((0, 1, 2), (3, 4, 5), (0, 3, 6)))
        self.assertFalse(validate_growth(sequence))
        with self.assertRaises(GrowthSequenceError):
            is_linear(sequence)

    def test_explicit_defining_set_must_match(self):
        sequence = GrowthSequence(3, ((0, 1, 2), (2, 3, 4)), ((1, 2),))
        self.assertFalse(validate_growth(sequence))

    def test_wrong_edge_size(self):
        self.assertFalse(validate_growth(GrowthSequence(3, ((0, 1, 2), (2, 3)))))

    def test_empty_sequence_is_invalid(self):
        self.assertFalse(validate_growth(GrowthSequence(3, ())))

    def test_relabeled(self):
        sequence = GrowthSequence(2, ((5, 9), (9, 12)))
        self.assertEqual(sequence.relabeled().edges, ((0, 1), (1, 2)))
        self.assertEqual(sequence.to_hypergraph(), Hypergraph(2, 3, [(0, 1), (1, 2)]))

    def test_mixed_sequence_is_neither(self):
        sequence = GrowthSequence(4, ((0, 1, 2, 3), (2, 3, 4, 5), (5, 6, 7, 8)))
        self.assertFalse(is_linear(sequence))
        self.assertFalse(is_tight(sequence))


class TestTightCompletion(unittest.TestCase):
    def assert_completes(self, sequence: GrowthSequence):
        completed = tight_completion(sequence)
        self.assertTrue(validate_growth(completed))
        self.assertTrue(is_tight_tree(completed))
        self.assertEqual(completed.vertices, sequence.vertices)
        self.assertTrue(set(sequence.edges) <= set(completed.edges))
        self.assertEqual(len(completed), len(sequence.vertices) - sequence.k + 1)
        return completed

    def test_linear_path_of_two_edges(self):
        completed = self.assert_completes(GrowthSequence(3, linear_path(3, 2).edges))
        self.assertEqual(completed.edges, ((0, 1, 2), (1, 2, 3), (2, 3, 4)))
        self.assertEqual(completed.defining_sets, ((1, 2), (2, 3)))

    def test_tight_tree_is_unchanged(self):
        path = tight_path(4, 3)
        self.assertEqual(tight_completion(path), path)

    def test_linear_families(self):
        for k in (3, 4, 5):
            for size in (1, 2, 3):
                for family in (linear_path(k, size), linear_star(k, size), linear_matching(k, size)):
                    with self.subTest(k=k, size=size, edges=family.edges):
                        self.assert_completes(GrowthSequence(k, family.edges))

    def test_partial_overlaps(self):
        sequence = GrowthSequence(4, ((0, 1, 2, 3), (2, 3, 4, 5), (5, 6, 7, 8)))
        self.assert_completes(sequence)

    def test_invalid_input(self):
        with self.assertRaises(GrowthSequenceError):
            tight_completion(GrowthSequence(3, ((0, 1, 2), (3, 4, 5), (0, 3, 6))))


class TestExpansion(unittest.TestCase):
    def test_path_expansion_numbering(self):
        expanded = expand(path_graph(2), 3)
        self.assertEqual(expanded.result, Hypergraph(3, 5, [(0, 1, 3), (1, 2, 4)]))
        self.assertEqual(expanded.fresh, ((3,), (4,)))
        self.assertEqual(expanded.hyperedge(1), (1, 2, 4))
        self.assertTrue(expanded.is_base_vertex(2))
        self.assertFalse(expanded.is_base_vertex(3))

    def test_counts(self):
        forest = caterpillar_tree(2, 1)
        for k in (2, 3, 5):
            result = expand(forest, k).result
            self.assertEqual(len(result), forest.num_edges())
            self.assertEqual(result.n, forest.n + forest.num_edges() * (k - 2))

    def test_expansion_is_linear(self):
        for forest in nonisomorphic_forests(5):
            expanded = expand(forest, 4)
            for a, b in combinations(expanded.result.edges, 2):
                self.assertLessEqual(len(set(a) & set(b)), 1)
            for i, j in combinations(range(forest.num_edges()), 2):
                shared = set(forest.edges[i]) & set(forest.edges[j])
                meet = set(expanded.hyperedge(i)) & set(expanded.hyperedge(j))
                self.assertEqual(meet, shared)

    def test_needs_k_at_least_two(self):
        with self.assertRaises(InvalidArgumentError):
            expand(path_graph(1), 1)


class TestSigma(unittest.TestCase):
    def test_star(self):
        for size in (1, 2, 5):
            self.assertEqual(sigma(star_graph(size)), 1)

    def test_matching(self):
        self.assertEqual(sigma(matching_graph(3)), 3)

    def test_odd_paths(self):
        for t in range(4):
            self.assertEqual(sigma(path_graph(2 * t + 1)), t + 1)

    def test_caterpillar(self):
        self.assertEqual(sigma(caterpillar_tree(2, 1)), 5)
        self.assertEqual(sigma(caterpillar_tree(3, 2)), 7)
        self.assertEqual(sigma(caterpillar_tree(4, 1)), 5)
        for d, c in ((2, 1), (3, 1), (3, 2)):
            forest = caterpillar_tree(d, c)
            self.assertEqual(transversal_number(forest.to_hypergraph()), 4)
            self.assertEqual(sigma(forest), 2 * c + 3)

    def test_minimiser_is_independent(self):
        forest = caterpillar_tree(3, 1)
        chosen = minimum_sigma_set(forest)
        self.assertFalse(any(u in chosen and v in chosen for u, v in forest.edges))

    def test_rejects_cycles_and_empty_forests(self):
        with self.assertRaises(InvalidArgumentError):
            sigma(Graph(3, [(0, 1), (1, 2), (0, 2)]))
        with self.assertRaises(InvalidArgumentError):
            sigma(Graph(3))

    def test_sigma_dominates_vertex_cover(self):
        for forest in nonisomorphic_forests(7):
            self.assertGreaterEqual(sigma(forest), transversal_number(forest.to_hypergraph()))

    def test_sigma_is_cross_cut_of_expansion(self):
        for forest in nonisomorphic_forests(8):
            for k in (3, 4, 5):
                with self.subTest(edges=forest.edges, k=k):
                    self.assertEqual(one_cross_cut_number(expand(forest, k).result), sigma(forest))

    def test_sigma_is_cross_cut_for_larger_trees(self):
        for forest in (caterpillar_tree(2, 1), caterpillar_tree(3, 2)):
            self.assertEqual(one_cross_cut_number(expand(forest, 3).result), sigma(forest))


class TestNamedFamilies(unittest.TestCase):
    def test_linear_path(self):
        self.assertEqual(linear_path(3, 2), Hypergraph(3, 5, [(0, 1, 2), (2, 3, 4)]))

    def test_linear_star(self):
        self.assertEqual(linear_star(3, 2), Hypergraph(3, 5, [(0, 1, 2), (0, 3, 4)]))

    def test_named_family_dispatch(self):
        self.assertEqual(named_family(FamilyKind.MATCHING, 3, 2), linear_matching(3, 2))
        with self.assertRaises(InvalidArgumentError):
            named_family(FamilyKind.STAR, 1, 2)
        with self.assertRaises(InvalidArgumentError):
            named_family(FamilyKind.STAR, 3, 0)

    def test_caterpillar_parameters(self):
        forest = caterpillar_tree(2, 1)
        self.assertEqual(forest.n, 4 + 2 * 2 + 2 * 1)
        self.assertTrue(forest.is_tree())
        with self.assertRaises(InvalidArgumentError):
            caterpillar_tree(1, 1)

    def test_parse_family_spec(self):
        self.assertEqual(parse_family_spec("Star:2"), ("star", (2,)))
        self.assertEqual(parse_family_spec("sec4tree:3,1"), ("sec4tree", (3, 1)))
        with self.assertRaises(InvalidArgumentError):
            parse_family_spec("lpath:x")

    def test_family_from_spec(self):
        self.assertEqual(family_from_spec("lpath:3", 3), linear_path(3, 3))
        self.assertEqual(
            family_from_spec("star-graph:2", 3), Hypergraph(3, 5, [(0, 1, 3), (0, 2, 4)])
        )
        self.assertEqual(forest_from_spec("sec4tree:2,1"), caterpillar_tree(2, 1))
        with self.assertRaises(InvalidArgumentError):
            forest_from_spec("unknown:1")


if __name__ == "__main__":
    unittest.main()
