import unittest

from hyperturan.config import SearchBudget
from hyperturan.embedding import contains
from hyperturan.exceptions import InvalidArgumentError, UniformityError
from hyperturan.forests import linear_matching, linear_path, tight_path
from hyperturan.graphs import path_graph
from hyperturan.hypergraph import Hypergraph
from hyperturan.search import SearchStats, turan_exact


def graph_path(length: int) -> Hypergraph:
    return path_graph(length).to_hypergraph()


class TestSmallValues(unittest.TestCase):
    def test_intersecting_families(self):
        result = turan_exact(6, 3, [linear_matching(3, 2)])
        self.assertEqual(result.size, 10)
        self.assertTrue(result.exhaustive)
        self.assertEqual(result.method, "clique")

    def test_intersecting_families_by_branch_and_bound(self):
        result = turan_exact(6, 3, [linear_matching(3, 2)], clique=False)
        self.assertEqual(result.size, 10)
        self.assertEqual(result.method, "branch-and-bound")
        self.assertGreater(result.stats.nodes, 0)

    def test_linear_path_of_two_triples(self):
        for n, expected in ((4, 4), (5, 4), (6, 4), (7, 5)):
            with self.subTest(n=n):
                self.assertEqual(turan_exact(n, 3, [linear_path(3, 2)]).size, expected)

    def test_clique_and_general_search_agree(self):
        for n in (4, 5, 6):
            for pattern in (linear_path(3, 2), linear_matching(3, 2), tight_path(3, 2).to_hypergraph()):
                with self.subTest(n=n, pattern=pattern.edges):
                    fast = turan_exact(n, 3, [pattern])
                    slow = turan_exact(n, 3, [pattern], clique=False)
                    self.assertEqual(fast.size, slow.size)

    def test_two_patterns_at_once(self):
        patterns = [linear_matching(3, 2), linear_path(3, 2)]
        self.assertEqual(turan_exact(6, 3, patterns).size, 4)
        self.assertEqual(turan_exact(6, 3, patterns, clique=False).size, 4)

    def test_graph_paths(self):
        for n, expected in ((4, 3), (5, 4), (6, 6), (7, 6)):
            with self.subTest(n=n):
                result = turan_exact(n, 2, [graph_path(3)])
                self.assertEqual(result.size, expected)
                self.assertLessEqual(result.size, n)

    def test_erdos_gallai(self):
        for length in (2, 3, 4):
            for n in range(4, 9):
                with self.subTest(n=n, length=length):
                    result = turan_exact(n, 2, [graph_path(length)])
                    self.assertTrue(result.exhaustive)
                    self.assertLessEqual(2 * result.size, (length - 1) * n)
                    if n % length == 0:
                        self.assertEqual(2 * result.size, (length - 1) * n)

    def test_graph_paths_on_nine_and_ten_vertices(self):
        expected = {9: (4, 9, 12), 10: (5, 9, 13)}
        for n, sizes in expected.items():
            for length, size in zip((2, 3, 4), sizes):
                with self.subTest(n=n, length=length):
                    self.assertLessEqual(2 * size, (length - 1) * n)
                    self.assertEqual(turan_exact(n, 2, [graph_path(length)]).size, size)
                    if n % length == 0:
                        self.assertEqual(2 * size, (length - 1) * n)

    def test_graph_matchings(self):
        for n in (4, 5, 6, 7):
            self.assertEqual(turan_exact(n, 2, [graph_path(2)]).size, n // 2)


class TestMonotonicity(unittest.TestCase):
    def test_more_vertices_never_lower_the_value(self):
        for k, pattern, sizes in (
            (2, graph_path(3), range(4, 9)),
            (2, graph_path(4), range(4, 9)),
            (3, linear_path(3, 2), range(4, 8)),
            (3, linear_matching(3, 2), range(4, 8)),
        ):
            values = [turan_exact(n, k, [pattern]).size for n in sizes]
            with self.subTest(k=k, pattern=pattern.edges):
                self.assertEqual(values, sorted(values))

    def test_more_patterns_never_raise_the_value(self):
        cases = [
            (6, 2, [graph_path(4)], graph_path(3)),
            (7, 2, [graph_path(3)], graph_path(2)),
            (6, 3, [linear_path(3, 2)], linear_matching(3, 2)),
            (6, 3, [tight_path(3, 2).to_hypergraph()], linear_path(3, 2)),
        ]
        for n, k, patterns, extra in cases:
            with self.subTest(n=n, k=k, extra=extra.edges):
                alone = turan_exact(n, k, patterns).size
                both = turan_exact(n, k, patterns + [extra]).size
                self.assertLessEqual(both, alone)
                self.assertLessEqual(both, turan_exact(n, k, [extra]).size)


class TestSearchOptions(unittest.TestCase):
    def test_symmetry_does_not_change_size(self):
        cases = [(6, 3, linear_matching(3, 2)), (7, 2, graph_path(3)), (6, 2, graph_path(4))]
        for n, k, pattern in cases:
            with self.subTest(n=n, k=k):
                on = turan_exact(n, k, [pattern], clique=False)
                off = turan_exact(n, k, [pattern], clique=False, symmetry=False)
                self.assertEqual(on.size, off.size)
                self.assertTrue(off.exhaustive)

    def test_threads_do_not_change_size(self):
        serial = turan_exact(6, 2, [graph_path(3)])
        parallel = turan_exact(6, 2, [graph_path(3)], threads=2, split_depth=2)
        self.assertEqual(parallel.size, serial.size)
        self.assertTrue(parallel.exhaustive)
        self.assertIsNone(contains(parallel.witness, graph_path(3)))

    def test_node_budget(self):
        result = turan_exact(7, 2, [graph_path(3)], SearchBudget(max_nodes=1))
        self.assertFalse(result.exhaustive)
        self.assertEqual(result.size, 6)
        self.assertIsNone(contains(result.witness, graph_path(3)))

    def test_witness_matches_size(self):
        result = turan_exact(7, 3, [linear_path(3, 2)])
        self.assertEqual(len(result.witness), result.size)
        self.assertEqual(result.witness.n, 7)
        self.assertIsNone(contains(result.witness, linear_path(3, 2)))


class TestTrivialCases(unittest.TestCase):
    def test_pattern_larger_than_ground_set(self):
        result = turan_exact(4, 2, [graph_path(4)])
        self.assertEqual(result.size, 6)
        self.assertEqual(result.method, "trivial")

    def test_single_edge_pattern(self):
        result = turan_exact(5, 3, [Hypergraph(3, 3, [(0, 1, 2)])])
        self.assertEqual(result.size, 0)
        self.assertTrue(result.exhaustive)

    def test_isolated_pattern_vertices_are_ignored(self):
        padded = Hypergraph(2, 6, [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(turan_exact(5, 2, [padded]).size, turan_exact(5, 2, [graph_path(3)]).size)


class TestArguments(unittest.TestCase):
    def test_ceiling(self):
        with self.assertRaises(InvalidArgumentError):
            turan_exact(10, 3, [linear_path(3, 2)])
        with self.assertRaises(InvalidArgumentError):
            turan_exact(7, 3, [linear_path(3, 2)], ceiling=20)

    def test_uniformity(self):
        with self.assertRaises(UniformityError):
            turan_exact(6, 3, [graph_path(2)])

    def test_empty_pattern(self):
        with self.assertRaises(InvalidArgumentError):
            turan_exact(6, 3, [Hypergraph(3, 3)])

    def test_budget_validation(self):
        with self.assertRaises(InvalidArgumentError):
            SearchBudget(max_nodes=0)
        with self.assertRaises(InvalidArgumentError):
            SearchBudget(max_seconds=-1.0)


class TestCertificate(unittest.TestCase):
    def test_to_dict(self):
        result = turan_exact(4, 3, [linear_matching(3, 2)])
        data = result.to_dict(["matching:2"])
        self.assertEqual(
            sorted(data),
            ["exhaustive", "k", "n", "nodes", "patterns", "prunes", "seconds", "size", "witness"],
        )
        self.assertEqual(data["patterns"], ["matching:2"])
        self.assertEqual(data["size"], 4)
        self.assertEqual(len(data["witness"]), 4)

    def test_default_pattern_labels(self):
        result = turan_exact(4, 2, [graph_path(2)])
        self.assertEqual(result.to_dict()["patterns"], [[[0, 1], [1, 2]]])

    def test_stats_add(self):
        total = SearchStats(3, 1, 0, 0.5) + SearchStats(4, 2, 1, 0.25)
        self.assertEqual(total, SearchStats(7, 3, 1, 0.5))


if __name__ == "__main__":
    unittest.main()
