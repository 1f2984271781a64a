import json
import unittest
from fractions import Fraction

from hyperturan.constructions import Formula
from hyperturan.exceptions import InvalidArgumentError
from hyperturan.verify import (
    SUITES,
    Relation,
    VerificationRow,
    render_rows,
    run_suite,
    verify_formula,
)


def row(search: int, formula: int | Fraction, relation: Relation, exhaustive: bool = True):
    return VerificationRow(Formula.EKR, {"n": 6, "k": 3}, search, formula, relation, exhaustive)


class TestVerificationRow(unittest.TestCase):
    def test_exact(self):
        self.assertTrue(row(10, 10, Relation.EXACT).passed)
        self.assertFalse(row(9, 10, Relation.EXACT).passed)

    def test_upper_and_lower(self):
        self.assertTrue(row(4, Fraction(9, 2), Relation.UPPER).passed)
        self.assertFalse(row(5, Fraction(9, 2), Relation.UPPER).passed)
        self.assertTrue(row(5, 4, Relation.LOWER).passed)
        self.assertFalse(row(3, 4, Relation.LOWER).passed)

    def test_non_exhaustive_search_cannot_pass(self):
        self.assertFalse(row(10, 10, Relation.EXACT, exhaustive=False).passed)

    def test_report_rows_always_pass(self):
        report = row(3, 7, Relation.REPORT, exhaustive=False)
        self.assertTrue(report.passed)
        self.assertFalse(report.agrees)

    def test_to_dict(self):
        data = row(2, Fraction(5, 2), Relation.UPPER).to_dict()
        self.assertEqual(data["formula_value"], "5/2")
        self.assertEqual(data["relation"], "upper")
        self.assertTrue(data["passed"])


class TestVerifyFormula(unittest.TestCase):
    def test_ekr_matches(self):
        (result,) = verify_formula("ekr", [{"n": 6, "k": 3}], Relation.EXACT)
        self.assertEqual(result.search_value, 10)
        self.assertTrue(result.passed)

    def test_lower_bound_uses_tree_sigma(self):
        rows = verify_formula(
            Formula.LOWER_BOUND,
            [{"n": n, "k": 2, "tree": "lpath-graph:3"} for n in (4, 5, 6)],
            Relation.LOWER,
        )
        self.assertEqual([r.formula_value for r in rows], [3, 4, 5])
        self.assertEqual([r.search_value for r in rows], [3, 4, 6])
        self.assertTrue(all(r.passed for r in rows))

    def test_erdos_gallai_equality_when_length_divides_n(self):
        (result,) = verify_formula("erdos-gallai", [{"n": 6, "l": 3}], Relation.UPPER)
        self.assertTrue(result.agrees)

    def test_triple_path_rule_is_only_an_upper_bound(self):
        rows = verify_formula("triple-path2", [{"n": n} for n in (4, 5, 6, 7)], Relation.UPPER)
        self.assertEqual([r.search_value for r in rows], [4, 4, 4, 5])
        self.assertTrue(all(r.passed for r in rows))
        self.assertFalse(rows[2].agrees)

    def test_unknown_formula(self):
        with self.assertRaises(InvalidArgumentError):
            verify_formula("nope", [{"n": 4}])


class TestSuites(unittest.TestCase):
    def test_quick_suite_passes(self):
        seen = []
        rows = run_suite("quick", progress=seen.append)
        self.assertEqual(len(rows), 6)
        self.assertEqual(len(seen), len(SUITES["quick"]))
        self.assertTrue(all(r.passed for r in rows), render_rows(rows))

    def test_unknown_suite(self):
        with self.assertRaises(InvalidArgumentError):
            run_suite("slow")

    def test_render_text(self):
        text = render_rows([row(10, 10, Relation.EXACT)])
        self.assertIn("PASS", text)
        self.assertIn("relation", text.splitlines()[0])

    def test_render_json(self):
        data = json.loads(render_rows([row(9, 10, Relation.EXACT)], as_json=True))
        self.assertEqual(data[0]["search"], 9)
        self.assertFalse(data[0]["passed"])


if __name__ == "__main__":
    unittest.main()
