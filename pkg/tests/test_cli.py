import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from hyperturan.cli import EXIT_INVALID, EXIT_NOT_EXHAUSTIVE, EXIT_OK, main
from hyperturan.hypergraph import Hypergraph
from hyperturan.textio import format_growth, format_hypergraph, parse_hypergraph
from hyperturan.forests import tight_path


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def body(text: str) -> list[str]:
    return [line for line in text.splitlines() if not line.startswith("# config")]


class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name: str, text: str) -> str:
        path = self.dir / name
        path.write_text(text)
        return str(path)

    def test_sigma(self):
        code, out, _ = run("sigma", "sec4tree:2,1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(body(out), ["5"])
        self.assertIn("# config subcommand=sigma", out)

    def test_sigma_json(self):
        code, out, _ = run("sigma", "lpath-graph:3", "--format", "json")
        data = json.loads(out)
        self.assertEqual(data["sigma"], 2)
        self.assertEqual(data["config"]["subcommand"], "sigma")
        self.assertEqual(data["config"]["inputs"], ["lpath-graph:3"])

    def test_construct_lower_bound(self):
        code, out, _ = run(
            "construct", "lowerbound", "-n", "6", "-k", "3", "--tree", "matching-graph:2"
        )
        self.assertEqual(code, EXIT_OK)
        family = parse_hypergraph("\n".join(body(out)))
        self.assertEqual(len(family), 10)

    def test_construct_needs_n(self):
        code, _, err = run("construct", "pathext:3", "-k", "3")
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn("needs -n", err)

    def test_expand(self):
        code, out, _ = run("expand", "lpath-graph:2", "-k", "3")
        self.assertEqual(parse_hypergraph("\n".join(body(out))), Hypergraph(3, 5, [(0, 1, 3), (1, 2, 4)]))

    def test_tau1_file(self):
        path = self.write("k4.hg", format_hypergraph(Hypergraph.complete(3, 4)))
        code, out, _ = run("tau1", path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(body(out), ["infinity"])

    def test_spec_without_k(self):
        code, _, err = run("tau1", "star:3")
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn("-k", err)

    def test_kernel_graph(self):
        code, out, _ = run("construct", "f3:3", "-o", str(self.dir / "f3.hg"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "")
        code, out, _ = run("kernel-graph", str(self.dir / "f3.hg"), "-s", "2")
        self.assertEqual(body(out), ["# threshold 2", "graph 9 3", "0 1", "2 3", "4 5"])

    def test_kernel_graph_profile(self):
        path = str(self.dir / "f3.hg")
        run("construct", "f3:3", "-o", path)
        code, out, _ = run("kernel-graph", path, "-s", "2", "--profile")
        self.assertEqual(code, EXIT_OK)
        lines = body(out)
        self.assertIn("# deg* 0 1 3", lines)
        self.assertIn("# deg* 0 6 1", lines)
        code, out, _ = run("kernel-graph", path, "-s", "2", "--profile", "--format", "json")
        self.assertIn([0, 1, 3], json.loads(out)["profile"])

    def test_kernel_degree(self):
        path = str(self.dir / "f3.hg")
        run("construct", "f3:3", "-o", path)
        code, out, _ = run("kernel-degree", path, "--set", "0", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(body(out), ["3"])
        code, out, _ = run("kernel-degree", path, "--set", "0", "6", "--format", "json")
        self.assertEqual(json.loads(out)["kernel_degree"], 1)

    def test_peel(self):
        path = self.write("k4.hg", format_hypergraph(Hypergraph.complete(3, 4)))
        code, out, _ = run("peel", path, "--threshold", "2")
        self.assertEqual(code, EXIT_OK)
        steps = [line for line in body(out) if line.startswith("# peel")]
        self.assertEqual(steps, ["# peel 0 1 : 2", "# peel 0 2 : 1", "# peel 1 2 : 1"])
        code, out, _ = run("peel", path, "--threshold", "1", "--format", "json")
        data = json.loads(out)
        self.assertEqual(data["steps"], [])
        self.assertEqual(len(data["residue"]), 4)

    def test_contains_and_embed_forest(self):
        host = self.write("k6.hg", format_hypergraph(Hypergraph.complete(3, 6)))
        code, out, _ = run("contains", host, "lpath:2", "-k", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("# vertex map", out)
        code, out, _ = run("contains", host, "matching:3", "-k", "3")
        self.assertEqual(body(out), ["none"])

        growth = self.write("path.growth", format_growth(tight_path(3, 3)))
        code, out, _ = run("embed-forest", host, growth, "--format", "json")
        self.assertIsNotNone(json.loads(out)["embedding"])

    def test_search(self):
        code, out, _ = run("search", "-n", "6", "-k", "3", "--forbid", "matching:2")
        self.assertEqual(code, EXIT_OK)
        lines = body(out)
        self.assertEqual(lines[:3], ["# exhaustive true", lines[1], "10"])

    def test_search_json(self):
        code, out, _ = run(
            "search", "-n", "5", "-k", "2", "--forbid", "lpath-graph:3", "--format", "json"
        )
        data = json.loads(out)
        self.assertEqual(data["size"], 4)
        self.assertEqual(data["patterns"], ["lpath-graph:3"])
        self.assertEqual(data["config"]["inputs"], ["lpath-graph:3"])

    def test_exact_search_out_of_budget(self):
        code, _, _ = run(
            "search", "-n", "7", "-k", "2", "--forbid", "lpath-graph:3",
            "--max-nodes", "1", "--exact",
        )
        self.assertEqual(code, EXIT_NOT_EXHAUSTIVE)

    def test_ceiling(self):
        code, _, err = run("search", "-n", "10", "-k", "3", "--forbid", "lpath:2")
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn("ceiling", err)

    def test_verify_quick(self):
        code, out, _ = run("verify", "quick")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("PASS", out)
        self.assertNotIn("FAIL", out)

    def test_usage_error(self):
        code, _, _ = run("search", "-n", "5")
        self.assertEqual(code, EXIT_INVALID)

    def test_negative_kernel_vertex(self):
        code, _, err = run("kernel-degree", "star:3", "-k", "3", "--set", "-1")
        self.assertEqual(code, EXIT_INVALID)
        self.assertTrue(err.startswith("error:"))

    def test_unknown_forest(self):
        code, _, err = run("sigma", "tree:9")
        self.assertEqual(code, EXIT_INVALID)
        self.assertTrue(err.startswith("error:"))


if __name__ == "__main__":
    unittest.main()
