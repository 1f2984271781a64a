# src/hyperturan/cli.py
"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 non-exhaustive search when --exact
was given, 3 a verification suite with failing rows.
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from hyperturan.config import (
    DEFAULT_CEILING,
    DEFAULT_SPLIT_DEPTH,
    OutputFormat,
    RunConfig,
    SearchBudget,
    resolve_threads,
)
from hyperturan.constructions import (
    kalai_packing_family,
    lower_bound_family,
    matching_extremal_family,
    path_extremal_family,
)
from hyperturan.embedding import Embedding, contains, embed_tight_forest, peel_shadow
from hyperturan.exceptions import HyperTuranError, InvalidArgumentError
from hyperturan.forests import (
    expand,
    family_from_spec,
    forest_from_spec,
    minimum_sigma_set,
    parse_family_spec,
    sigma,
)
from hyperturan.graphs import Forest, Graph
from hyperturan.hypergraph import Hypergraph
from hyperturan.kernels import kernel_degree_profile, kernel_graph, pair_singleton_join
from hyperturan.parameters import kernel_degree, minimum_one_cross_cut
from hyperturan.search import turan_exact
from hyperturan.textio import format_hypergraph, read_graph, read_growth, read_hypergraph
from hyperturan.verify import render_rows, run_suite

log = logging.getLogger(__name__)

_INPUT_ARGS = ("forest", "graph", "hypergraph", "host", "pattern", "growth", "family", "suite")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_EXHAUSTIVE = 2
EXIT_VERIFY_FAILED = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument(
        "--threads", type=int,
        help="worker processes (default: $HYPERTURAN_THREADS or 1)",
    )
    common.add_argument(
        "--ceiling", type=int, default=DEFAULT_CEILING,
        help="largest C(n, k) to search",
    )
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def _search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-nodes", type=int)
    parser.add_argument("--max-seconds", type=float)


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="hyperturan", description="Turán numbers of linear trees in uniform hypergraphs"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", parents=[common], help="sigma(T) of a forest")
    p.add_argument("forest", help="graph file or forest spec (lpath-graph:l, sec4tree:d,c, ...)")

    p = sub.add_parser("expand", parents=[common], help="k-expansion of a graph")
    p.add_argument("graph", help="graph file or forest spec")
    p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("tau1", parents=[common], help="minimum 1-cross-cut")
    p.add_argument("hypergraph")
    p.add_argument("-k", type=int, help="uniformity when a family spec is given")

    p = sub.add_parser("kernel-graph", parents=[common], help="kernel graph G_{2,s}")
    p.add_argument("hypergraph")
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-k", type=int)
    p.add_argument("--profile", action="store_true", help="also list deg* of every covered pair")

    p = sub.add_parser("kernel-degree", parents=[common], help="deg* of a vertex set")
    p.add_argument("hypergraph")
    p.add_argument("--set", dest="vertices", type=int, nargs="*", default=[])
    p.add_argument("-k", type=int)

    p = sub.add_parser("contains", parents=[common], help="find pattern in host")
    p.add_argument("host")
    p.add_argument("pattern")
    p.add_argument("-k", type=int)

    p = sub.add_parser("peel", parents=[common], help="peel low-degree (k-1)-sets")
    p.add_argument("hypergraph")
    p.add_argument("--threshold", type=int, required=True)
    p.add_argument("-k", type=int)

    p = sub.add_parser("embed-forest", parents=[common], help="embed a tight forest")
    p.add_argument("hypergraph")
    p.add_argument("growth", help="growth-sequence file")

    p = sub.add_parser("construct", parents=[common], help="build an extremal family")
    p.add_argument(
        "family",
        help="lowerbound, pathext:l, matchingext:s, kalai:v, f3:t or a named family",
    )
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("--tree", help="forest spec or graph file for lowerbound")

    p = sub.add_parser("search", parents=[common], help="exact Turán number")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument(
        "--forbid", action="append", required=True,
        help="hypergraph file or family spec",
    )
    p.add_argument("--exact", action="store_true", help="exit 2 unless the search is exhaustive")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--no-clique", action="store_true")
    p.add_argument("--split-depth", type=int, default=DEFAULT_SPLIT_DEPTH)
    _search_options(p)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="paper-suite or quick")
    _search_options(p)

    return parser


def _configure_logging(verbosity: int) -> None:
    levels = {0: logging.WARNING, 1: logging.INFO}
    logging.basicConfig(
        level=levels.get(verbosity, logging.DEBUG),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _forest_arg(value: str) -> Forest:
    if Path(value).is_file():
        return Forest.from_graph(read_graph(value))
    return forest_from_spec(value)


def _graph_arg(value: str) -> Graph:
    if Path(value).is_file():
        return read_graph(value)
    return forest_from_spec(value)


def _hypergraph_arg(value: str, k: int | None) -> Hypergraph:
    if Path(value).is_file():
        return read_hypergraph(value)
    if k is None:
        raise InvalidArgumentError(f"{value!r} is not a file; give -k to build it as a family spec")
    return family_from_spec(value, k)


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(args.max_nodes, args.max_seconds)


def _run_config(args: argparse.Namespace, threads: int) -> RunConfig:
    skip = {"command", "format", "output", "threads", "ceiling", "verbose"}
    values = {k: v for k, v in vars(args).items() if k not in skip}
    inputs = tuple(
        str(values.pop(name))
        for name in _INPUT_ARGS
        if values.get(name) is not None
    )
    if isinstance(values.get("forbid"), list):
        inputs += tuple(values.pop("forbid"))
    return RunConfig(
        args.command, inputs, values, args.output, OutputFormat(args.format), threads, args.ceiling
    )


def _construct(args: argparse.Namespace) -> Hypergraph:
    name, params = parse_family_spec(args.family)

    def need(value: int | None, flag: str) -> int:
        if value is None:
            raise InvalidArgumentError(f"{name} needs {flag}")
        return value

    match name, params:
        case "lowerbound", ():
            if args.tree is None:
                raise InvalidArgumentError("lowerbound needs --tree")
            tree = _forest_arg(args.tree)
            return lower_bound_family(need(args.n, "-n"), need(args.k, "-k"), tree)
        case "pathext", (length,):
            return path_extremal_family(need(args.n, "-n"), need(args.k, "-k"), length)
        case "matchingext", (size,):
            return matching_extremal_family(need(args.n, "-n"), need(args.k, "-k"), size)
        case "kalai", (v,):
            return kalai_packing_family(need(args.n, "-n"), need(args.k, "-k"), v)
        case "f3", (t,):
            return pair_singleton_join(t)
        case _:
            return family_from_spec(args.family, need(args.k, "-k"))


def _embedding_result(embedding: Embedding | None) -> tuple[str, dict]:
    if embedding is None:
        return "none\n", {"embedding": None}
    data = {
        "vertex_map": [[p, h] for p, h in embedding.vertex_map.items()],
        "edge_map": [[list(p), list(h)] for p, h in embedding.edge_map.items()],
    }
    return embedding.to_text(), {"embedding": data}


def _execute(args: argparse.Namespace, threads: int) -> tuple[str, dict, int]:
    """Run one subcommand; returns (text body, json payload, exit code)."""
    match args.command:
        case "sigma":
            forest = _forest_arg(args.forest)
            witness = minimum_sigma_set(forest)
            value = sigma(forest)
            return f"{value}\n", {"sigma": value, "witness": list(witness)}, EXIT_OK
        case "expand":
            result = expand(_graph_arg(args.graph), args.k).result
            return format_hypergraph(result), {"hypergraph": _edges(result)}, EXIT_OK
        case "tau1":
            family = _hypergraph_arg(args.hypergraph, args.k)
            cut = minimum_one_cross_cut(family)
            if cut is None:
                return "infinity\n", {"tau1": None, "cut": None}, EXIT_OK
            return f"{len(cut)}\n", {"tau1": len(cut), "cut": list(cut)}, EXIT_OK
        case "kernel-graph":
            family = _hypergraph_arg(args.hypergraph, args.k)
            kg = kernel_graph(family, args.s, workers=threads)
            text, payload = kg.to_text(), {"s": kg.s, "graph": _graph_json(kg.graph)}
            if args.profile:
                profile = kernel_degree_profile(family)
                text += "".join(f"# deg* {x} {y} {d}\n" for (x, y), d in profile.items())
                payload["profile"] = [[x, y, d] for (x, y), d in profile.items()]
            return text, payload, EXIT_OK
        case "kernel-degree":
            value = kernel_degree(_hypergraph_arg(args.hypergraph, args.k), args.vertices)
            return f"{value}\n", {"kernel_degree": value}, EXIT_OK
        case "contains":
            host = _hypergraph_arg(args.host, args.k)
            pattern = _hypergraph_arg(args.pattern, args.k or host.k)
            text, payload = _embedding_result(contains(host, pattern))
            return text, payload, EXIT_OK
        case "peel":
            residue, steps = peel_shadow(_hypergraph_arg(args.hypergraph, args.k), args.threshold)
            log_lines = [
                f"# peel {' '.join(map(str, s.kernel))} : {len(s.removed)}" for s in steps
            ]
            text = "\n".join(log_lines + [format_hypergraph(residue)])
            payload = {
                "residue": _edges(residue),
                "steps": [
                    {"kernel": list(s.kernel), "removed": [list(e) for e in s.removed]}
                    for s in steps
                ],
            }
            return text, payload, EXIT_OK
        case "embed-forest":
            family = _hypergraph_arg(args.hypergraph, None)
            text, payload = _embedding_result(embed_tight_forest(family, read_growth(args.growth)))
            return text, payload, EXIT_OK
        case "construct":
            family = _construct(args)
            return format_hypergraph(family), {"hypergraph": _edges(family)}, EXIT_OK
        case "search":
            patterns = [_hypergraph_arg(spec, args.k) for spec in args.forbid]
            cert = turan_exact(
                args.n, args.k, patterns, _budget(args),
                symmetry=not args.no_symmetry, clique=not args.no_clique,
                threads=threads, split_depth=args.split_depth, ceiling=args.ceiling,
            )
            data = cert.to_dict(args.forbid)
            text = "\n".join(
                [f"# exhaustive {str(cert.exhaustive).lower()}", f"# nodes {cert.stats.nodes}",
                 f"{cert.size}", format_hypergraph(cert.witness)]
            )
            code = EXIT_OK
            if args.exact and not cert.exhaustive:
                log.error("search for ex_%d(%d) was not exhaustive", args.k, args.n)
                code = EXIT_NOT_EXHAUSTIVE
            return text, data, code
        case "verify":
            rows = run_suite(
                args.suite, budget=_budget(args), threads=threads, ceiling=args.ceiling
            )
            failed = [row for row in rows if not row.passed]
            text = render_rows(rows) + "\n"
            payload = {"rows": [row.to_dict() for row in rows], "failed": len(failed)}
            return text, payload, EXIT_VERIFY_FAILED if failed else EXIT_OK
        case _:
            raise InvalidArgumentError(f"Unknown command {args.command}")


def _edges(family: Hypergraph) -> dict:
    return {"k": family.k, "n": family.n, "edges": [list(e) for e in family.edges]}


def _graph_json(graph: Graph) -> dict:
    return {"n": graph.n, "edges": [list(e) for e in graph.edges]}


def _emit(config: RunConfig, text: str, payload: dict) -> None:
    if config.output_format is OutputFormat.JSON:
        body = json.dumps({"config": config.to_dict(), **payload}, sort_keys=True) + "\n"
    else:
        echo = [f"# config {key}={value}" for key, value in config.to_dict().items()]
        body = "\n".join(echo) + "\n" + text
    if config.output:
        Path(config.output).write_text(body)
    else:
        sys.stdout.write(body)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exit_:
        # argparse exits 2 on usage errors; keep 2 for non-exhaustive searches
        return EXIT_OK if not exit_.code else EXIT_INVALID
    _configure_logging(args.verbose)
    try:
        threads = resolve_threads(args.threads)
        config = _run_config(args, threads)
        log.info("running %s", config.to_dict())
        text, payload, code = _execute(args, threads)
        _emit(config, text, payload)
        return code
    except (HyperTuranError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
