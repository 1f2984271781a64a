# src/hyperturan/verify.py
import json
import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cache
from typing import NamedTuple

from tabulate import tabulate

from hyperturan.config import DEFAULT_CEILING, SearchBudget
from hyperturan.constructions import Formula, MatchingConvention, Value, evaluate_formula
from hyperturan.exceptions import InvalidArgumentError
from hyperturan.forests import (
    expand,
    forest_from_spec,
    linear_matching,
    linear_path,
    linear_star,
    sigma,
    tight_path,
)
from hyperturan.graphs import path_graph, star_graph
from hyperturan.hypergraph import Hypergraph
from hyperturan.search import turan_exact

log = logging.getLogger(__name__)

Point = Mapping[str, int | str]


class Relation(Enum):
    """How the search value must relate to the formula value for a row to pass."""

    EXACT = "exact"
    UPPER = "upper"  # search <= formula
    LOWER = "lower"  # search >= formula
    REPORT = "report"  # recorded only


@dataclass(frozen=True)
class VerificationRow:
    formula: Formula
    params: dict[str, int | str]
    search_value: int
    formula_value: Value
    relation: Relation
    exhaustive: bool

    @property
    def agrees(self) -> bool:
        return self.search_value == self.formula_value

    @property
    def passed(self) -> bool:
        match self.relation:
            case Relation.EXACT:
                holds = self.agrees
            case Relation.UPPER:
                holds = self.search_value <= self.formula_value
            case Relation.LOWER:
                holds = self.search_value >= self.formula_value
            case _:
                return True
        return holds and self.exhaustive

    def to_dict(self) -> dict:
        value = self.formula_value
        if isinstance(value, Fraction):
            value = str(value) if value.denominator != 1 else value.numerator
        return {
            "formula": self.formula.id,
            "params": dict(self.params),
            "search": self.search_value,
            "formula_value": value,
            "relation": self.relation.value,
            "agrees": self.agrees,
            "exhaustive": self.exhaustive,
            "passed": self.passed,
        }


class Problem(NamedTuple):
    """A search instance plus the formula parameters it is compared against."""

    n: int
    k: int
    patterns: tuple[Hypergraph, ...]
    formula_params: dict[str, int | str]


def _tree_sigma(point: Point) -> tuple[Hypergraph, int]:
    tree = forest_from_spec(str(point["tree"]))
    return expand(tree, int(point["k"])).result, sigma(tree)


def _problem(formula: Formula, point: Point) -> Problem:
    p = {key: value for key, value in point.items()}
    n = int(p["n"])
    match formula:
        case Formula.EKR:
            return Problem(n, p["k"], (linear_matching(p["k"], 2),), p)
        case Formula.MATCHING:
            return Problem(n, p["k"], (linear_matching(p["k"], p["nu"] + 1),), p)
        case Formula.MATCHING_ASYMPTOTIC:
            p.setdefault("convention", MatchingConvention.FORBIDDEN_COUNT.value)
            return Problem(n, p["k"], (linear_matching(p["k"], p["nu"]),), p)
        case Formula.PATH_TWO:
            return Problem(n, p["k"], (linear_path(p["k"], 2),), p)
        case Formula.PATH:
            return Problem(n, p["k"], (linear_path(p["k"], p["l"]),), p)
        case Formula.STAR:
            return Problem(n, p["k"], (linear_star(p["k"], p["l"]),), p)
        case Formula.TRIPLE_PATH_TWO:
            return Problem(n, 3, (linear_path(3, 2),), p)
        case Formula.FOREST | Formula.KALAI:
            pattern = tight_path(p["k"], p["v"] - p["k"] + 1).to_hypergraph()
            return Problem(n, p["k"], (pattern,), p)
        case Formula.LOWER_BOUND | Formula.EXPANSION:
            pattern, s = _tree_sigma(p)
            return Problem(n, p["k"], (pattern,), {"n": n, "k": p["k"], "sigma": s})
        case Formula.ERDOS_GALLAI:
            return Problem(n, 2, (path_graph(p["l"]).to_hypergraph(),), p)
        case Formula.GRAPH_STAR:
            return Problem(n, 2, (star_graph(p["l"]).to_hypergraph(),), p)
        case Formula.GRAPH_FOREST:
            return Problem(n, 2, (path_graph(p["v"] - 1).to_hypergraph(),), p)
        case _:
            raise InvalidArgumentError(f"No search problem for formula {formula.id}")


@cache
def _cached_search(
    n: int,
    k: int,
    patterns: tuple[Hypergraph, ...],
    budget: SearchBudget,
    threads: int,
    ceiling: int,
) -> tuple[int, bool]:
    cert = turan_exact(n, k, patterns, budget, threads=threads, ceiling=ceiling)
    return cert.size, cert.exhaustive


def verify_formula(
    formula: Formula | str,
    grid: Iterable[Point],
    relation: Relation = Relation.REPORT,
    *,
    budget: SearchBudget | None = None,
    threads: int = 1,
    ceiling: int = DEFAULT_CEILING,
) -> list[VerificationRow]:
    """Search value against formula value at every grid point; failures are rows."""
    if isinstance(formula, str):
        formula = Formula.from_id(formula)
    budget = budget or SearchBudget()
    rows = []
    for point in grid:
        problem = _problem(formula, point)
        size, exhaustive = _cached_search(
            problem.n, problem.k, problem.patterns, budget, threads, ceiling
        )
        report = evaluate_formula(formula, **problem.formula_params)
        row = VerificationRow(
            formula, dict(point), size, report.value, relation, exhaustive
        )
        log.debug("%s %s: search=%s formula=%s", formula.id, dict(point), size, report.value)
        rows.append(row)
    return rows


class SuiteEntry(NamedTuple):
    formula: Formula
    relation: Relation
    grid: tuple[dict[str, int | str], ...]


def _grid(**axes: Iterable[int | str]) -> tuple[dict[str, int | str], ...]:
    points: list[dict[str, int | str]] = [{}]
    for name, values in axes.items():
        points = [{**p, name: v} for p in points for v in values]
    return tuple(points)


SUITES: dict[str, tuple[SuiteEntry, ...]] = {
    "quick": (
        SuiteEntry(Formula.EKR, Relation.EXACT, _grid(n=[6], k=[3])),
        SuiteEntry(Formula.TRIPLE_PATH_TWO, Relation.UPPER, _grid(n=[4, 5])),
        SuiteEntry(Formula.ERDOS_GALLAI, Relation.UPPER, _grid(n=[4, 5], l=[2])),
        SuiteEntry(Formula.FOREST, Relation.UPPER, _grid(n=[5], k=[3], v=[4])),
    ),
    "paper-suite": (
        SuiteEntry(Formula.EKR, Relation.EXACT, _grid(n=[6, 7, 8], k=[3])),
        SuiteEntry(Formula.TRIPLE_PATH_TWO, Relation.UPPER, _grid(n=[4, 5, 6, 7])),
        SuiteEntry(Formula.ERDOS_GALLAI, Relation.UPPER, _grid(n=[4, 5, 6, 7], l=[2, 3, 4])),
        SuiteEntry(Formula.GRAPH_STAR, Relation.EXACT, _grid(n=[4, 5, 6], l=[2, 3])),
        SuiteEntry(Formula.GRAPH_FOREST, Relation.UPPER, _grid(n=[5, 6, 7], v=[3, 4])),
        SuiteEntry(Formula.FOREST, Relation.UPPER, _grid(n=[5, 6, 7], k=[3], v=[4])),
        SuiteEntry(Formula.FOREST, Relation.UPPER, _grid(n=[6, 7], k=[4], v=[5])),
        SuiteEntry(
            Formula.LOWER_BOUND,
            Relation.LOWER,
            _grid(n=[4, 5, 6, 7], k=[2], tree=["lpath-graph:3"]),
        ),
        SuiteEntry(
            Formula.LOWER_BOUND,
            Relation.LOWER,
            _grid(n=[6, 7], k=[3], tree=["matching-graph:2"]),
        ),
        SuiteEntry(Formula.PATH_TWO, Relation.REPORT, _grid(n=[6, 7, 8], k=[4])),
        SuiteEntry(Formula.PATH, Relation.REPORT, _grid(n=[5, 6, 7], k=[2], l=[3])),
        SuiteEntry(Formula.MATCHING, Relation.REPORT, _grid(n=[6, 7], k=[2], nu=[2])),
        SuiteEntry(Formula.STAR, Relation.REPORT, _grid(n=[5, 6, 7], k=[3], l=[2])),
        SuiteEntry(Formula.KALAI, Relation.REPORT, _grid(n=[5, 6, 7], k=[3], v=[4])),
    ),
}


def run_suite(
    name: str,
    *,
    budget: SearchBudget | None = None,
    threads: int = 1,
    ceiling: int = DEFAULT_CEILING,
    progress: Callable[[SuiteEntry], None] | None = None,
) -> list[VerificationRow]:
    if name not in SUITES:
        raise InvalidArgumentError(f"Unknown suite {name!r}; choose from {sorted(SUITES)}")
    rows: list[VerificationRow] = []
    for entry in SUITES[name]:
        if progress is not None:
            progress(entry)
        rows.extend(
            verify_formula(
                entry.formula, entry.grid, entry.relation,
                budget=budget, threads=threads, ceiling=ceiling,
            )
        )
    failed = sum(1 for row in rows if not row.passed)
    log.info("suite %s: %d rows, %d failed", name, len(rows), failed)
    return rows


def render_rows(rows: Iterable[VerificationRow], as_json: bool = False) -> str:
    rows = list(rows)
    if as_json:
        return json.dumps([row.to_dict() for row in rows], sort_keys=True, indent=2)
    table = [
        [
            row.formula.id,
            " ".join(f"{key}={value}" for key, value in row.params.items()),
            row.search_value,
            row.to_dict()["formula_value"],
            row.relation.value,
            "yes" if row.agrees else "no",
            "PASS" if row.passed else "FAIL",
        ]
        for row in rows
    ]
    headers = ["formula", "params", "search", "formula", "relation", "equal", "result"]
    return tabulate(table, headers=headers, tablefmt="simple")
