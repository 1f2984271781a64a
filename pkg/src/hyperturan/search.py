"""Exact Turán numbers ex_k(n, H) by branch and bound over k-subsets of [n].

Candidates are the k-subsets of [n] in lexicographic order. The search decides
each live candidate in turn, include branch first. After an include every
remaining candidate that would complete a forbidden pattern together with the
chosen edges is dropped, so |chosen| + |live| bounds the branch. A greedy
first-fit family seeds the incumbent.

Patterns made of exactly two edges only forbid certain intersection sizes
between pairs of edges; those instances are solved as a maximum clique of
the compatibility graph instead.
"""

import logging
import multiprocessing
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations

import networkx as nx

from hyperturan.config import DEFAULT_CEILING, DEFAULT_SPLIT_DEPTH, SearchBudget
from hyperturan.embedding import contains
from hyperturan.exceptions import HyperTuranError, InvalidArgumentError, UniformityError
from hyperturan.hypergraph import Edge, Hypergraph, bits_of, mask_of
from hyperturan.parameters import binomial

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchStats:
    nodes: int = 0
    bound_prunes: int = 0
    symmetry_prunes: int = 0
    seconds: float = 0.0

    def __add__(self, other: "SearchStats") -> "SearchStats":
        return SearchStats(
            self.nodes + other.nodes,
            self.bound_prunes + other.bound_prunes,
            self.symmetry_prunes + other.symmetry_prunes,
            max(self.seconds, other.seconds),
        )


@dataclass(frozen=True)
class SearchCertificate:
    """Outcome of an exact search.

    `exhaustive` is True only if the whole tree was explored or pruned by a
    valid bound, in which case `size` is ex_k(n, patterns).
    """

    n: int
    k: int
    patterns: tuple[Hypergraph, ...]
    size: int
    witness: Hypergraph
    exhaustive: bool
    stats: SearchStats = field(default_factory=SearchStats)
    method: str = "branch-and-bound"

    def to_dict(self, pattern_labels: Sequence[str] | None = None) -> dict:
        labels = (
            list(pattern_labels)
            if pattern_labels is not None
            else [[list(e) for e in p.edges] for p in self.patterns]
        )
        return {
            "n": self.n,
            "k": self.k,
            "patterns": labels,
            "size": self.size,
            "witness": [list(e) for e in self.witness.edges],
            "exhaustive": self.exhaustive,
            "nodes": self.stats.nodes,
            "prunes": self.stats.bound_prunes + self.stats.symmetry_prunes,
            "seconds": round(self.stats.seconds, 3),
        }


class _OutOfBudget(Exception):
    pass


def _compact(pattern: Hypergraph) -> Hypergraph:
    """Drop isolated vertices and renumber the support 0..v-1."""
    index = {v: i for i, v in enumerate(pattern.support)}
    edges = (tuple(index[v] for v in e) for e in pattern.edges)
    return Hypergraph(pattern.k, len(index), edges)


class _AnchoredStep:
    __slots__ = ("mapped", "shared", "private")

    def __init__(self, mapped: Edge, shared: Edge, private: Edge):
        self.mapped = mapped
        self.shared = shared
        self.private = private


class _PatternPlans:
    """Per pattern edge j: an extension order for the other edges once j is fixed.

    Built once per search, so each completion check starts from a ready frontier.
    """

    def __init__(self, pattern: Hypergraph):
        self.pattern = pattern
        self.plans: list[tuple[Edge, list[_AnchoredStep]]] = []
        edges = pattern.edges
        for j, anchor in enumerate(edges):
            placed = set(anchor)
            remaining = [i for i in range(len(edges)) if i != j]
            order = []
            while remaining:
                best = max(remaining, key=lambda i: (len(placed.intersection(edges[i])), -i))
                remaining.remove(best)
                order.append(best)
                placed.update(edges[best])
            steps = []
            seen = set(anchor)
            for position, i in enumerate(order):
                later = {v for r in order[position + 1 :] for v in edges[r]}
                new = [v for v in edges[i] if v not in seen]
                steps.append(
                    _AnchoredStep(
                        tuple(v for v in edges[i] if v in seen),
                        tuple(v for v in new if v in later),
                        tuple(v for v in new if v not in later),
                    )
                )
                seen.update(edges[i])
            self.plans.append((anchor, steps))

    def completes(self, chosen: Sequence[int], new: int) -> bool:
        """Does `chosen` plus `new` hold a copy of the pattern that uses `new`?"""
        if len(chosen) + 1 < len(self.pattern):
            return False
        targets = bits_of(new)
        for anchor, steps in self.plans:
            for images in permutations(targets):
                image = dict(zip(anchor, images))
                if _extend_anchored(steps, 0, image, new, chosen):
                    return True
        return False


def _extend_anchored(
    steps: list[_AnchoredStep],
    position: int,
    image: dict[int, int],
    used: int,
    host: Sequence[int],
) -> bool:
    if position == len(steps):
        return True
    step = steps[position]
    need = mask_of(image[v] for v in step.mapped)
    for m in host:
        if m & need != need or m & used != need:
            continue
        free = bits_of(m & ~need)
        for chosen in permutations(free, len(step.shared)):
            rest = sorted(set(free).difference(chosen))
            image.update(zip(step.shared, chosen))
            image.update(zip(step.private, rest))
            if _extend_anchored(steps, position + 1, image, used | m, host):
                return True
            for v in step.shared + step.private:
                del image[v]
    return False


class _Searcher:
    def __init__(
        self,
        candidates: Sequence[int],
        plans: Sequence[_PatternPlans],
        budget: SearchBudget,
        shared_best=None,
    ):
        self.candidates = candidates
        self.plans = plans
        self.budget = budget
        self.shared_best = shared_best
        self.best = 0
        self.best_family: list[int] = []
        self.nodes = 0
        self.bound_prunes = 0
        self.symmetry_prunes = 0
        self.started = time.monotonic()

    def addable(self, chosen: Sequence[int], candidate: int) -> bool:
        return not any(p.completes(chosen, candidate) for p in self.plans)

    def greedy(self) -> list[int]:
        family: list[int] = []
        for m in self.candidates:
            if self.addable(family, m):
                family.append(m)
        return family

    def filtered(self, chosen: list[int], live: Iterable[int]) -> list[int]:
        return [m for m in live if self.addable(chosen, m)]

    def _bound(self) -> int:
        if self.shared_best is not None:
            return max(self.best, self.shared_best.value)
        return self.best

    def _record(self, chosen: list[int]) -> None:
        if self.shared_best is not None:
            with self.shared_best.get_lock():
                if len(chosen) <= self.shared_best.value:
                    return
                self.shared_best.value = len(chosen)
        self.best = len(chosen)
        self.best_family = list(chosen)

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget.max_nodes is not None and self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if (
            self.budget.max_seconds is not None
            and self.nodes % 256 == 0
            and time.monotonic() - self.started > self.budget.max_seconds
        ):
            raise _OutOfBudget

    def search(self, chosen: list[int], live: list[int]) -> None:
        self._tick()
        if len(chosen) + len(live) <= self._bound():
            self.bound_prunes += 1
            return
        if not live:
            self._record(chosen)
            return
        head, rest = live[0], live[1:]
        chosen.append(head)
        self.search(chosen, self.filtered(chosen, rest))
        chosen.pop()
        self.search(chosen, rest)

    def stats(self) -> SearchStats:
        return SearchStats(
            self.nodes, self.bound_prunes, self.symmetry_prunes, time.monotonic() - self.started
        )


def _prepare(
    n: int, k: int, patterns: Iterable[Hypergraph], ceiling: int
) -> tuple[list[Hypergraph], list[Hypergraph]]:
    if k < 1 or n < 0:
        raise InvalidArgumentError(f"Need k >= 1 and n >= 0, got n={n}, k={k}")
    if binomial(n, k) > ceiling:
        raise InvalidArgumentError(
            f"C({n}, {k}) = {binomial(n, k)} exceeds the ceiling {ceiling}"
        )
    given = list(patterns)
    for pattern in given:
        if pattern.k != k:
            raise UniformityError(f"Pattern has k={pattern.k}, search has k={k}")
        if not len(pattern):
            raise InvalidArgumentError("Forbidden patterns need at least one edge")
    compact = [_compact(p) for p in given]
    return given, [p for p in compact if p.n <= n]


def _clique_solution(k: int, candidates: list[Edge], forbidden: set[int]) -> list[Edge]:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(candidates)))
    masks = [mask_of(c) for c in candidates]
    for i, j in combinations(range(len(masks)), 2):
        if (masks[i] & masks[j]).bit_count() not in forbidden:
            graph.add_edge(i, j)
    clique, _ = nx.max_weight_clique(graph, weight=None)
    return [candidates[i] for i in sorted(clique)]


def _split(
    searcher: _Searcher, root: tuple[list[int], list[int]], depth: int
) -> list[tuple[list[int], list[int]]]:
    """Subproblems at the top `depth` include/exclude levels below `root`, in canonical order."""
    frontier = [root]
    for _ in range(depth):
        expanded = []
        for chosen, live in frontier:
            if not live:
                expanded.append((chosen, live))
                continue
            head, rest = live[0], live[1:]
            with_head = chosen + [head]
            expanded.append((with_head, searcher.filtered(with_head, rest)))
            expanded.append((chosen, rest))
        frontier = expanded
    return frontier


_SHARED_BEST = None


def _init_worker(shared_best) -> None:
    global _SHARED_BEST
    _SHARED_BEST = shared_best


def _solve_subproblem(args) -> tuple[int, list[int], SearchStats, bool]:
    candidates, patterns, budget, chosen, live = args
    searcher = _Searcher(candidates, [_PatternPlans(p) for p in patterns], budget, _SHARED_BEST)
    searcher.best = -1
    try:
        searcher.search(list(chosen), list(live))
        exhaustive = True
    except _OutOfBudget:
        exhaustive = False
    return searcher.best, searcher.best_family, searcher.stats(), exhaustive


def turan_exact(
    n: int,
    k: int,
    patterns: Iterable[Hypergraph],
    budget: SearchBudget | None = None,
    *,
    symmetry: bool = True,
    clique: bool = True,
    threads: int = 1,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    ceiling: int = DEFAULT_CEILING,
) -> SearchCertificate:
    """ex_k(n, patterns) with a pattern-free witness of that size.

    With a budget the result may be non-exhaustive; it then reports the best
    family found. The size never depends on `threads`; the witness may.
    """
    budget = budget or SearchBudget()
    given, active = _prepare(n, k, patterns, ceiling)
    candidates = list(combinations(range(n), k))
    started = time.monotonic()

    def certificate(
        edges: Iterable[Edge], exhaustive: bool, stats: SearchStats, method: str
    ) -> SearchCertificate:
        witness = Hypergraph(k, n, edges)
        for pattern in active:
            if contains(witness, pattern) is not None:
                raise HyperTuranError(f"Search witness contains forbidden {pattern}")
        elapsed = time.monotonic() - started
        stats = SearchStats(stats.nodes, stats.bound_prunes, stats.symmetry_prunes, elapsed)
        log.info(
            "ex_%d(%d) = %d (%s, exhaustive=%s, %d nodes)",
            k, n, len(witness), method, exhaustive, stats.nodes,
        )
        return SearchCertificate(
            n, k, tuple(given), len(witness), witness, exhaustive, stats, method
        )

    if not active:
        return certificate(candidates, True, SearchStats(), "trivial")
    if any(len(p) == 1 for p in active):
        return certificate((), True, SearchStats(), "trivial")
    if clique and all(len(p) == 2 for p in active):
        forbidden = {len(set(p.edges[0]) & set(p.edges[1])) for p in active}
        chosen = _clique_solution(k, candidates, forbidden)
        return certificate(chosen, True, SearchStats(nodes=len(candidates)), "clique")

    masks = [mask_of(c) for c in candidates]
    searcher = _Searcher(masks, [_PatternPlans(p) for p in active], budget)
    incumbent = searcher.greedy()
    searcher.best, searcher.best_family = len(incumbent), incumbent
    log.debug("greedy incumbent: %d edges", len(incumbent))

    if threads > 1 and len(masks) > 1:
        family, exhaustive, stats = _parallel(
            searcher, active, budget, threads, split_depth, symmetry
        )
        return certificate(family, exhaustive, stats, "branch-and-bound")

    exhaustive = True
    try:
        if symmetry:
            # Relabelling puts the least k-set into any non-empty free family.
            searcher.symmetry_prunes += 1
            head = [masks[0]]
            searcher.search(head, searcher.filtered(head, masks[1:]))
        else:
            searcher.search([], list(masks))
    except _OutOfBudget:
        exhaustive = False
        log.info("search budget exhausted after %d nodes", searcher.nodes)
    family = (bits_of(m) for m in searcher.best_family)
    return certificate(family, exhaustive, searcher.stats(), "branch-and-bound")


def _parallel(
    searcher: _Searcher,
    patterns: list[Hypergraph],
    budget: SearchBudget,
    threads: int,
    split_depth: int,
    symmetry: bool,
) -> tuple[Iterable[Edge], bool, SearchStats]:
    if symmetry:
        head = [searcher.candidates[0]]
        root = (head, searcher.filtered(head, searcher.candidates[1:]))
    else:
        root = ([], list(searcher.candidates))
    subproblems = _split(searcher, root, split_depth)
    shared_best = multiprocessing.Value("i", searcher.best)
    jobs = [
        (searcher.candidates, patterns, budget, chosen, live) for chosen, live in subproblems
    ]
    log.debug("parallel search: %d subproblems on %d workers", len(jobs), threads)

    best, family = searcher.best, searcher.best_family
    stats = SearchStats(symmetry_prunes=int(symmetry))
    exhaustive = True
    with ProcessPoolExecutor(
        max_workers=threads, initializer=_init_worker, initargs=(shared_best,)
    ) as pool:
        for size, found, sub_stats, complete in pool.map(_solve_subproblem, jobs):
            stats = stats + sub_stats
            exhaustive = exhaustive and complete
            if size > best:
                best, family = size, found
    return (bits_of(m) for m in family), exhaustive, stats
