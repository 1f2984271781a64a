# src/hyperturan/kernels.py
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from hyperturan.exceptions import InvalidArgumentError
from hyperturan.graphs import Graph
from hyperturan.hypergraph import DeltaSystem, Hypergraph, VertexSet
from hyperturan.parameters import maximum_delta_system

log = logging.getLogger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True)
class KernelGraph:
    """Pairs {x, y} whose kernel degree in `base` reaches the threshold `s`.

    A maximum delta-system is kept for every kernel-graph edge.
    """

    base: Hypergraph
    s: int
    graph: Graph
    witnesses: dict[Pair, DeltaSystem] = field(compare=False, repr=False)

    def witness(self, x: int, y: int) -> DeltaSystem:
        """A delta-system of size exactly s with kernel {x, y}."""
        pair = (min(x, y), max(x, y))
        if pair not in self.witnesses:
            raise InvalidArgumentError(f"{list(pair)} is not an edge of the kernel graph")
        full = self.witnesses[pair]
        return DeltaSystem(full.kernel, full.members[: self.s])

    def to_text(self) -> str:
        lines = [f"# threshold {self.s}", f"graph {self.graph.n} {self.graph.num_edges()}"]
        lines.extend(f"{u} {v}" for u, v in self.graph.edges)
        return "\n".join(lines) + "\n"


def _pair_degrees(family: Hypergraph) -> Counter[Pair]:
    counts: Counter[Pair] = Counter()
    for edge in family.edges:
        counts.update(combinations(edge, 2))
    return counts


def _delta_system_for(args: tuple[Hypergraph, Pair]) -> DeltaSystem:
    family, pair = args
    return maximum_delta_system(family, pair)


def kernel_graph(family: Hypergraph, s: int, workers: int = 1) -> KernelGraph:
    """G_{2,s}: xy is an edge iff deg*({x, y}) >= s.

    Pairs with plain degree below s are skipped since deg* <= deg. With
    workers > 1 candidate pairs are farmed out to a process pool; the result
    does not depend on the worker count.
    """
    if s < 1:
        raise InvalidArgumentError(f"Threshold must be at least 1, got {s}")
    if family.k < 3:
        raise InvalidArgumentError(f"Pair kernels need k >= 3, got k={family.k}")

    candidates = sorted(p for p, d in _pair_degrees(family).items() if d >= s)
    jobs = [(family, pair) for pair in candidates]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            systems = list(pool.map(_delta_system_for, jobs))
    else:
        systems = [_delta_system_for(job) for job in jobs]

    witnesses = {
        pair: system for pair, system in zip(candidates, systems) if len(system) >= s
    }
    log.debug(
        "kernel graph s=%d: %d candidate pairs, %d edges", s, len(candidates), len(witnesses)
    )
    return KernelGraph(family, s, Graph(family.n, witnesses), witnesses)


def pair_singleton_join(t: int) -> Hypergraph:
    """Triples {2i, 2i+1, 2t+j} for i, j < t: t^2 edges on 3t vertices.

    Its kernel graph is the perfect matching {2i, 2i+1} for every threshold
    2 <= s <= t, so pair kernels alone cannot certify structure when k = 3.
    """
    if t < 1:
        raise InvalidArgumentError(f"t must be at least 1, got {t}")
    return Hypergraph(
        3,
        3 * t,
        ((2 * i, 2 * i + 1, 2 * t + j) for i in range(t) for j in range(t)),
    )


def kernel_degree_profile(family: Hypergraph) -> dict[Pair, int]:
    """deg* of every pair lying in some edge."""
    return {
        pair: len(maximum_delta_system(family, VertexSet(pair)))
        for pair in sorted(_pair_degrees(family))
    }
