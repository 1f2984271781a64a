"""Generalized k-forests, tight completion, k-expansions and sigma(T)."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from hyperturan.exceptions import GrowthSequenceError, InvalidArgumentError
from hyperturan.graphs import (
    Forest,
    Graph,
    is_forest,
    matching_graph,
    path_graph,
    star_graph,
)
from hyperturan.hypergraph import Edge, Hypergraph, VertexSet

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrowthSequence:
    """Edges E_1..E_q in growth order plus defining sets A_2..A_q.

    When `defining_sets` is omitted it is derived as A_i = E_i & (E_1 | ... | E_{i-1}).
    Construction only normalises; `validate_growth` decides validity.
    """

    k: int
    edges: tuple[Edge, ...]
    defining_sets: tuple[Edge, ...] | None = None

    def __post_init__(self):
        if self.k < 1:
            raise InvalidArgumentError(f"Uniformity must be at least 1, got {self.k}")
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.defining_sets is None:
            derived = []
            seen: set[int] = set()
            for edge in edges:
                if seen:
                    derived.append(tuple(sorted(seen.intersection(edge))))
                seen.update(edge)
            object.__setattr__(self, "defining_sets", tuple(derived))
        else:
            object.__setattr__(
                self, "defining_sets", tuple(tuple(sorted(a)) for a in self.defining_sets)
            )

    @property
    def vertices(self) -> VertexSet:
        return VertexSet(v for e in self.edges for v in e)

    def parent(self, index: int) -> int:
        """alpha(i): the first earlier edge containing the defining set of edge `index`."""
        a = set(self.defining_sets[index - 1])
        return next(j for j in range(index) if a <= set(self.edges[j]))

    def relabeled(self) -> "GrowthSequence":
        """Same sequence with vertices renumbered 0..v-1 in increasing order."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return GrowthSequence(
            self.k,
            tuple(tuple(index[v] for v in e) for e in self.edges),
            tuple(tuple(index[v] for v in a) for a in self.defining_sets or ()),
        )

    def to_hypergraph(self) -> Hypergraph:
        """The edge family on vertices renumbered 0..v-1."""
        relabeled = self.relabeled()
        return Hypergraph(self.k, len(self.vertices), relabeled.edges)

    def __len__(self) -> int:
        return len(self.edges)


def validate_growth(sequence: GrowthSequence) -> bool:
    """True iff every step adds A_i (inside one earlier edge) plus fresh vertices."""
    k = sequence.k
    if not sequence.edges or len(sequence.defining_sets) != len(sequence.edges) - 1:
        return False
    seen: set[int] = set()
    for i, edge in enumerate(sequence.edges):
        if len(edge) != k or len(set(edge)) != k or edge[0] < 0:
            return False
        if i > 0:
            a = set(sequence.defining_sets[i - 1])
            if a != seen.intersection(edge) or len(a) > k - 1:
                return False
            if not any(a <= set(sequence.edges[j]) for j in range(i)):
                return False
        seen.update(edge)
    return True


def _checked_sizes(sequence: GrowthSequence) -> list[int]:
    if not validate_growth(sequence):
        raise GrowthSequenceError(f"Not a valid growth sequence: {list(sequence.edges)}")
    return [len(a) for a in sequence.defining_sets]


def is_linear(sequence: GrowthSequence) -> bool:
    """Every defining set is empty or a singleton."""
    return all(size <= 1 for size in _checked_sizes(sequence))


def is_tight(sequence: GrowthSequence) -> bool:
    """Every defining set is empty or has k-1 elements."""
    k = sequence.k
    return all(size in (0, k - 1) for size in _checked_sizes(sequence))


def is_tight_tree(sequence: GrowthSequence) -> bool:
    k = sequence.k
    return all(size == k - 1 for size in _checked_sizes(sequence))


def tight_completion(sequence: GrowthSequence) -> GrowthSequence:
    """A tight k-tree on the same vertices that contains every input edge.

    While some defining set A of edge u is short, take its host edge E_i,
    x = min(E_i - A) and y = min(E_u - A), insert E_i - {x} + {y} just
    before E_u and grow A to A + {y}.
    """
    _checked_sizes(sequence)
    k = sequence.k
    edges: list[set[int]] = [set(e) for e in sequence.edges]
    defining: list[set[int]] = [set()] + [set(a) for a in sequence.defining_sets]

    u = 1
    inserted = 0
    while u < len(edges):
        a = defining[u]
        if len(a) == k - 1:
            u += 1
            continue
        host = next(edges[i] for i in range(u) if a <= edges[i])
        x = min(host - a)
        y = min(edges[u] - a)
        edges.insert(u, (host - {x}) | {y})
        defining.insert(u, host - {x})
        defining[u + 1] = a | {y}
        inserted += 1

    log.debug("tight completion inserted %d edges", inserted)
    return GrowthSequence(
        k,
        tuple(tuple(sorted(e)) for e in edges),
        tuple(tuple(sorted(a)) for a in defining[1:]),
    )


def tight_path(k: int, length: int) -> GrowthSequence:
    """Consecutive k-windows {i, ..., i+k-1} for i < length."""
    if k < 1 or length < 1:
        raise InvalidArgumentError(f"Need k >= 1 and length >= 1, got k={k}, length={length}")
    return GrowthSequence(k, tuple(tuple(range(i, i + k)) for i in range(length)))


@dataclass(frozen=True)
class ExpandedForest:
    """A graph with each edge xy blown up to a k-set {x, y} + (k-2) private vertices."""

    base: Graph
    k: int
    result: Hypergraph
    fresh: tuple[Edge, ...]  # private vertices of each base edge, aligned with base.edges

    def is_base_vertex(self, v: int) -> bool:
        return v < self.base.n

    def hyperedge(self, index: int) -> Edge:
        return tuple(sorted(self.base.edges[index] + self.fresh[index]))


def expand(graph: Graph, k: int) -> ExpandedForest:
    """k-expansion with fixed numbering: edge j gets p + j(k-2), ..., p + (j+1)(k-2) - 1."""
    if k < 2:
        raise InvalidArgumentError(f"Expansion needs k >= 2, got {k}")
    p, q = graph.n, graph.num_edges()
    width = k - 2
    fresh = tuple(tuple(range(p + j * width, p + (j + 1) * width)) for j in range(q))
    result = Hypergraph(
        k, p + q * width, (edge + extra for edge, extra in zip(graph.edges, fresh))
    )
    return ExpandedForest(graph, k, result, fresh)


def minimum_sigma_set(forest: Graph) -> VertexSet:
    """Independent X minimising |X| + e(T - X); the empty set is admitted."""
    if not is_forest(forest):
        raise InvalidArgumentError("sigma is defined for forests")
    if forest.num_edges() == 0:
        raise InvalidArgumentError("sigma needs a forest with at least one edge")

    n = forest.n
    # Edges whose larger endpoint is v; settled once v is decided.
    closing: list[list[int]] = [[] for _ in range(n)]
    for u, v in forest.edges:
        closing[v].append(u)

    best_mask = 0
    best = forest.num_edges()

    def search(v: int, chosen: int, cost: int) -> None:
        nonlocal best_mask, best
        if cost >= best:
            return
        if v == n:
            best_mask, best = chosen, cost
            return
        lower = closing[v]
        if not any(chosen >> u & 1 for u in forest.neighbors(v)):
            search(v + 1, chosen | 1 << v, cost + 1)
        avoided = sum(1 for u in lower if not chosen >> u & 1)
        search(v + 1, chosen, cost + avoided)

    search(0, 0, 0)
    return VertexSet.from_mask(best_mask)


def sigma(forest: Graph) -> int:
    """min over independent X of |X| + (number of edges missing X)."""
    chosen = minimum_sigma_set(forest)
    return len(chosen) + sum(
        1 for u, v in forest.edges if u not in chosen and v not in chosen
    )


class FamilyKind(Enum):
    MATCHING = "matching"
    LINEAR_PATH = "lpath"
    STAR = "star"


def linear_matching(k: int, size: int) -> Hypergraph:
    """size disjoint k-sets {ik, ..., ik+k-1}."""
    return Hypergraph(k, k * size, (range(i * k, (i + 1) * k) for i in range(size)))


def linear_path(k: int, length: int) -> Hypergraph:
    """Edges {i(k-1), ..., i(k-1)+k-1}: consecutive ones share exactly one vertex."""
    step = k - 1
    return Hypergraph(
        k, step * length + 1, (range(i * step, i * step + k) for i in range(length))
    )


def linear_star(k: int, size: int) -> Hypergraph:
    """Center 0; edge i is {0} plus a private (k-1)-block."""
    step = k - 1
    return Hypergraph(
        k,
        step * size + 1,
        ([0, *range(1 + i * step, 1 + (i + 1) * step)] for i in range(size)),
    )


def named_family(kind: FamilyKind, k: int, size: int) -> Hypergraph:
    if k < 2:
        raise InvalidArgumentError(f"Named families need k >= 2, got {k}")
    if size < 1:
        raise InvalidArgumentError(f"Family size must be at least 1, got {size}")
    match kind:
        case FamilyKind.MATCHING:
            return linear_matching(k, size)
        case FamilyKind.LINEAR_PATH:
            return linear_path(k, size)
        case FamilyKind.STAR:
            return linear_star(k, size)
        case _:
            raise InvalidArgumentError(f"Unknown family kind: {kind}")


def caterpillar_tree(d: int, c: int) -> Forest:
    """Path a1 b1 b2 a2 (vertices 0..3); each a_i gets d leaves, each b_i gets c leaves.

    This is the tree with tau = 4 and sigma = 2c + 3.
    """
    if c < 1 or d <= c:
        raise InvalidArgumentError(f"Need d > c >= 1, got d={d}, c={c}")
    edges = [(0, 1), (1, 2), (2, 3)]
    next_vertex = 4
    for spine, leaves in ((0, d), (1, c), (2, c), (3, d)):
        for _ in range(leaves):
            edges.append((spine, next_vertex))
            next_vertex += 1
    return Forest(next_vertex, edges)


class FamilySpec(NamedTuple):
    name: str
    args: tuple[int, ...]


def parse_family_spec(spec: str) -> FamilySpec:
    """Split 'name:a,b' into ('name', (a, b)); a bare name has no args."""
    name, _, raw = spec.partition(":")
    try:
        args = tuple(int(x) for x in raw.split(",")) if raw else ()
    except ValueError:
        raise InvalidArgumentError(f"Bad family parameters in {spec!r}") from None
    return FamilySpec(name.strip().lower(), args)


def forest_from_spec(spec: str) -> Forest:
    """Graph forests by name: lpath-graph:l, star-graph:l, matching-graph:nu, sec4tree:d,c."""
    name, args = parse_family_spec(spec)
    match name, args:
        case "lpath-graph", (length,):
            return path_graph(length)
        case "star-graph", (size,):
            return star_graph(size)
        case "matching-graph", (size,):
            return matching_graph(size)
        case "sec4tree", (d, c):
            return caterpillar_tree(d, c)
        case _:
            raise InvalidArgumentError(f"Unknown forest spec: {spec!r}")


def family_from_spec(spec: str, k: int) -> Hypergraph:
    """Hypergraphs by name: matching:nu, lpath:l, star:l, or any forest spec expanded to k."""
    name, args = parse_family_spec(spec)
    kinds = {kind.value: kind for kind in FamilyKind}
    if name in kinds and len(args) == 1:
        return named_family(kinds[name], k, args[0])
    return expand(forest_from_spec(spec), k).result
