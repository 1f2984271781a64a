# src/hyperturan/graphs.py
import logging
from collections import deque
from collections.abc import Iterable, Iterator
from itertools import combinations_with_replacement, product
from typing import Any

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from hyperturan.exceptions import EdgeError, ForestError, InvalidArgumentError
from hyperturan.hypergraph import Hypergraph, VertexSet

log = logging.getLogger(__name__)

Pair = tuple[int, int]


class Graph:
    """A simple graph on vertices 0..n-1: no loops, no repeated edges."""

    __slots__ = ("_n", "_edges", "_adjacency")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise EdgeError(f"Vertex count must be non-negative, got {n}")
        pairs: set[Pair] = set()
        adjacency: list[set[int]] = [set() for _ in range(n)]
        for raw in edges:
            u, v = sorted(raw)
            if u == v:
                raise EdgeError(f"Loop at vertex {u}")
            if u < 0 or v >= n:
                raise EdgeError(f"Edge {[u, v]} leaves vertex range 0..{n - 1}")
            if (u, v) in pairs:
                raise EdgeError(f"Duplicate edge {[u, v]}")
            pairs.add((u, v))
            adjacency[u].add(v)
            adjacency[v].add(u)

        self._n = n
        self._edges: tuple[Pair, ...] = tuple(sorted(pairs))
        self._adjacency = tuple(frozenset(a) for a in adjacency)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, n: int | None = None) -> "Graph":
        """Nodes must already be integers 0..n-1."""
        order = graph.number_of_nodes() if n is None else n
        return cls(order, graph.edges())

    @classmethod
    def from_hypergraph(cls, family: Hypergraph) -> "Graph":
        if family.k != 2:
            raise InvalidArgumentError(f"Expected a 2-uniform hypergraph, got k={family.k}")
        return cls(family.n, family.edges)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Pair, ...]:
        return self._edges

    def num_edges(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacency[u]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self._edges)
        return graph

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(2, self._n, self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Graph):
            return False
        return (self._n, self._edges) == (other._n, other._edges)

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self._n}, edges={[list(e) for e in self._edges]})"

    def __getstate__(self) -> tuple[int, tuple[Pair, ...]]:
        return self._n, self._edges

    def __setstate__(self, state: tuple[int, tuple[Pair, ...]]) -> None:
        n, edges = state
        Graph.__init__(self, n, edges)


class Forest(Graph):
    """A Graph certified acyclic at construction."""

    __slots__ = ()

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        super().__init__(n, edges)
        if not is_forest(self):
            raise ForestError(f"Graph on {n} vertices with edges {list(self.edges)} has a cycle")

    @classmethod
    def from_graph(cls, graph: Graph) -> "Forest":
        return cls(graph.n, graph.edges)

    def num_components(self) -> int:
        if self.n == 0:
            return 0
        return nx.number_connected_components(self.to_networkx())

    def is_tree(self) -> bool:
        return self.n > 0 and self.num_components() == 1


def is_forest(graph: Graph) -> bool:
    if graph.n == 0:
        return True
    return nx.is_forest(graph.to_networkx())


def independent_sets(forest: Graph) -> Iterator[VertexSet]:
    """Every independent set (the empty set included), by increasing bitset value."""
    lower_neighbours = [
        sum(1 << u for u in forest.neighbors(v) if u < v) for v in range(forest.n)
    ]

    def below(top: int, forbidden: int) -> Iterator[int]:
        # Independent subsets of 0..top avoiding `forbidden`, in increasing order.
        if top < 0:
            yield 0
            return
        yield from below(top - 1, forbidden)
        if not forbidden >> top & 1:
            for rest in below(top - 1, forbidden | lower_neighbours[top]):
                yield rest | 1 << top

    for mask in below(forest.n - 1, 0):
        yield VertexSet.from_mask(mask)


def forest_turan_upper(v: int, n: int) -> int:
    """(v-2)n: more edges force every v-vertex forest."""
    if v < 2:
        raise InvalidArgumentError(f"Forest needs at least 2 vertices, got v={v}")
    return (v - 2) * n


def min_degree_peel(graph: Graph, delta: int) -> Graph | None:
    """The induced subgraph left after deleting vertices of degree < delta, or None.

    The result is the delta-core, which does not depend on deletion order.
    Vertex ids are preserved; removed vertices stay as isolated ids.
    """
    if delta < 1:
        raise InvalidArgumentError(f"delta must be at least 1, got {delta}")
    core = nx.k_core(graph.to_networkx(), k=delta)
    if core.number_of_nodes() == 0:
        return None
    return Graph(graph.n, core.edges())


def _components(forest: Graph) -> list[list[int]]:
    """Vertices of each component in BFS order from its lowest vertex."""
    seen: set[int] = set()
    components = []
    for root in range(forest.n):
        if root in seen:
            continue
        order = [root]
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in sorted(forest.neighbors(v)):
                if u not in seen:
                    seen.add(u)
                    order.append(u)
                    queue.append(u)
        components.append(order)
    return components


def embed_tree_greedy(host: Graph, forest: Graph) -> dict[int, int] | None:
    """An injective map of `forest` into `host`, or None if none exists.

    When the (v-1)-core of the host is non-empty every vertex there has more
    neighbours than the forest has vertices already placed, so growing the
    forest leaf by leaf never gets stuck. Components go to disjoint images.
    Otherwise fall back to an exhaustive monomorphism search.
    """
    if not is_forest(forest):
        raise InvalidArgumentError("Pattern must be a forest")
    v = forest.n
    if v > host.n:
        return None
    if v == 0:
        return {}

    core = min_degree_peel(host, v - 1) if v >= 2 else host
    if core is not None and (core.num_edges() > 0 or v == 1):
        core_vertices = sorted({x for e in core.edges for x in e}) or list(range(host.n))
        image: dict[int, int] = {}
        used: set[int] = set()
        for order in _components(forest):
            root = order[0]
            image[root] = next(x for x in core_vertices if x not in used)
            used.add(image[root])
            for w in order[1:]:
                parent = next(u for u in forest.neighbors(w) if u in image)
                fresh = min(x for x in core.neighbors(image[parent]) if x not in used)
                image[w] = fresh
                used.add(fresh)
        log.debug("greedy tree embedding into the %d-core succeeded", v - 1)
        return image

    log.debug("core empty; falling back to exhaustive monomorphism search")
    matcher = GraphMatcher(host.to_networkx(), forest.to_networkx())
    for mapping in matcher.subgraph_monomorphisms_iter():
        return {p: h for h, p in mapping.items()}
    return None


def path_graph(length: int) -> Forest:
    """Path with `length` edges on vertices 0..length."""
    if length < 1:
        raise InvalidArgumentError(f"Path length must be at least 1, got {length}")
    return Forest(length + 1, [(i, i + 1) for i in range(length)])


def star_graph(size: int) -> Forest:
    """Star with center 0 and leaves 1..size."""
    if size < 1:
        raise InvalidArgumentError(f"Star size must be at least 1, got {size}")
    return Forest(size + 1, [(0, i) for i in range(1, size + 1)])


def matching_graph(size: int) -> Forest:
    if size < 1:
        raise InvalidArgumentError(f"Matching size must be at least 1, got {size}")
    return Forest(2 * size, [(2 * i, 2 * i + 1) for i in range(size)])


def _integer_partitions(total: int, largest: int | None = None) -> Iterator[list[int]]:
    largest = total if largest is None else largest
    if total == 0:
        yield []
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _integer_partitions(total - part, part):
            yield [part, *rest]


def _trees_of_order(order: int) -> list[nx.Graph]:
    if order == 1:
        return [nx.empty_graph(1)]
    if order == 2:
        return [nx.path_graph(2)]
    return list(nx.nonisomorphic_trees(order))


def nonisomorphic_forests(max_order: int, min_edges: int = 1) -> Iterator[Forest]:
    """Every forest with at most `max_order` vertices, one per isomorphism class.

    Isolated vertices are dropped, so each forest is listed once on its
    non-trivial components.
    """
    trees = {m: _trees_of_order(m) for m in range(2, max_order + 1)}
    for order in range(2, max_order + 1):
        for parts in _integer_partitions(order):
            if 1 in parts:
                continue
            # A multiset of trees per part size keeps the listing isomorph-free.
            choices: list[list[tuple[nx.Graph, ...]]] = []
            for size in sorted(set(parts)):
                count = parts.count(size)
                choices.append(list(combinations_with_replacement(trees[size], count)))
            for selection in product(*choices):
                components = [t for group in selection for t in group]
                union = nx.disjoint_union_all(components)
                if union.number_of_edges() >= min_edges:
                    yield Forest(union.number_of_nodes(), union.edges())

