"""Containment of one k-graph in another, shadow peeling and the two
constructive embedders (tight forests by peeling, expansions via kernel graphs).
"""

import logging
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import NamedTuple

from networkx.algorithms.isomorphism import GraphMatcher

from hyperturan.exceptions import (
    EmbeddingError,
    GrowthSequenceError,
    InvalidArgumentError,
    UniformityError,
)
from hyperturan.forests import (
    ExpandedForest,
    GrowthSequence,
    expand,
    is_tight,
    validate_growth,
)
from hyperturan.graphs import Graph
from hyperturan.hypergraph import Edge, Hypergraph, bits_of, mask_of
from hyperturan.kernels import KernelGraph, kernel_graph
from hyperturan.parameters import maximum_delta_system

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Embedding:
    """An injective vertex map carrying every pattern edge onto a host edge."""

    vertex_map: dict[int, int]
    edge_map: dict[Edge, Edge]

    @classmethod
    def from_vertex_map(cls, pattern: Hypergraph, vertex_map: dict[int, int]) -> "Embedding":
        edge_map = {
            edge: tuple(sorted(vertex_map[v] for v in edge)) for edge in pattern.edges
        }
        return cls(dict(sorted(vertex_map.items())), edge_map)

    def validate(self, host: Hypergraph, pattern: Hypergraph) -> None:
        """Raise EmbeddingError unless this is an embedding of `pattern` into `host`."""
        if set(self.vertex_map) != set(range(pattern.n)):
            raise EmbeddingError("Vertex map must cover every pattern vertex")
        images = list(self.vertex_map.values())
        if len(set(images)) != len(images):
            raise EmbeddingError("Vertex map is not injective")
        if any(not 0 <= x < host.n for x in images):
            raise EmbeddingError("Vertex map leaves the host vertex range")
        for edge in pattern.edges:
            image = tuple(sorted(self.vertex_map[v] for v in edge))
            if self.edge_map.get(edge) != image:
                raise EmbeddingError(f"Edge map disagrees with vertex map on {list(edge)}")
            if image not in host:
                raise EmbeddingError(f"Image {list(image)} of {list(edge)} is not a host edge")

    def is_valid(self, host: Hypergraph, pattern: Hypergraph) -> bool:
        try:
            self.validate(host, pattern)
        except EmbeddingError:
            return False
        return True

    def to_text(self) -> str:
        lines = ["# vertex map"]
        lines.extend(f"{p} {h}" for p, h in self.vertex_map.items())
        lines.append("# edge map")
        lines.extend(
            f"{' '.join(map(str, p))} -> {' '.join(map(str, h))}"
            for p, h in self.edge_map.items()
        )
        return "\n".join(lines) + "\n"


class _Step(NamedTuple):
    edge: Edge
    mapped: tuple[int, ...]  # vertices placed by earlier steps
    shared: tuple[int, ...]  # new here, used again later
    private: tuple[int, ...]  # new here, nowhere else


def _plan(pattern: Hypergraph) -> list[_Step]:
    """Pattern edges most-constrained-first: each next edge overlaps the placed part most."""
    degrees = pattern.vertex_degrees()
    weight = [sum(degrees[v] for v in e) for e in pattern.edges]
    remaining = list(range(len(pattern.edges)))
    placed: set[int] = set()
    order: list[int] = []
    while remaining:
        best = max(
            remaining,
            key=lambda i: (len(placed.intersection(pattern.edges[i])), weight[i], -i),
        )
        remaining.remove(best)
        order.append(best)
        placed.update(pattern.edges[best])

    steps = []
    seen: set[int] = set()
    for position, index in enumerate(order):
        edge = pattern.edges[index]
        later = {v for j in order[position + 1 :] for v in pattern.edges[j]}
        mapped = tuple(v for v in edge if v in seen)
        new = [v for v in edge if v not in seen]
        steps.append(
            _Step(
                edge,
                mapped,
                tuple(v for v in new if v in later),
                tuple(v for v in new if v not in later),
            )
        )
        seen.update(edge)
    return steps


def contains(host: Hypergraph, pattern: Hypergraph) -> Embedding | None:
    """An embedding of `pattern` into `host`, or None when there is none.

    Exhaustive backtracking over host edges. Only vertices reused by later
    pattern edges are permuted; private vertices take the leftover image
    vertices in sorted order.
    """
    if host.k != pattern.k:
        raise UniformityError(f"Uniformity mismatch: host k={host.k}, pattern k={pattern.k}")
    if pattern.n > host.n or len(pattern) > len(host):
        return None

    steps = _plan(pattern)
    masks = host.masks
    incidence = host.incidence()
    degrees = host.vertex_degrees()
    by_weight = sorted(
        range(len(masks)),
        key=lambda i: (-sum(degrees[v] for v in host.edges[i]), host.edges[i]),
    )
    image: dict[int, int] = {}
    nodes = 0

    def extend(position: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if position == len(steps):
            return True
        step = steps[position]
        need = mask_of(image[v] for v in step.mapped)
        candidates = incidence[image[step.mapped[0]]] if step.mapped else by_weight
        for index in candidates:
            m = masks[index]
            if m & need != need or m & used != need:
                continue
            free = sorted(bits_of(m & ~need), key=lambda x: (-degrees[x], x))
            for chosen in permutations(free, len(step.shared)):
                rest = sorted(set(free).difference(chosen))
                image.update(zip(step.shared, chosen))
                image.update(zip(step.private, rest))
                if extend(position + 1, used | m):
                    return True
                for v in step.shared + step.private:
                    del image[v]
        return False

    found = extend(0, 0)
    log.debug("containment search: %d nodes, found=%s", nodes, found)
    if not found:
        return None

    taken = set(image.values())
    spare = iter(x for x in range(host.n) if x not in taken)
    for v in range(pattern.n):
        if v not in image:
            image[v] = next(spare)
    return Embedding.from_vertex_map(pattern, image)


class PeelStep(NamedTuple):
    kernel: Edge
    removed: tuple[Edge, ...]


class PeelResult(NamedTuple):
    residue: Hypergraph
    steps: tuple[PeelStep, ...]


def peel_shadow(family: Hypergraph, threshold: int) -> PeelResult:
    """Repeatedly drop all edges through a (k-1)-set of current degree 1..threshold.

    The scan is lexicographic and restarts after each removal, so the order of
    steps is deterministic. In the residue every (k-1)-subset of an edge has
    degree above the threshold.
    """
    if threshold < 0:
        raise InvalidArgumentError(f"Threshold must be non-negative, got {threshold}")
    k = family.k
    through: dict[Edge, set[int]] = {}
    for index, edge in enumerate(family.edges):
        for sub in combinations(edge, k - 1):
            through.setdefault(sub, set()).add(index)
    order = sorted(through)
    alive = set(range(len(family.edges)))
    steps: list[PeelStep] = []

    while True:
        kernel = next((x for x in order if 1 <= len(through[x]) <= threshold), None)
        if kernel is None:
            break
        removed = sorted(through[kernel])
        for index in removed:
            for sub in combinations(family.edges[index], k - 1):
                through[sub].discard(index)
            alive.discard(index)
        steps.append(PeelStep(kernel, tuple(family.edges[i] for i in removed)))

    log.debug("peeled %d edges in %d steps", len(family) - len(alive), len(steps))
    residue = family.with_edges(family.edges[i] for i in sorted(alive))
    return PeelResult(residue, tuple(steps))


def embed_tight_forest(family: Hypergraph, forest: GrowthSequence) -> Embedding | None:
    """Embed a tight k-forest with v vertices, or return None.

    The family is peeled at threshold v - k; on a non-empty residue the forest
    is grown edge by edge, always taking the first host edge through the image
    of the defining set that avoids used vertices. If the greedy pass stalls an
    exhaustive search decides. The embedding is of `forest.to_hypergraph()`.
    """
    if not validate_growth(forest) or not is_tight(forest):
        raise GrowthSequenceError(f"Not a tight forest: {list(forest.edges)}")
    if forest.k != family.k:
        raise UniformityError(f"Uniformity mismatch: host k={family.k}, forest k={forest.k}")

    sequence = forest.relabeled()
    pattern = sequence.to_hypergraph()
    v, k = pattern.n, family.k
    if v > family.n:
        return None

    residue, _ = peel_shadow(family, v - k)
    if len(residue):
        image = _grow_greedily(residue, sequence)
        if image is not None:
            return Embedding.from_vertex_map(pattern, image)
        log.info("greedy growth stalled on a residue of %d edges", len(residue))
    return contains(family, pattern)


def _grow_greedily(residue: Hypergraph, sequence: GrowthSequence) -> dict[int, int] | None:
    image: dict[int, int] = {}
    used = 0
    for position, edge in enumerate(sequence.edges):
        a = sequence.defining_sets[position - 1] if position else ()
        need = mask_of(image[x] for x in a)
        host_mask = next(
            (m for m in residue.masks if m & need == need and m & used == need), None
        )
        if host_mask is None:
            return None
        fresh = [x for x in edge if x not in a]
        image.update(zip(fresh, bits_of(host_mask & ~need)))
        used |= host_mask
    return image


@dataclass(frozen=True)
class KernelEmbedding:
    """Outcome of embedding an expansion through the kernel graph.

    `embedding` is None when H was not found in the kernel graph or petals ran
    out; neither case proves the expansion is absent. For graphs (k = 2) the
    expansion is H itself: there is no kernel graph, the answer comes from an
    exact search and a None embedding means H is absent.
    """

    embedding: Embedding | None
    kernel_graph: KernelGraph | None
    graph_found: bool
    expansion: ExpandedForest

    @property
    def conclusive(self) -> bool:
        return self.embedding is not None


def embed_expansion_via_kernel(
    family: Hypergraph, graph: Graph, threshold: int | None = None
) -> KernelEmbedding:
    """Find H in G_{2,s}(F), then give each edge a petal from its delta-system.

    With s >= k * e(H) the petals can always be chosen disjoint, so success
    in the kernel graph yields an embedding of the k-expansion of H.
    """
    k = family.k
    expansion = expand(graph, k)
    if k == 2:
        found = contains(family, expansion.result)
        return KernelEmbedding(found, None, found is not None, expansion)

    s = threshold if threshold is not None else max(1, k * graph.num_edges())
    kg = kernel_graph(family, s)

    matcher = GraphMatcher(kg.graph.to_networkx(), graph.to_networkx())
    mapping = next(matcher.subgraph_monomorphisms_iter(), None)
    if mapping is None:
        return KernelEmbedding(None, kg, False, expansion)

    vertex_map = {p: h for h, p in mapping.items()}
    used = mask_of(vertex_map.values())
    for fresh, (x, y) in zip(expansion.fresh, graph.edges):
        system = maximum_delta_system(family, (vertex_map[x], vertex_map[y]))
        petal = next((p for p in system.petals if not mask_of(p) & used), None)
        if petal is None:
            log.warning("no free petal for kernel %s at threshold %d", [x, y], s)
            return KernelEmbedding(None, kg, True, expansion)
        vertex_map.update(zip(fresh, petal))
        used |= mask_of(petal)

    return KernelEmbedding(
        Embedding.from_vertex_map(expansion.result, vertex_map), kg, True, expansion
    )


class CenterPartition(NamedTuple):
    uncentered: tuple[Edge, ...]
    centered: tuple[Edge, ...]
    centers: dict[Edge, int]


def classify_centers(family: Hypergraph, graph: Graph) -> CenterPartition:
    """Split edges by whether some vertex of the edge is G-adjacent to all the others."""
    if graph.n != family.n:
        raise InvalidArgumentError(f"Graph has {graph.n} vertices, family has {family.n}")
    uncentered, centered = [], []
    centers: dict[Edge, int] = {}
    for edge in family.edges:
        center = next(
            (x for x in edge if all(graph.has_edge(x, y) for y in edge if y != x)), None
        )
        if center is None:
            uncentered.append(edge)
        else:
            centered.append(edge)
            centers[edge] = center
    return CenterPartition(tuple(uncentered), tuple(centered), centers)
