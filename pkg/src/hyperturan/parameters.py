"""Degrees, links and the exact packing/covering parameters of a hypergraph.

Matching number, transversal number and the 1-cross-cut number are NP-hard in
general; every routine here is an exact branch-and-bound sized for desk-scale
inputs (a few dozen vertices, a few hundred edges). Witnesses are deterministic:
the search visits branches in canonical (lexicographic) order and keeps the
first optimum it meets.
"""

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import comb

from hyperturan.exceptions import InvalidArgumentError
from hyperturan.hypergraph import (
    DeltaSystem,
    Hypergraph,
    Matching,
    VertexSet,
    as_mask,
    bits_of,
    mask_of,
)

log = logging.getLogger(__name__)


def binomial(a: int, t: int) -> int:
    """Exact binomial coefficient; 0 whenever t < 0, a < 0 or t > a."""
    if t < 0 or a < 0 or t > a:
        return 0
    return comb(a, t)


def degree(family: Hypergraph, subset: VertexSet | Iterable[int]) -> int:
    """Number of edges containing `subset` (the whole family for the empty set)."""
    w = as_mask(subset)
    return sum(1 for m in family.masks if m & w == w)


def link(family: Hypergraph, subset: VertexSet | Iterable[int]) -> Hypergraph:
    """The (k - |W|)-uniform family {E minus W : W a proper subset of E}."""
    w = as_mask(subset)
    size = w.bit_count()
    if size >= family.k:
        raise InvalidArgumentError(
            f"Link needs |W| < k, got |W|={size} for k={family.k}"
        )
    petals = [bits_of(m & ~w) for m in family.masks if m & w == w]
    return Hypergraph(family.k - size, family.n, petals)


def _greedy_disjoint_count(masks: Iterable[int]) -> int:
    """Size of a greedily built matching; a lower bound on nu and on tau."""
    used = 0
    count = 0
    for m in masks:
        if not m & used:
            used |= m
            count += 1
    return count


def maximum_matching(family: Hypergraph) -> Matching:
    """A maximum matching, lexicographically least among maximum ones.

    Branches on the lowest vertex still covered by an available edge: either
    one of the edges through it joins the matching, or the vertex is skipped.
    """
    masks = family.masks
    edges = family.edges
    if not masks:
        return Matching(())

    through = [mask_of(indices) for indices in family.incidence()]
    conflict = []
    for edge in edges:
        c = 0
        for v in edge:
            c |= through[v]
        conflict.append(c)

    k = family.k
    best: list[int] = []
    chosen: list[int] = []

    def upper_bound(avail: int) -> int:
        covered = 0
        rest = avail
        while rest:
            low = rest & -rest
            covered |= masks[low.bit_length() - 1]
            rest ^= low
        return min(avail.bit_count(), covered.bit_count() // k)

    def search(avail: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        if not avail or len(chosen) + upper_bound(avail) <= len(best):
            return

        first = (avail & -avail).bit_length() - 1
        v = edges[first][0]
        rest = avail & through[v]
        while rest:
            low = rest & -rest
            rest ^= low
            index = low.bit_length() - 1
            chosen.append(index)
            search(avail & ~conflict[index])
            chosen.pop()
        search(avail & ~through[v])

    search((1 << len(masks)) - 1)
    return Matching(tuple(edges[i] for i in best))


def matching_number(family: Hypergraph) -> int:
    return len(maximum_matching(family))


def maximum_delta_system(
    family: Hypergraph, kernel: VertexSet | Iterable[int]
) -> DeltaSystem:
    """A largest sunflower of `family` whose kernel is exactly `kernel`."""
    w = as_mask(kernel)
    petals = maximum_matching(link(family, VertexSet.from_mask(w)))
    members = tuple(bits_of(mask_of(p) | w) for p in petals.edges)
    return DeltaSystem(VertexSet.from_mask(w), members)


def kernel_degree(family: Hypergraph, kernel: VertexSet | Iterable[int]) -> int:
    """deg*(W): the matching number of the link of W; defined for |W| < k."""
    return len(maximum_delta_system(family, kernel))


def minimum_transversal(family: Hypergraph) -> VertexSet:
    """A smallest vertex set meeting every edge.

    Branches on the vertices of the lexicographically first uncovered edge;
    the greedy matching of the uncovered edges is the lower bound.
    """
    masks = list(family.masks)
    if not masks:
        return VertexSet()

    # Greedy cover seeds the incumbent.
    chosen = 0
    uncovered = masks
    while uncovered:
        counts: dict[int, int] = {}
        for m in uncovered:
            for v in bits_of(m):
                counts[v] = counts.get(v, 0) + 1
        v = min(counts, key=lambda u: (-counts[u], u))
        chosen |= 1 << v
        uncovered = [m for m in uncovered if not m >> v & 1]

    best_mask = chosen
    best_size = chosen.bit_count()
    nodes = 0

    def search(cover: int, size: int, open_edges: list[int]) -> None:
        nonlocal best_mask, best_size, nodes
        nodes += 1
        if not open_edges:
            if size < best_size:
                best_mask, best_size = cover, size
            return
        if size + _greedy_disjoint_count(open_edges) >= best_size:
            return
        for v in bits_of(open_edges[0]):
            search(
                cover | 1 << v,
                size + 1,
                [m for m in open_edges if not m >> v & 1],
            )

    search(0, 0, masks)
    log.debug("transversal search: %d nodes, tau=%d", nodes, best_size)
    return VertexSet.from_mask(best_mask)


def transversal_number(family: Hypergraph) -> int:
    return len(minimum_transversal(family))


def minimum_one_cross_cut(family: Hypergraph) -> VertexSet | None:
    """A smallest Y with |Y & E| == 1 for every edge E, or None if there is none.

    Picks the first edge Y has not hit yet and branches on which of its
    vertices enters Y. Adding v settles every edge through v, so all other
    vertices of those edges become forbidden.
    """
    masks = family.masks
    if not masks:
        return VertexSet()

    neighbourhood = [0] * family.n
    for m in masks:
        for v in bits_of(m):
            neighbourhood[v] |= m

    best: int | None = None
    best_size = 0

    def search(chosen: int, forbidden: int, size: int) -> None:
        nonlocal best, best_size
        open_edges = [m for m in masks if not m & chosen]
        if not open_edges:
            if best is None or size < best_size:
                best, best_size = chosen, size
            return
        if any(m & ~forbidden == 0 for m in open_edges):
            return
        if best is not None and size + _greedy_disjoint_count(open_edges) >= best_size:
            return
        for v in bits_of(open_edges[0] & ~forbidden):
            search(chosen | 1 << v, forbidden | neighbourhood[v], size + 1)

    search(0, 0, 0)
    return None if best is None else VertexSet.from_mask(best)


def one_cross_cut_number(family: Hypergraph) -> int | None:
    """tau_1 of the family; None stands for "no 1-cross-cut exists"."""
    cut = minimum_one_cross_cut(family)
    return None if cut is None else len(cut)


def check_binomial_sum_inequality(values: Sequence[int], t: int) -> bool:
    """sum C(z_i, t) <= (sum z_i / z_1) * C(z_1, t) for z_1 >= z_2 >= ... >= 0.

    Compared in exact rational arithmetic.
    """
    if not values:
        raise InvalidArgumentError("Need at least one value")
    if any(z < 0 for z in values) or any(a < b for a, b in zip(values, values[1:])):
        raise InvalidArgumentError(f"Values must be non-increasing and non-negative: {values}")
    if not 1 <= t <= values[0]:
        raise InvalidArgumentError(f"Need z_1 >= t >= 1, got z_1={values[0]}, t={t}")

    lhs = sum(binomial(z, t) for z in values)
    rhs = Fraction(sum(values), values[0]) * binomial(values[0], t)
    return lhs <= rhs
