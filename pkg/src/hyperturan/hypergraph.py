# src/hyperturan/hypergraph.py
from bisect import bisect_left
from collections.abc import Iterable, Iterator, Set
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from hyperturan.exceptions import DeltaSystemError, EdgeError, MatchingError

Edge = tuple[int, ...]


def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask with one bit per vertex."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits_of(mask: int) -> Edge:
    """Sorted vertices of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class VertexSet(Set[int]):
    """An immutable set of non-negative vertex ids stored as a bitset."""

    __slots__ = ("_mask",)

    def __init__(self, members: Iterable[int] = ()):
        members = list(members)
        if any(v < 0 for v in members):
            raise EdgeError(f"Vertices must be non-negative: {sorted(members)}")
        self._mask = mask_of(members)

    @classmethod
    def from_mask(cls, mask: int) -> "VertexSet":
        vs = cls.__new__(cls)
        vs._mask = mask
        return vs

    @classmethod
    def _from_iterable(cls, it: Iterable[int]) -> "VertexSet":
        return cls(it)

    @property
    def mask(self) -> int:
        return self._mask

    def __contains__(self, v: Any) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self._mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(bits_of(self._mask))

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, VertexSet):
            return self._mask == other._mask
        return super().__eq__(other)

    def __hash__(self) -> int:
        return hash(self._mask)

    def __le__(self, other: Any) -> bool:
        if isinstance(other, VertexSet):
            return self._mask & ~other._mask == 0
        return super().__le__(other)

    def __or__(self, other: Any) -> "VertexSet":
        if isinstance(other, VertexSet):
            return VertexSet.from_mask(self._mask | other._mask)
        return VertexSet(set(self) | set(other))

    def __and__(self, other: Any) -> "VertexSet":
        if isinstance(other, VertexSet):
            return VertexSet.from_mask(self._mask & other._mask)
        return VertexSet(set(self) & set(other))

    def __sub__(self, other: Any) -> "VertexSet":
        if isinstance(other, VertexSet):
            return VertexSet.from_mask(self._mask & ~other._mask)
        return VertexSet(set(self) - set(other))

    def __repr__(self) -> str:
        return f"VertexSet({list(self)})"


def as_mask(vertices: "VertexSet | Iterable[int]") -> int:
    if isinstance(vertices, VertexSet):
        return vertices.mask
    return VertexSet(vertices).mask


class Hypergraph:
    """A k-uniform family of distinct k-subsets of the vertex set 0..n-1.

    Edges are stored canonically: each edge as a sorted tuple and the family
    in lexicographic order, so insertion order never changes the value.
    Isolated vertices are representable because n is stored, not inferred.
    """

    __slots__ = ("_k", "_n", "_edges", "_masks")

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]] = ()):
        if k < 1:
            raise EdgeError(f"Uniformity must be at least 1, got {k}")
        if n < 0:
            raise EdgeError(f"Vertex count must be non-negative, got {n}")

        canonical: set[Edge] = set()
        for raw in edges:
            edge = tuple(sorted(raw))
            if len(edge) != k or len(set(edge)) != k:
                raise EdgeError(f"Edge {list(raw)} is not a {k}-set")
            if edge[0] < 0 or edge[-1] >= n:
                raise EdgeError(f"Edge {list(raw)} leaves vertex range 0..{n - 1}")
            if edge in canonical:
                raise EdgeError(f"Duplicate edge {list(edge)}")
            canonical.add(edge)

        self._k = k
        self._n = n
        self._edges: tuple[Edge, ...] = tuple(sorted(canonical))
        self._masks: tuple[int, ...] = tuple(mask_of(e) for e in self._edges)

    @classmethod
    def complete(cls, k: int, n: int, vertices: Iterable[int] | None = None) -> "Hypergraph":
        """All k-subsets of `vertices` (default 0..n-1)."""
        pool = range(n) if vertices is None else sorted(vertices)
        return cls(k, n, combinations(pool, k))

    @property
    def k(self) -> int:
        return self._k

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def masks(self) -> tuple[int, ...]:
        """Edge bitmasks, aligned with `edges`."""
        return self._masks

    @property
    def support(self) -> VertexSet:
        """Vertices that lie in at least one edge."""
        union = 0
        for m in self._masks:
            union |= m
        return VertexSet.from_mask(union)

    def vertex_degrees(self) -> list[int]:
        degrees = [0] * self._n
        for edge in self._edges:
            for v in edge:
                degrees[v] += 1
        return degrees

    def incidence(self) -> list[list[int]]:
        """Per vertex, the indices of the edges containing it (ascending)."""
        table: list[list[int]] = [[] for _ in range(self._n)]
        for index, edge in enumerate(self._edges):
            for v in edge:
                table[v].append(index)
        return table

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Same k and n, different edge family."""
        return Hypergraph(self._k, self._n, edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._edges)

    def __contains__(self, edge: Any) -> bool:
        try:
            key = tuple(sorted(edge))
        except TypeError:
            return False
        index = bisect_left(self._edges, key)
        return index < len(self._edges) and self._edges[index] == key

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Hypergraph):
            return False
        return (self._k, self._n, self._edges) == (other._k, other._n, other._edges)

    def __hash__(self) -> int:
        return hash((self._k, self._n, self._edges))

    def __repr__(self) -> str:
        return f"Hypergraph(k={self._k}, n={self._n}, edges={[list(e) for e in self._edges]})"

    def __getstate__(self) -> tuple[int, int, tuple[Edge, ...]]:
        return self._k, self._n, self._edges

    def __setstate__(self, state: tuple[int, int, tuple[Edge, ...]]) -> None:
        self._k, self._n, self._edges = state
        self._masks = tuple(mask_of(e) for e in self._edges)


@dataclass(frozen=True)
class Matching:
    """Pairwise-disjoint edges of some hypergraph."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = 0
        for edge in self.edges:
            m = mask_of(edge)
            if seen & m:
                raise MatchingError(f"Edge {list(edge)} meets an earlier matching edge")
            seen |= m

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class DeltaSystem:
    """A sunflower: members pairwise intersecting exactly in `kernel`."""

    kernel: VertexSet
    members: tuple[Edge, ...]

    def __post_init__(self):
        core = self.kernel.mask
        for a, b in combinations(self.members, 2):
            if mask_of(a) & mask_of(b) != core:
                raise DeltaSystemError(
                    f"Members {list(a)} and {list(b)} do not meet in {list(self.kernel)}"
                )
        for member in self.members:
            if mask_of(member) & core != core:
                raise DeltaSystemError(f"Member {list(member)} misses the kernel")

    @property
    def petals(self) -> tuple[Edge, ...]:
        core = self.kernel.mask
        return tuple(bits_of(mask_of(m) & ~core) for m in self.members)

    def __len__(self) -> int:
        return len(self.members)
