# src/hyperturan/constructions.py
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from hyperturan.exceptions import InvalidArgumentError
from hyperturan.forests import sigma
from hyperturan.graphs import Graph
from hyperturan.hypergraph import Hypergraph, VertexSet, mask_of
from hyperturan.parameters import binomial

log = logging.getLogger(__name__)

Value = int | Fraction


class MatchingConvention(Enum):
    """How the size parameter of the matching asymptotic is read.

    PRINTED uses nu as the coefficient. FORBIDDEN_COUNT reads nu as the size of
    the forbidden matching, giving coefficient nu - 1 (which agrees with the
    intersecting-family value at nu = 2).
    """

    PRINTED = "printed"
    FORBIDDEN_COUNT = "forbidden-count"


class FormulaSpec(NamedTuple):
    id: str
    params: tuple[str, ...]
    description: str


class Formula(Enum):
    EKR = FormulaSpec("ekr", ("n", "k"), "C(n-1, k-1)")
    MATCHING = FormulaSpec("matching", ("n", "k", "nu"), "C(n, k) - C(n-nu, k)")
    MATCHING_ASYMPTOTIC = FormulaSpec(
        "matching-asymptotic", ("n", "k", "nu", "convention"), "coefficient * C(n-1, k-1)"
    )
    PATH_TWO = FormulaSpec("path2", ("n", "k"), "C(n-2, k-2)")
    PATH = FormulaSpec("path", ("n", "k", "l"), "sum C(n-i, k-1), i <= t, (+ C(n-t-2, k-2))")
    STAR = FormulaSpec("star", ("n", "k", "l"), "phi(l) * C(n-2, k-2)")
    TRIPLE_PATH_TWO = FormulaSpec("triple-path2", ("n",), "n if 4 | n else n-1")
    FOREST = FormulaSpec("forest", ("n", "k", "v"), "(v-k) * C(n, k-1)")
    KALAI = FormulaSpec("kalai", ("n", "k", "v"), "(v-k)/k * C(n, k-1)")
    LOWER_BOUND = FormulaSpec("lowerbound", ("n", "k", "sigma"), "(sigma-1) * C(n-sigma+1, k-1)")
    EXPANSION = FormulaSpec("expansion", ("n", "k", "sigma"), "(sigma-1) * C(n, k-1)")
    ERDOS_GALLAI = FormulaSpec("erdos-gallai", ("n", "l"), "(l-1) n / 2")
    GRAPH_STAR = FormulaSpec("graph-star", ("n", "l"), "floor((l-1) n / 2)")
    GRAPH_FOREST = FormulaSpec("graph-forest", ("n", "v"), "(v-2) n")

    @property
    def id(self) -> str:
        return self.value.id

    @property
    def params(self) -> tuple[str, ...]:
        return self.value.params

    @classmethod
    def from_id(cls, formula_id: str) -> "Formula":
        for formula in cls:
            if formula.id == formula_id:
                return formula
        raise InvalidArgumentError(f"Unknown formula: {formula_id!r}")


@dataclass(frozen=True)
class FormulaReport:
    formula: Formula
    params: dict[str, int | str] = field(hash=False)
    value: Value

    def to_dict(self) -> dict:
        value = self.value
        if isinstance(value, Fraction):
            value = str(value) if value.denominator != 1 else value.numerator
        return {"formula": self.formula.id, "params": dict(self.params), "value": value}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def ekr_value(n: int, k: int) -> int:
    """Largest intersecting k-family on n >= 2k points."""
    return binomial(n - 1, k - 1)


def erdos_matching_bound(n: int, k: int, nu: int) -> int:
    """C(n, k) - C(n-nu, k): k-sets meeting a fixed nu-set."""
    if nu < 0:
        raise InvalidArgumentError(f"nu must be non-negative, got {nu}")
    return binomial(n, k) - binomial(n - nu, k)


def matching_asymptotic_value(
    n: int, k: int, nu: int, convention: MatchingConvention = MatchingConvention.FORBIDDEN_COUNT
) -> int:
    coefficient = nu if convention is MatchingConvention.PRINTED else nu - 1
    return coefficient * binomial(n - 1, k - 1)


def path_extremal_value(n: int, k: int, length: int) -> int:
    _check_path(k, length)
    t = (length - 1) // 2
    value = sum(binomial(n - i, k - 1) for i in range(1, t + 1))
    if length % 2 == 0:
        value += binomial(n - t - 2, k - 2)
    return value


def star_phi(length: int) -> int:
    if length < 2:
        raise InvalidArgumentError(f"phi needs l >= 2, got {length}")
    if length % 2:
        return length * length - length
    return length * length - 3 * length // 2


def star_value(n: int, k: int, length: int) -> int:
    return star_phi(length) * binomial(n - 2, k - 2)


def triple_path_two_value(n: int) -> int:
    """n when 4 divides n, else n - 1; valid only for large n."""
    return n if n % 4 == 0 else n - 1


def forest_turan_bound(v: int, k: int, n: int) -> int:
    """(v-k) C(n, k-1): more edges force every k-forest on v vertices."""
    if v < k:
        raise InvalidArgumentError(f"A k-forest has at least k vertices, got v={v}, k={k}")
    return (v - k) * binomial(n, k - 1)


def kalai_bound(v: int, k: int, n: int) -> Fraction:
    if v < k:
        raise InvalidArgumentError(f"A k-forest has at least k vertices, got v={v}, k={k}")
    return Fraction(v - k, k) * binomial(n, k - 1)


def lower_bound_value(n: int, k: int, sigma_value: int) -> int:
    return (sigma_value - 1) * binomial(n - sigma_value + 1, k - 1)


def expansion_value(n: int, k: int, sigma_value: int) -> int:
    return (sigma_value - 1) * binomial(n, k - 1)


def erdos_gallai_bound(n: int, length: int) -> Fraction:
    """(l-1) n / 2 for graphs without a path of l edges."""
    if length < 1:
        raise InvalidArgumentError(f"Path length must be at least 1, got {length}")
    return Fraction((length - 1) * n, 2)


def graph_star_value(n: int, length: int) -> int:
    if length < 1:
        raise InvalidArgumentError(f"Star size must be at least 1, got {length}")
    return (length - 1) * n // 2


def graph_forest_bound(n: int, v: int) -> int:
    if v < 2:
        raise InvalidArgumentError(f"Forest needs at least 2 vertices, got v={v}")
    return (v - 2) * n


def evaluate_formula(formula: Formula | str, **params: int | str) -> FormulaReport:
    """Evaluate a closed form by id with exactly its declared parameters."""
    if isinstance(formula, str):
        formula = Formula.from_id(formula)
    if set(params) != set(formula.params):
        raise InvalidArgumentError(
            f"{formula.id} takes {list(formula.params)}, got {sorted(params)}"
        )
    p = params
    match formula:
        case Formula.EKR:
            value: Value = ekr_value(p["n"], p["k"])
        case Formula.MATCHING:
            value = erdos_matching_bound(p["n"], p["k"], p["nu"])
        case Formula.MATCHING_ASYMPTOTIC:
            try:
                convention = MatchingConvention(p["convention"])
            except ValueError:
                raise InvalidArgumentError(f"Unknown convention {p['convention']!r}") from None
            value = matching_asymptotic_value(p["n"], p["k"], p["nu"], convention)
        case Formula.PATH_TWO:
            value = binomial(p["n"] - 2, p["k"] - 2)
        case Formula.PATH:
            value = path_extremal_value(p["n"], p["k"], p["l"])
        case Formula.STAR:
            value = star_value(p["n"], p["k"], p["l"])
        case Formula.TRIPLE_PATH_TWO:
            value = triple_path_two_value(p["n"])
        case Formula.FOREST:
            value = forest_turan_bound(p["v"], p["k"], p["n"])
        case Formula.KALAI:
            value = kalai_bound(p["v"], p["k"], p["n"])
        case Formula.LOWER_BOUND:
            value = lower_bound_value(p["n"], p["k"], p["sigma"])
        case Formula.EXPANSION:
            value = expansion_value(p["n"], p["k"], p["sigma"])
        case Formula.ERDOS_GALLAI:
            value = erdos_gallai_bound(p["n"], p["l"])
        case Formula.GRAPH_STAR:
            value = graph_star_value(p["n"], p["l"])
        case Formula.GRAPH_FOREST:
            value = graph_forest_bound(p["n"], p["v"])
        case _:
            raise InvalidArgumentError(f"Unknown formula: {formula}")
    return FormulaReport(formula, dict(params), value)


def join(
    a: Hypergraph,
    b: Hypergraph,
    a_range: VertexSet | None = None,
    b_range: VertexSet | None = None,
) -> Hypergraph:
    """{A | B : A in a, B in b}; the declared ranges default to the supports."""
    a_range = a.support if a_range is None else a_range
    b_range = b.support if b_range is None else b_range
    if a_range.mask & b_range.mask:
        raise InvalidArgumentError(
            f"Join ranges overlap in {list(a_range & b_range)}"
        )
    for family, declared in ((a, a_range), (b, b_range)):
        if family.support.mask & ~declared.mask:
            raise InvalidArgumentError("A family leaves its declared vertex range")
    return Hypergraph(
        a.k + b.k,
        max(a.n, b.n),
        (x + y for x in a.edges for y in b.edges),
    )


def cross_cut_family(n: int, k: int, size: int) -> Hypergraph:
    """All k-subsets of [n] meeting [size] in exactly one vertex."""
    if size < 0 or n - size < k - 1:
        raise InvalidArgumentError(f"Need 0 <= size <= n-k+1, got n={n}, k={k}, size={size}")
    if size == 0:
        return Hypergraph(k, n)
    points = Hypergraph(1, n, ((y,) for y in range(size)))
    rest = Hypergraph.complete(k - 1, n, range(size, n))
    return join(points, rest, VertexSet(range(size)), VertexSet(range(size, n)))


def lower_bound_family(n: int, k: int, forest: Graph) -> Hypergraph:
    """Every k-set meeting the first sigma(T)-1 vertices exactly once.

    A copy of the expansion would need an independent set of T meeting all
    but fewer than sigma(T) edges, so the family avoids it.
    """
    s = sigma(forest)
    if n < s - 1 + k:
        raise InvalidArgumentError(f"Need n >= sigma-1+k = {s - 1 + k}, got n={n}")
    family = cross_cut_family(n, k, s - 1)
    log.debug("lower-bound family: sigma=%d, %d edges", s, len(family))
    return family


def matching_extremal_family(n: int, k: int, size: int) -> Hypergraph:
    """All k-sets meeting [size]."""
    if size < 0 or n < k + size:
        raise InvalidArgumentError(f"Need n >= k + size, got n={n}, k={k}, size={size}")
    return Hypergraph(k, n, (c for c in combinations(range(n), k) if c[0] < size))


def path_extremal_family(n: int, k: int, length: int) -> Hypergraph:
    """k-sets meeting S = [t]; for even l also k-sets outside S through {t, t+1}."""
    _check_path(k, length)
    t = (length - 1) // 2
    even = length % 2 == 0
    if n < max(k, t + 2 if even else t):
        raise InvalidArgumentError(f"n={n} too small for k={k}, l={length}")
    pair = mask_of((t, t + 1))
    return Hypergraph(
        k,
        n,
        (
            c
            for c in combinations(range(n), k)
            if c[0] < t or (even and mask_of(c) & pair == pair)
        ),
    )


def _check_path(k: int, length: int) -> None:
    if length < 1 or k < 2:
        raise InvalidArgumentError(f"Need l >= 1 and k >= 2, got l={length}, k={k}")


def greedy_packing(n: int, block: int, max_overlap: int) -> list[tuple[int, ...]]:
    """Lexicographic first-fit: block-subsets of [n] meeting pairwise in <= max_overlap."""
    if not 0 <= max_overlap < block <= n:
        raise InvalidArgumentError(
            f"Need 0 <= overlap < block <= n, got n={n}, block={block}, overlap={max_overlap}"
        )
    chosen: list[tuple[int, ...]] = []
    masks: list[int] = []
    for candidate in combinations(range(n), block):
        m = mask_of(candidate)
        if all((m & other).bit_count() <= max_overlap for other in masks):
            chosen.append(candidate)
            masks.append(m)
    log.debug("greedy packing n=%d block=%d: %d blocks", n, block, len(chosen))
    return chosen


def kalai_packing_family(n: int, k: int, v: int) -> Hypergraph:
    """Complete k-graphs on a greedy packing of (v-1)-sets meeting in < k-1 points.

    Every tight k-tree on v vertices lies inside a single block, and blocks
    have only v-1 vertices.
    """
    if not n >= v - 1 > k - 1 >= 1:
        raise InvalidArgumentError(f"Need n >= v-1 > k-1 >= 1, got n={n}, k={k}, v={v}")
    blocks = greedy_packing(n, v - 1, k - 2)
    return Hypergraph(k, n, (c for b in blocks for c in combinations(b, k)))
