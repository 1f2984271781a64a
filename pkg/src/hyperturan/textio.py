# src/hyperturan/textio.py
"""Plain-text formats.

    hg <k> <n> <m>        graph <n> <m>        growth <k> <q>
    v1 v2 ... vk          u v   (u < v)        e1 ... ek | a1 ... aj

Lines starting with `#` and blank lines are ignored. Vertices are 0-based and
written in increasing order. In the growth format the part after `|` is the
defining set of that edge; the first edge has none.
"""

from pathlib import Path

from hyperturan.exceptions import EdgeError, ParseError
from hyperturan.forests import GrowthSequence
from hyperturan.graphs import Graph
from hyperturan.hypergraph import Hypergraph


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]


def _integers(number: int, raw: str) -> list[int]:
    try:
        return [int(token) for token in raw.split()]
    except ValueError:
        raise ParseError(number, f"expected integers, got {raw!r}") from None


def _header(lines: list[tuple[int, str]], keyword: str, arity: int) -> list[int]:
    if not lines:
        raise ParseError(1, f"missing '{keyword}' header")
    number, raw = lines[0]
    tag, _, rest = raw.partition(" ")
    if tag != keyword:
        raise ParseError(number, f"expected '{keyword}' header, got {tag!r}")
    values = _integers(number, rest)
    if len(values) != arity or any(x < 0 for x in values):
        raise ParseError(number, f"'{keyword}' header needs {arity} non-negative integers")
    return values


def _increasing(number: int, values: list[int]) -> None:
    if any(a >= b for a, b in zip(values, values[1:])):
        raise ParseError(number, f"vertices must be strictly increasing: {values}")


def _first_seen(seen: dict[tuple[int, ...], int], number: int, edge: list[int]) -> None:
    earlier = seen.setdefault(tuple(edge), number)
    if earlier != number:
        raise ParseError(number, f"duplicate edge {edge}, first given on line {earlier}")


def parse_hypergraph(text: str) -> Hypergraph:
    lines = _content_lines(text)
    k, n, m = _header(lines, "hg", 3)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(lines[0][0], f"header announces {m} edges, found {len(body)}")
    edges = []
    seen: dict[tuple[int, ...], int] = {}
    for number, raw in body:
        edge = _integers(number, raw)
        if len(edge) != k:
            raise ParseError(number, f"edge has {len(edge)} vertices, expected {k}")
        _increasing(number, edge)
        if edge[0] < 0 or edge[-1] >= n:
            raise ParseError(number, f"vertex out of range 0..{n - 1}")
        _first_seen(seen, number, edge)
        edges.append(edge)
    try:
        return Hypergraph(k, n, edges)
    except EdgeError as err:
        raise ParseError(lines[0][0], str(err)) from err


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    n, m = _header(lines, "graph", 2)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(lines[0][0], f"header announces {m} edges, found {len(body)}")
    edges = []
    seen: dict[tuple[int, ...], int] = {}
    for number, raw in body:
        pair = _integers(number, raw)
        if len(pair) != 2:
            raise ParseError(number, f"graph edge needs 2 vertices, got {len(pair)}")
        _increasing(number, pair)
        if pair[0] < 0 or pair[1] >= n:
            raise ParseError(number, f"vertex out of range 0..{n - 1}")
        _first_seen(seen, number, pair)
        edges.append(pair)
    try:
        return Graph(n, edges)
    except EdgeError as err:
        raise ParseError(lines[0][0], str(err)) from err


def parse_growth(text: str) -> GrowthSequence:
    lines = _content_lines(text)
    k, q = _header(lines, "growth", 2)
    body = lines[1:]
    if len(body) != q:
        raise ParseError(lines[0][0], f"header announces {q} edges, found {len(body)}")
    edges, defining = [], []
    for position, (number, raw) in enumerate(body):
        edge_part, bar, set_part = raw.partition("|")
        edge = _integers(number, edge_part)
        if len(edge) != k:
            raise ParseError(number, f"edge has {len(edge)} vertices, expected {k}")
        _increasing(number, edge)
        if position == 0:
            if bar and set_part.strip():
                raise ParseError(number, "the first edge has no defining set")
        else:
            a = _integers(number, set_part)
            _increasing(number, a)
            defining.append(a)
        edges.append(edge)
    return GrowthSequence(k, tuple(map(tuple, edges)), tuple(map(tuple, defining)))


def format_hypergraph(family: Hypergraph) -> str:
    lines = [f"hg {family.k} {family.n} {len(family)}"]
    lines.extend(" ".join(map(str, e)) for e in family.edges)
    return "\n".join(lines) + "\n"


def format_graph(graph: Graph) -> str:
    lines = [f"graph {graph.n} {graph.num_edges()}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def format_growth(sequence: GrowthSequence) -> str:
    lines = [f"growth {sequence.k} {len(sequence)}"]
    for position, edge in enumerate(sequence.edges):
        line = " ".join(map(str, edge))
        if position:
            line += " | " + " ".join(map(str, sequence.defining_sets[position - 1]))
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def read_growth(path: str | Path) -> GrowthSequence:
    return parse_growth(Path(path).read_text())
