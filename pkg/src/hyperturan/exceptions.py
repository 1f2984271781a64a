class HyperTuranError(Exception):
    """Base class for all hyperturan exceptions."""


class InvalidArgumentError(HyperTuranError, ValueError):
    """Raised when an operation is called outside its documented domain."""


class UniformityError(InvalidArgumentError):
    """Raised when hypergraphs that must share a uniformity do not."""


class EdgeError(InvalidArgumentError):
    """Raised when an edge is malformed, out of range, repeated or a loop."""


class ForestError(InvalidArgumentError):
    """Raised when a Forest is built from a graph that contains a cycle."""


class GrowthSequenceError(InvalidArgumentError):
    """Raised when an operation needs a valid (or tight) growth sequence."""


class MatchingError(HyperTuranError):
    """Raised when the edges of a Matching are not pairwise disjoint."""


class DeltaSystemError(HyperTuranError):
    """Raised when the members of a DeltaSystem do not meet in its kernel."""


class EmbeddingError(HyperTuranError):
    """Raised when an Embedding does not map the pattern onto host edges."""


class ParseError(HyperTuranError):
    """Raised when a text file does not follow the hypergraph/graph formats."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
