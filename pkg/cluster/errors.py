"""Exceptions raised by the workbench.

Domain errors are ``ValueError`` subclasses so callers that only know about
bad input keep working; ``ConsistencyError`` marks an internal bug.
"""


class ClusterError(ValueError):
    """Base class for domain errors."""


class AmbientMismatch(ClusterError):
    def __init__(self, left, right):
        super().__init__(f"Ambient variable lists differ: {list(left)} vs {list(right)}")
        self.left = tuple(left)
        self.right = tuple(right)


class NotDivisible(ClusterError):
    pass


class DivideByZero(ClusterError, ZeroDivisionError):
    pass


class ZeroToNegativePower(ClusterError):
    pass


class FrozenVertex(ClusterError):
    def __init__(self, vertex):
        super().__init__(f"Vertex {vertex} is frozen (not mutable)")
        self.vertex = vertex


class UnknownVertex(ClusterError):
    pass


class HypothesisViolated(ClusterError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class InvalidMorphism(ClusterError):
    pass


class NotAComponent(ClusterError):
    pass


class KilledVertexInSequence(ClusterError):
    pass


class NotReduced(ClusterError):
    def __init__(self, word):
        super().__init__(f"Word {list(word)} is not reduced")
        self.word = tuple(word)


class PrefixOutOfRange(ClusterError):
    pass


class IndexOutOfRange(ClusterError):
    pass


class ExactDivisionFailed(ClusterError):
    pass


class InvalidCartan(ClusterError):
    pass


class ConsistencyError(RuntimeError):
    """Two computations that must agree did not."""
