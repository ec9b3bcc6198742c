"""Exception types raised across the package."""


class GraphJacError(Exception):
    """Base class for all package errors."""


class NotASubgroup(GraphJacError, ValueError):
    pass


class NotInSubgroup(GraphJacError, ValueError):
    pass


class NotWellDefined(GraphJacError, ValueError):
    """A matrix does not induce a map of the given groups.

    ``witness`` is the index of the offending source column (numerator
    generator or relation) and ``kind`` says which of the two it was.
    """

    def __init__(self, message, witness=None, kind=None):
        super().__init__(message)
        self.witness = witness
        self.kind = kind


class DuplicateId(GraphJacError, ValueError):
    pass


class DanglingEndpoint(GraphJacError, ValueError):
    pass


class EmptyVertexSet(GraphJacError, ValueError):
    pass


class UnknownEdge(GraphJacError, KeyError):
    pass


class NotConnected(GraphJacError, ValueError):
    pass


class NonZeroDegree(GraphJacError, ValueError):
    pass


class TheoremViolation(GraphJacError, AssertionError):
    """A verified identity failed; ``witness`` carries whatever pins it down."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPositiveDefinite(GraphJacError, ValueError):
    pass


class NotHarmonic(GraphJacError, ValueError):
    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class AdjointnessViolated(GraphJacError, ValueError):
    pass


class IsolatedVertex(GraphJacError, ValueError):
    pass


class NotHarmonicAt(GraphJacError, ValueError):
    def __init__(self, vertex, sizes):
        super().__init__(f"morphism is not harmonic at {vertex!r}: fibre sizes {sizes}")
        self.vertex = vertex
        self.sizes = sizes


class PreconditionViolated(GraphJacError, ValueError):
    pass
