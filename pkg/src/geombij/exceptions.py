"""Exception hierarchy.

``InputError`` subclasses signal malformed or invalid input (CLI exit code 2);
everything else signals a violated precondition or an internal safeguard.
"""

from __future__ import annotations


class GeombijError(Exception):
    pass


class InputError(GeombijError, ValueError):
    pass


class GraphParseError(InputError):
    pass


class LoopEdgeError(InputError):
    pass


class DisconnectedGraphError(InputError):
    pass


class EdgeInTreeError(GeombijError, ValueError):
    pass


class NotDirectedError(GeombijError, ValueError):
    pass


class DegreeSumError(GeombijError, ValueError):
    pass


class NotBreakError(GeombijError, ValueError):
    pass


class IterationCapExceeded(GeombijError, RuntimeError):
    pass


class MissingOrderingCoverage(GeombijError, ValueError):
    pass


class NotAcyclicError(GeombijError, ValueError):
    pass


class NotPlanarError(GeombijError, ValueError):
    pass


class HasBridgeError(GeombijError, ValueError):
    pass


class StartNotIncidentError(GeombijError, ValueError):
    pass


class NonGenericError(GeombijError, ValueError):
    """A weight vector is perpendicular to ``cycle``."""

    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(f"weight vector is perpendicular to cycle {dict(cycle.signs)}")


class OrientationInfeasible(GeombijError):
    """No orientation realises the requested indegrees.

    ``witness`` is a vertex set S whose prescribed indegree total is smaller
    than the number of edges with both ends in S.
    """

    def __init__(self, witness):
        self.witness = frozenset(witness)
        super().__init__(f"indegree sequence infeasible on {sorted(self.witness)}")
