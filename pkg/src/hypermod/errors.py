"""Exception types raised across the package."""


class HypergraphError(Exception):
    """Base class for all errors raised by hypermod."""


class ValidationError(HypergraphError, ValueError):
    """Malformed hypergraph input (loops, unknown vertices, bad weights)."""


class ArgumentError(HypergraphError, ValueError):
    """An operation was called outside its precondition."""


class CapacityError(HypergraphError):
    """An exhaustive enumeration would exceed its configured cap."""


class InfeasibleError(HypergraphError):
    """The requested family is empty or the program has no feasible point."""


class UnboundedError(HypergraphError):
    """A linear program is unbounded below."""


class NonConvergenceError(HypergraphError):
    """An iterative solver hit its iteration cap.

    The best iterate is attached as ``best`` so callers can inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ConsistencyError(HypergraphError):
    """A numerical result failed an internal identity check."""


class AmbiguityError(HypergraphError):
    """Level clustering could not separate density values cleanly."""


class DiagnosticError(HypergraphError):
    """A best-effort construction failed to meet a proven bound."""
