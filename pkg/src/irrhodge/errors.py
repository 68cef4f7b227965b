"""Exception hierarchy shared by all modules."""


class IrrHodgeError(Exception):
    """Base class for every error raised by this package."""


class ExpressionSyntaxError(IrrHodgeError, ValueError):
    """Malformed polynomial expression; ``position`` is a 0-based column."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariable(ExpressionSyntaxError):
    pass


class EmptyPolynomial(IrrHodgeError, ValueError):
    pass


class NotConvenient(IrrHodgeError):
    pass


class DegeneratePolytope(IrrHodgeError):
    pass


class Degenerate(IrrHodgeError):
    """The Laurent polynomial fails Kouchnirenko non-degeneracy."""


class ArityLimitExceeded(IrrHodgeError):
    pass


class ResourceLimit(IrrHodgeError):
    pass


class InfiniteQuotient(IrrHodgeError):
    pass


class SingularMultiplication(IrrHodgeError):
    pass


class SpectrumOutOfRange(IrrHodgeError):
    pass


class UnknownCatalogEntry(IrrHodgeError, KeyError):
    pass


class TruncationOverflow(IrrHodgeError):
    pass


class NotRepresentable(IrrHodgeError):
    """A chart section does not lie in the requested V-filtration step."""
