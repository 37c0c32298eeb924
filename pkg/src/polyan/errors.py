"""Exception hierarchy.

Every error raised on bad mathematical input derives from :class:`DomainError`,
which the CLI maps to exit code 1.
"""


class DomainError(Exception):
    """Base class for errors caused by mathematically invalid input."""


class MismatchedExponentialFactor(DomainError):
    pass


class Overflow(DomainError):
    pass


class InfiniteOrder(DomainError):
    """The function is not polyanalytic in z (an e^{z̄w} or e^{zz̄} factor)."""


class OrderTooSmall(DomainError):
    pass


class InternalMismatch(DomainError):
    """Two independent computations of the same object disagree."""


class NotASolution(DomainError):
    pass


class NotHolomorphic(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class DivergentIntegral(DomainError):
    pass


class ToleranceNotMet(DomainError):
    pass


class ExpressionSyntaxError(ValueError):
    """Malformed expression text or JSON document."""
