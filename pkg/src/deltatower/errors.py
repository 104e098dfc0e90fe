"""Exception types raised across the package.

Every domain error has its own class so callers can catch precisely;
all inherit from DeltaTowerError.
"""


class DeltaTowerError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(DeltaTowerError, ZeroDivisionError):
    """Exact division by the zero element."""


class LengthMismatch(DeltaTowerError, ValueError):
    """Paired sequences of different lengths."""


class NotLinear(DeltaTowerError, ValueError):
    """Expression has a monomial of total degree >= 2 where a Q-linear
    combination of constant symbols was required."""


class LogOfZero(DeltaTowerError, ZeroDivisionError):
    """Logarithmic derivative of the zero element."""


class DomainViolation(DeltaTowerError, ValueError):
    """Iterated logarithmic derivative left its domain of definition.

    ``index`` is the first i with the i-th iterate equal to zero.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"iterate {index} is zero")


class NonInvertibleSeries(DeltaTowerError, ZeroDivisionError):
    """Series division by a series with zero constant term."""


class ZeroInitialValue(DeltaTowerError, ValueError):
    """A series solver was given a zero initial value."""


class LevelOutOfRange(DeltaTowerError, IndexError):
    """Tower level outside 1..ell."""


class NotNormalForm(DeltaTowerError, ValueError):
    """Element is not a constant-linear combination of the expected
    generators."""


class SupportTooSmall(DeltaTowerError, ValueError):
    """Relation support has fewer than two terms; nothing to reduce."""


class TruncationTooShort(DeltaTowerError, ValueError):
    """Series truncation order too small for the requested rank check."""


class NotMonotone(DeltaTowerError, ValueError):
    """Integer sequence is not monotone in the required direction."""


class BudgetExceeded(DeltaTowerError, ValueError):
    """Requested instance exceeds the configured exhaustiveness budget."""


class ParseError(DeltaTowerError, ValueError):
    """Malformed element or operator text."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
