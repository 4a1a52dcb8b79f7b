"""Exception types raised across the package."""


class ToricPolyError(Exception):
    """Base class for all package errors."""


class DimensionError(ToricPolyError, ValueError):
    """A point set or shaving result is not two-dimensional."""


class ZeroVectorError(ToricPolyError, ValueError):
    pass


class ResourceError(ToricPolyError, RuntimeError):
    pass


class OriginNotInteriorError(ToricPolyError, ValueError):
    pass


class BoxTooSmallError(ToricPolyError, ValueError):
    pass


class BoxTooBigError(ToricPolyError, ValueError):
    """The polygon does not fit in the square [0, q-2]^2 for the chosen field."""


class NotPrimePowerError(ToricPolyError, ValueError):
    pass


class FieldDivisionByZeroError(ToricPolyError, ZeroDivisionError):
    pass


class EmptySubsetError(ToricPolyError, ValueError):
    pass


class NotInPolygonError(ToricPolyError, ValueError):
    pass


class BudgetExceededError(ToricPolyError, RuntimeError):
    pass


class TimeBudgetExceeded(ToricPolyError, RuntimeError):
    """Raised (or recorded) when an information-set search runs out of time."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class MissingTableEntry(ToricPolyError, KeyError):
    pass


class ParseError(ToricPolyError, ValueError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
