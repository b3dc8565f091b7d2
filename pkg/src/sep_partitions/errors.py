"""Exception types raised across the package."""


class ShapeMismatchError(ValueError):
    """Two series with different order or arity were combined."""


class CoefficientOverflowError(OverflowError):
    """A coefficient left the signed 128-bit range."""


class IllegalShiftError(ValueError):
    """A geometric or infinite product with q-shift 0 cannot be truncated."""


class OutOfRangeError(IndexError):
    """A coefficient was requested above the truncation order."""


class CapacityError(RuntimeError):
    """An enumeration or basis generation exceeded its configured limit."""


class NotAMemberError(ValueError):
    """Input does not belong to the requested partition class."""


class DecompositionError(RuntimeError):
    """Basis decomposition found zero or several candidates.

    A valid member always decomposes, so this signals a bug.
    """


class DomainError(ValueError):
    """Closed-form parameters outside their valid ranges."""


class IncompleteTruncationError(ValueError):
    """Too few basis lengths were summed to be exact up to the requested order."""
