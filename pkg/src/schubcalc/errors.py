"""Exception types shared across the package."""

from __future__ import annotations


class SchubcalcError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(SchubcalcError, ValueError):
    """Malformed textual input (permutations, pipe dream fixtures)."""


class PolySyntaxError(FormatError):
    """Syntax error in a polynomial expression, with 0-based column."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at column {position + 1}")


class DomainError(SchubcalcError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConsistencyError(SchubcalcError, ArithmeticError):
    """An identity that must hold exactly was violated (an internal bug)."""


class NotDivisibleError(SchubcalcError, ArithmeticError):
    """Exact division left a nonzero remainder."""

    def __init__(self, message: str, remainder=None):
        self.remainder = remainder
        super().__init__(message)


class ExpansionError(SchubcalcError, ArithmeticError):
    """A polynomial cannot be expanded in the Schubert basis over S_n."""


class LubViolation(SchubcalcError, ArithmeticError):
    """A set of covers has no unique least upper bound of the expected length."""


class CapacityError(SchubcalcError, ValueError):
    """Requested problem size exceeds the configured cap."""
