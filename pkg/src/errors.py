"""Exception hierarchy shared by every stabkit module."""

from typing import Optional


class StabkitError(Exception):
    """Base class for all errors raised by the toolkit."""


class DimensionError(StabkitError, ValueError):
    """Operands disagree on variable count, matrix order or vector length."""


class ZeroPolynomialError(StabkitError, ValueError):
    """An operation that needs a nonzero polynomial or operator received zero."""


class NonRealError(StabkitError, ValueError):
    """A real-coefficient routine received Gaussian-rational imaginary parts."""


class PreconditionError(StabkitError, ValueError):
    """A documented hypothesis of an operation does not hold for its input."""


class NotDiagonalError(PreconditionError):
    """A diagonal operator was required (every term z^a d^b with a == b)."""


class NotExactError(StabkitError, ArithmeticError):
    """Exact division left a remainder, or a value crossing from sympy was not rational."""


class InputFormatError(StabkitError, ValueError):
    """Malformed JSON document; `location` points at the offending field."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ConfigError(StabkitError, ValueError):
    """A setting read from the environment is malformed."""
