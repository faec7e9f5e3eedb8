"""Exception hierarchy shared by every layer of the toolkit."""

from __future__ import annotations


class ConormalLabError(Exception):
    """Base class for all errors raised by conormal_lab."""


class RingMismatchError(ConormalLabError, ValueError):
    """Operands live in different rings (or different fields)."""


class FieldError(ConormalLabError, ValueError):
    """Invalid field descriptor or a scalar that is not an element of the field."""


class DivisionError(ConormalLabError, ArithmeticError):
    """An exact division was requested but the divisor does not divide."""


class ParseError(ConormalLabError, ValueError):
    """Malformed input text. Carries a 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})" if column is not None else f" (line {line})"
        super().__init__(message + where)


class NonHomogeneousError(ConormalLabError, ValueError):
    """A graded operation received non-homogeneous input."""


class ComputationLimitError(ConormalLabError, RuntimeError):
    """The configured step limit of the Groebner engine was exceeded."""


class InputError(ConormalLabError, ValueError):
    """Invalid arguments to an operation (wrong range, undefined object, ...)."""
