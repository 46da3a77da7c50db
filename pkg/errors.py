#!/usr/bin/env python3
"""Exception hierarchy for anticode"""

from typing import Optional


class AnticodeError(Exception):
    """Base class for every error raised by anticode"""


class LengthMismatchError(AnticodeError, ValueError):
    """Two words (or a word and a code) have different lengths"""

    def __init__(self, expected: int, actual: int, what: str = "word"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} length mismatch: expected {expected}, got {actual}")


class ParseError(AnticodeError, ValueError):
    """Malformed symbol, word, code file or transcript"""


class BudgetExceededError(AnticodeError, RuntimeError):
    """An enumeration would exceed its configured budget"""

    def __init__(self, operation: str, required: int, limit: int, hint: Optional[str] = None):
        self.operation = operation
        self.required = required
        self.limit = limit
        message = (
            f"{operation} needs {required} enumeration steps, over the budget limit of {limit} "
            f"(raise it with --budget or ANTICODE_BUDGET)"
        )
        if hint:
            message += f"; {hint}"
        super().__init__(message)


class CodeConstructionError(AnticodeError, ValueError):
    """A generator matrix or code construction is invalid"""


class DomainError(AnticodeError, ValueError):
    """An argument lies outside the domain of the operation"""


class ProtocolError(AnticodeError, RuntimeError):
    """The key-generation protocol cannot proceed"""
