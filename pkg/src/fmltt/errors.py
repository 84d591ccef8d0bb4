"""Errors raised by the checkers."""
from __future__ import annotations

import enum


class ErrorKind(enum.Enum):
    UNBOUND_VARIABLE = "UNBOUND_VARIABLE"
    NOT_A_FUNCTION = "NOT_A_FUNCTION"
    NOT_A_UNIVERSE = "NOT_A_UNIVERSE"
    SHAPE_MISMATCH = "SHAPE_MISMATCH"
    ANNOTATION_MISMATCH = "ANNOTATION_MISMATCH"
    CONV_FAILED = "CONV_FAILED"
    SUBTYPE_FAILED = "SUBTYPE_FAILED"
    MORPHISM_SHAPE_MISMATCH = "MORPHISM_SHAPE_MISMATCH"
    UNSUPPORTED = "UNSUPPORTED"
    FUEL_EXHAUSTED = "FUEL_EXHAUSTED"


class TypingError(Exception):
    """A failed judgment.

    ``path`` lists the child positions from the checked term down to the
    offending subterm; ``expected``/``actual`` hold types when relevant.
    """

    def __init__(self, kind: ErrorKind, detail: str, expected=None, actual=None):
        super().__init__(detail)
        self.kind = kind
        self.detail = detail
        self.expected = expected
        self.actual = actual
        self.path: tuple = ()

    def __str__(self):
        where = "/".join(self.path) or "<root>"
        return f"{self.kind.value} at {where}: {self.detail}"
