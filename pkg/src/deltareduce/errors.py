"""Exception types shared across the package."""

from __future__ import annotations


class DeltaReduceError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(DeltaReduceError):
    """An operation that needs a nonzero polynomial received zero."""


class NoLeader(DeltaReduceError):
    """The polynomial contains no derivative keys, so it has no leader."""


class UnknownIndeterminate(DeltaReduceError):
    """A name was used that the current ranking or session does not know."""


class DuplicateEntry(DeltaReduceError):
    """The same indeterminate appeared twice in a ranking."""


class MissingIndeterminate(DeltaReduceError):
    """A declared dependent indeterminate is absent from the ranking."""


class InconsistentSystem(DeltaReduceError):
    """A nonzero parameter-only polynomial was derived during reduction."""


class UnsupportedCell(DeltaReduceError):
    """The requested model/regime combination is not defined."""


class ParseError(DeltaReduceError):
    """Syntax error in a system file, with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class UndeclaredSymbol(ParseError):
    """An identifier was used before being declared."""


class GridTooCoarse(DeltaReduceError):
    """Fewer than the minimum number of grid points per axis."""


class ShapeMismatch(DeltaReduceError):
    """Field shapes or dimensions are incompatible with the operator."""


class UnknownCheck(DeltaReduceError):
    """The requested identity check name does not exist."""


class InternalError(DeltaReduceError):
    """An internal invariant was violated; indicates a bug, not bad input."""
