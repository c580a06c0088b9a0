"""Shared exception types.

Everything raised on purpose by this package derives from GermcalcError, so
callers (in particular the command line driver) can map failures to exit
codes without matching on message strings.
"""


class GermcalcError(Exception):
    """Base class for all errors raised by germcalc."""


class DimensionError(GermcalcError, ValueError):
    """Operands live in different variable counts."""


class PrecisionError(GermcalcError, ValueError):
    """A truncation degree is too small for the requested computation."""


class InversionError(GermcalcError, ValueError):
    """A formal map with singular linear part cannot be inverted."""


class ParseError(GermcalcError, ValueError):
    """An expression or manifest could not be parsed."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
