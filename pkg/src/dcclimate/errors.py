"""Exception hierarchy shared by the library and the CLI."""


class ForecastError(Exception):
    """Base class for all errors raised by dcclimate."""


class DomainError(ForecastError, ValueError):
    """A value lies outside the mathematical domain of an operation."""


class UnitError(ForecastError, ValueError):
    """A quantity carries the wrong unit for the requested operation."""


class RangeError(ForecastError, ValueError):
    """A year lies outside the span of a series (no extrapolation)."""


class CoverageError(ForecastError, ValueError):
    """An input series does not cover the years a computation needs."""


class MismatchError(ForecastError, ValueError):
    """Two forecasts cannot be compared (different baseline or range)."""


class ValidationError(ForecastError, ValueError):
    """Input data violates a documented invariant."""

    def __init__(self, message: str, line: int | None = None, path=None):
        self.line = line
        self.path = path
        prefix = ""
        if path is not None:
            prefix += f"{path}: "
        if line is not None:
            prefix += f"line {line}: "
        super().__init__(prefix + message)


class ParseError(ValidationError):
    """A row of an input file could not be parsed."""


class UnknownUnitError(ValidationError):
    """An energy file declares a unit that is not supported."""
