"""Exception hierarchy shared by all discordium modules."""


class DiscordiumError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DiscordiumError, ValueError):
    """An input does not describe a valid matrix or quantum state."""


class NotHermitian(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class SupportViolation(DiscordiumError, ValueError):
    """Support of the first state is not contained in the support of the second."""


class ConvergenceFailure(DiscordiumError, RuntimeError):
    pass


class UnsupportedDimension(DiscordiumError, ValueError):
    pass


class ParameterOutOfRange(DiscordiumError, ValueError):
    pass


class MissingBasis(DiscordiumError, ValueError):
    pass


class IndexOutOfRange(DiscordiumError, IndexError):
    pass


class ConsistencyError(DiscordiumError, RuntimeError):
    """A computed quantity violates a theorem it must satisfy (numerics bug)."""


class ParseError(DiscordiumError):
    """A state file could not be parsed; carries a line/column location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
