"""Exception types raised by the engine.

Engine precondition failures (``AquanimError`` subclasses) and document
problems (``SpecError`` subclasses) are kept apart so the CLI and the HTTP
service can map them to stable exit codes / status codes.
"""


class AquanimError(Exception):
    """An engine precondition was violated (planning or evaluation)."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DomainError(AquanimError):
    """Scalar argument outside its admissible range."""


class DegenerateExtent(AquanimError):
    """A rectangle extent collapsed below tolerance; the free edge would blow up."""


class RangeMismatch(AquanimError):
    """Two binnings do not cover the same data range."""


class AreaMismatch(AquanimError):
    """Initial and final liquid areas differ beyond tolerance."""


class LevelOutOfRange(AquanimError):
    """A liquid level lies outside its container."""


class EscapesContainer(AquanimError):
    """A shifted liquid would leave its container."""


class UnknownLiquid(AquanimError):
    """The selected liquid id is not present in the stack."""


class DimensionMismatch(AquanimError):
    """Per-bin inputs have different lengths."""


class EmptySelection(AquanimError):
    """A selection-based transition received no selected elements."""


class UnknownLevel(AquanimError):
    """The named level does not exist in the stacked chart."""


class UnknownCategory(AquanimError):
    """The named category does not exist in the chart."""


class InvalidPosition(AquanimError):
    """Target position out of range or equal to the current one."""


class EmptyData(AquanimError):
    """No samples to bin."""


class ValueOutOfRange(AquanimError):
    """A sample lies outside the declared histogram range."""


class EmptyMatrix(AquanimError):
    """Confusion matrix with zero total count."""


class ValidationError(AquanimError):
    """A chart-model invariant is violated; the message names it."""


class SpecError(Exception):
    """A transition spec document is malformed or references missing data."""


class ParseError(SpecError):
    """Unparseable input; carries best-effort line/column information."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
