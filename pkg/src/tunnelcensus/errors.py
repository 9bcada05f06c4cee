"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: usage errors are 1, data/parse errors
are 2, theorem conflicts and data inconsistencies are 3.
"""


class CensusError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateTangleError(CensusError):
    """Raised when the zero or infinity tangle reaches an operation that
    requires a proper fraction."""


class MalformedContinuedFractionError(CensusError):
    """Raised when a continued fraction hits a zero intermediate denominator."""


class MalformedCodeError(CensusError):
    """Raised for Montesinos codes containing integer, zero or infinite tangles."""


class InvalidDiagramError(CensusError):
    """Raised when a PD code violates the edge-incidence invariant."""


class ComplexityLimitError(CensusError):
    """Raised when a state-sum would exceed the crossing cap."""


class OrientationError(CensusError):
    """Raised when an orientation-dependent quantity is requested for a
    multi-component diagram."""


class InternalConsistencyError(CensusError):
    """Raised when a computed invariant violates a structural guarantee,
    e.g. a non-integer exponent in a knot Jones polynomial."""


class TableError(CensusError):
    """Raised for malformed knot-table input (missing column, duplicate
    name, bad field). Carries the offending row number when known."""

    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class PolynomialSyntaxError(CensusError):
    """Raised by the polynomial parser; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class TheoremConflictError(CensusError):
    """Raised when applicable rules intersect to an empty interval."""


class DataInconsistencyError(CensusError):
    """Raised when table data contradicts a theorem, e.g. bridge index
    disagreeing with the tangle count of an identified Montesinos knot."""
