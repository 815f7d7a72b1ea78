"""Exception types shared across the package."""


class ReplikaError(Exception):
    """Base class for all package errors."""


class QuiverParseError(ReplikaError):
    """Raised on malformed quiver files; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotDynkinError(ReplikaError):
    """Enumeration-backed operation invoked on a non-Dynkin quiver."""


class BongartzEnd(ReplikaError):
    """Down-mutation attempted at the Bongartz complement."""


class SinkEnd(ReplikaError):
    """Up-mutation attempted at the sink complement."""


class DecompositionError(ReplikaError):
    """Splitting failed after the retry budget (never a wrong answer)."""


class IsoInconclusive(ReplikaError):
    """Isomorphism search exhausted its budget without a certificate."""


class InternalCheckError(ReplikaError):
    """A structural fact the theory guarantees failed to hold at runtime."""
