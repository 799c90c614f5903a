"""Exception hierarchy shared by the whole package."""


class TaumodError(Exception):
    """Base class for all package errors."""


class InputError(TaumodError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    """Input document is not valid JSON."""


class SchemaError(InputError):
    """Input document does not match its declared kind."""


class InvalidModulus(InputError):
    """A field modulus is not monic, not irreducible, or out of range."""


class CapExceeded(TaumodError):
    """A configured resource cap (enumeration size, candidate count) was hit."""


class VerificationError(TaumodError):
    """An object failed verification where a verified object was required."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class TowerMismatch(TaumodError):
    """Operands belong to different field towers."""


class DivisionByZero(TaumodError, ZeroDivisionError):
    """Division or inversion of zero."""


class NoEmbedding(TaumodError):
    """No field embedding exists between the given towers."""


class ZeroArgument(TaumodError):
    """An argument that must be nonzero was zero."""


class ZeroConjugator(TaumodError):
    """Conjugation by zero is undefined."""


class NonCentralCoefficient(TaumodError):
    """A coefficient that must lie in the central subfield F_q does not."""


class ShapeMismatch(TaumodError):
    """Objects have incompatible shapes (rank, degree, period, ...)."""


class NonDivisibleRank(ShapeMismatch):
    """A rank that must be divisible by the cover degree is not."""
