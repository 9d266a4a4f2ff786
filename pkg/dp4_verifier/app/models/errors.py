"""
Error types raised by the verifier.
Suites turn these into failed report items instead of aborting a run.
"""


class VerificationError(Exception):
    """Base class for verifier errors"""


class RingMismatchError(VerificationError, ValueError):
    """Operands live in different rings, or a substitution leaves the target ring"""


class CharacteristicError(VerificationError, ValueError):
    """A quadric-rank computation was requested in characteristic 2"""


class EmptyVarietyError(VerificationError):
    """The ideal is the whole ring"""


class InvalidGeometryError(VerificationError, ValueError):
    """Rank-deficient input, invalid flag, or an object outside Y"""


class InterpolationError(VerificationError):
    """Too few samples, or the interpolant has non-integer coefficients"""


class UnknownSuiteError(VerificationError, ValueError):
    """Unknown suite id or unsupported prime in a run configuration"""
