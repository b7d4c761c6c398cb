class InvalidParameter(ValueError):
    """Raised when an operation receives structurally invalid input."""


class VerificationMismatch(RuntimeError):
    """A computed result disagrees with an independent cross-check."""
