"""Exception hierarchy shared across the package.

CLI exit codes map onto these: ValidationError -> 1, NumericGuardError
(and subclasses) -> 2.
"""


class KerropoError(Exception):
    pass


class ValidationError(KerropoError, ValueError):
    """Bad user input: malformed config, out-of-range parameter, shape mismatch."""


class InvalidTruncationError(ValidationError):
    """Truncation below the minimum the representation requires."""


class NumericGuardError(KerropoError, RuntimeError):
    """A runtime numerical guard tripped (truncation leakage, trace drift, ...)."""


class TruncationTooSmallError(NumericGuardError):
    """Requested truncation drops more probability mass than allowed."""
