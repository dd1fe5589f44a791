"""Exception hierarchy shared by every module."""


class FiniteBoolError(Exception):
    """Base class for all package errors."""


class InputError(FiniteBoolError, ValueError):
    """Malformed or inconsistent input (ground-size mismatch, bad range, ...)."""


class ResourceError(FiniteBoolError, RuntimeError):
    """A documented enumeration cap would be exceeded."""


class TruncationError(InputError):
    """A Cantor-space object does not fit below the truncation length."""


class PreconditionFailed(FiniteBoolError):
    """A checked precondition does not hold.

    The offending object (missing cell, pair of indices, ...) is kept on
    ``witness`` so callers can re-check it.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
