"""
Exception types shared by the algebra, duality and CLI layers.
"""


class BiHomError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InputError(BiHomError, ValueError):
    """Malformed input: wrong shapes, dimension mismatch, bad file contents."""


class ContractError(BiHomError):
    """An operation was given inputs that fail a required validation."""


class PreconditionError(ContractError):
    """A named mathematical precondition of a construction does not hold."""
