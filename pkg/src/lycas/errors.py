"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LycasError(Exception):
    """Base class for library errors."""


class ShapeError(LycasError, ValueError):
    """Tensor or matrix dimensions do not fit together."""


class ValidationError(LycasError):
    """An object fails the axioms required by an operation.

    ``report`` carries the failing checks when one is available.
    """

    def __init__(self, message: str, report=None, witness=None):
        super().__init__(message)
        self.report = report
        self.witness = witness


class NotTightError(ValidationError):
    """A representation is not tight; ``witness`` is the offending relation."""


class PreconditionError(LycasError):
    """Inputs are well-formed but outside the domain of an operation."""
