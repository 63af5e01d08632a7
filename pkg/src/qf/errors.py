"""Exception hierarchy shared by every module."""

from __future__ import annotations


class QfError(Exception):
    """Base class for all library errors."""


class CapExceeded(QfError):
    """A search or enumeration would exceed its configured size cap."""


class ValidationError(QfError):
    """An input object fails one of its defining identities.

    ``witness`` carries the offending indices so callers can print them.
    """

    def __init__(self, message: str, witness=None, kind: str | None = None):
        super().__init__(message)
        self.witness = witness
        self.kind = kind or type(self).__name__


class NotAssociative(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class QuandleAxiomError(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class CocycleError(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class DomainError(QfError):
    """An operation was called outside the domain where it is defined."""
