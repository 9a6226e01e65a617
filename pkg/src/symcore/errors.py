"""Exceptions shared across the package."""


class SymcoreError(Exception):
    """Base class for all errors raised by symcore."""


class ParseError(SymcoreError):
    """Malformed instance or group description."""


class NotSymmetricError(SymcoreError):
    """An operation required a symmetric instance but got violations."""


class UnboundedError(SymcoreError):
    """A polyhedron that must be bounded is not."""


class CapExceededError(SymcoreError):
    """A configurable enumeration cap was hit."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap of {cap}")
        self.what = what
        self.cap = cap
