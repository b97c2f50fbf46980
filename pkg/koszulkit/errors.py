"""Exception hierarchy shared by every koszulkit module."""

from __future__ import annotations


class KoszulkitError(Exception):
    """Base class for all koszulkit failures."""


class InputError(KoszulkitError):
    """Raised when user supplied input cannot be processed."""


class FieldError(InputError):
    """Raised when a field descriptor is invalid or two fields are mixed."""


class ScalarError(InputError):
    """Raised for malformed scalar literals and inversion of zero."""


class PresentationError(InputError):
    """Raised when a presentation file violates the grammar."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TruncationError(InputError):
    """Raised when a graded piece lies beyond the configured weight limit."""


class ResourceLimitError(InputError):
    """Raised when a space would exceed the configured column cap."""


class CharacteristicError(InputError):
    """Raised when a division by 2 or by p is impossible in the base field."""


class CoefficientError(InputError):
    """Raised when a product or variant does not support the coefficients."""


class ConfigurationError(KoszulkitError):
    """Raised when environment configuration is malformed."""


class InvariantError(KoszulkitError):
    """Raised when an identity that must hold fails. Always a bug."""


__all__ = [
    "CharacteristicError",
    "CoefficientError",
    "ConfigurationError",
    "FieldError",
    "InputError",
    "InvariantError",
    "KoszulkitError",
    "PresentationError",
    "ResourceLimitError",
    "ScalarError",
    "TruncationError",
]
