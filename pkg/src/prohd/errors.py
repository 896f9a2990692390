from __future__ import annotations


class ProHDError(Exception):
    """Base class for errors raised by this package."""


class InvalidCloudError(ProHDError, ValueError):
    """Point data violates the cloud invariants (empty, ragged, non-finite)."""


class DimensionMismatchError(ProHDError, ValueError):
    pass


class CloudFormatError(ProHDError, ValueError):
    """A point file could not be decoded. ``code`` identifies the failure."""

    code = "format"


class BadMagicError(CloudFormatError):
    code = "bad-magic"


class TruncatedPayloadError(CloudFormatError):
    code = "truncated-payload"


class NonFiniteValueError(CloudFormatError):
    code = "non-finite"


class RaggedRowError(CloudFormatError):
    code = "ragged-row"


class DatasetError(ProHDError):
    """A dataset could not be loaded or generated."""


class InvariantViolation(ProHDError, RuntimeError):
    """An internal consistency check failed."""
