"""Exception and warning types shared across the package."""

from __future__ import annotations

__all__ = [
    "CutoffViolationError",
    "CutoffMismatchError",
    "TruncationError",
    "TruncationWarning",
    "ModeLabelError",
    "GridMismatchError",
    "EnvelopeError",
    "ZeroNormError",
    "NoCrossingError",
]


class CutoffViolationError(ValueError):
    """A photon-number index lies outside the truncated space."""


class CutoffMismatchError(ValueError):
    """Two objects built over different cutoffs were combined."""


class TruncationError(ValueError):
    """A requested state cannot be represented at the cutoff within tolerance."""


class TruncationWarning(UserWarning):
    """Non-fatal diagnostic: significant amplitude sits at the cutoff level."""


class ModeLabelError(ValueError):
    """A mode label is unknown or duplicated."""


class GridMismatchError(ValueError):
    """A quadrature grid fails the truncation-radius test for the given q."""


class EnvelopeError(RuntimeError):
    """The rejection-sampling envelope was exceeded by the target density."""


class ZeroNormError(ValueError):
    """An operation that needs a normalizable state received a zero vector."""


class NoCrossingError(RuntimeError):
    """No sign change found when bracketing a root."""
