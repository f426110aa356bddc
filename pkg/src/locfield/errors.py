"""Exception types shared across the package.

The hierarchy separates "you asked for something outside the validated
domain" (``DomainError`` and friends, subclasses of ``ValueError``) from
"the computation could not reach the requested accuracy" (``AccuracyError``)
and "a floating-point result degenerated" (``NonFiniteError``).  The CLI
maps configuration problems to exit code 2 and numerical failures to 3.
"""

from __future__ import annotations

__all__ = [
    "LocfieldError",
    "DomainError",
    "SingularityError",
    "InvariantError",
    "AccuracyError",
    "NonFiniteError",
    "ConfigError",
]


class LocfieldError(Exception):
    """Base class for all errors raised deliberately by this package."""


class DomainError(LocfieldError, ValueError):
    """Argument outside the validated domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a pole, branch point, or cut."""


class InvariantError(LocfieldError, ValueError):
    """An input violates a structural invariant (e.g. a non-symmetric
    tensor passed where a reciprocal Green tensor is required)."""


class AccuracyError(LocfieldError, RuntimeError):
    """A quadrature or series failed to meet the requested tolerance."""


class NonFiniteError(LocfieldError, FloatingPointError):
    """A NaN or infinity appeared where a finite result is guaranteed."""


class ConfigError(LocfieldError, ValueError):
    """Malformed configuration, CLI arguments, or input file format."""
