"""Exception and warning types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """A parameter lies outside the admissible open domain."""


class BranchError(ArithmeticError):
    """An inverse trig argument or radicand left its valid range."""


class IdenticalCircles(ValueError):
    """Two great circles coincide as sets, so no perpendicular is defined."""


class UsageError(ValueError):
    """Command line arguments are inconsistent or incomplete."""


class NumericalWarning(UserWarning):
    """Emitted when a guarded numerical clamp exceeds its quiet tolerance."""
