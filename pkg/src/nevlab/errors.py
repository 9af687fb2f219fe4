"""Error taxonomy.

ConfigError maps to CLI exit code 2, ComputationError subclasses to 3,
AssertionFailure (from --assert) to 4.
"""

from __future__ import annotations


class NevlabError(Exception):
    """Base class for all package errors."""


class ConfigError(NevlabError):
    """Malformed or inconsistent experiment configuration."""


class ComputationError(NevlabError):
    """Base class for numerical/analytic failures."""


class DomainError(ComputationError):
    """Input outside the declared domain (radius beyond the disc, etc.)."""


class PrecisionError(ComputationError):
    """A requested tolerance or truncation bound cannot be met."""


class ConvergenceError(ComputationError):
    """An adaptive process hit its depth/iteration limit before converging."""


class ZeroOnCircleError(ComputationError):
    """A circle integrand or winding path passes through a zero/pole."""


class OriginHitsTargetError(ComputationError):
    """f(0) equals the target value, so the standard counting anchor fails."""


class GridError(ComputationError):
    """A sampling grid is too coarse for the requested difference scheme."""


class DegenerateInputError(ComputationError):
    """Degenerate geometric input (dependent curves, bad position, ...)."""


class ImageInHyperplaneError(DegenerateInputError):
    """The curve lies inside one of the supplied hyperplanes."""
