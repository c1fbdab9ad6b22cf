"""Shared exception types.

Parameter and domain problems raise ValueError (or a subclass); failures of a
well-posed computation to produce a result raise ComputationError subclasses.
The CLI maps these onto distinct exit codes.
"""


class ComputationError(Exception):
    """A well-formed request that cannot produce a result (CLI exit code 3)."""


class NonHyperbolicError(ComputationError):
    """Group element has no translation length (identity, elliptic or parabolic)."""


class NoCertificateError(ComputationError):
    """Spectrum search found no hyperbolic element within the given bounds."""


class NoCycleError(ComputationError):
    """Graph contains no cycle, so no shortest-cycle length exists."""


class DegenerateMapError(ComputationError):
    """Coordinate map has a (numerically) singular Jacobian at the point."""


class IntegrationError(ComputationError):
    """Quadrature hit a non-positive-definite metric sample."""


class ChartDomainError(ValueError):
    """Point lies outside the coordinate chart an operation is defined on."""


class CacheInvalidError(Exception):
    """Cache file is missing fields, corrupt, or fails validation."""
