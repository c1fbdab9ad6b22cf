"""Exact baseline verifiers: the Loewner torus inequality and Pu's
projective-plane inequality on their closed-form extremal families.

These provide ground-truth regression anchors for the systolic-ratio
machinery: every flat torus satisfies sys^2 <= (2/sqrt(3)) * area with
equality at the hexagonal lattice, and every round projective plane has
sys^2 / area = pi/2 independent of radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LOEWNER_BOUND = 2.0 / math.sqrt(3.0)
PU_BOUND = math.pi / 2.0

_Vec = tuple[float, float]


def _dot(u: _Vec, v: _Vec) -> float:
    return u[0] * v[0] + u[1] * v[1]


def _sub(u: _Vec, v: _Vec, k: float) -> _Vec:
    return (u[0] - k * v[0], u[1] - k * v[1])


@dataclass(frozen=True)
class Lattice2D:
    """Planar lattice spanned by two basis vectors (rows)."""

    basis: tuple[_Vec, _Vec]

    def __post_init__(self) -> None:
        (u, v) = self.basis
        det = u[0] * v[1] - u[1] * v[0]
        scale = math.sqrt(_dot(u, u)) * math.sqrt(_dot(v, v))
        if abs(det) <= 1e-12 * max(scale, 1e-300):
            raise ValueError(f"degenerate lattice basis {self.basis}")

    @property
    def area(self) -> float:
        (u, v) = self.basis
        return abs(u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True)
class RoundProjectivePlane:
    """Constant-curvature projective plane: antipodal quotient of the radius-R sphere."""

    radius: float

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")


def _lagrange_reduce(u: _Vec, v: _Vec) -> tuple[_Vec, _Vec]:
    # classical two-dimensional reduction; norms strictly decrease, so the
    # loop terminates (iteration cap guards float pathologies only)
    for _ in range(256):
        if _dot(u, u) > _dot(v, v):
            u, v = v, u
        mu = round(_dot(u, v) / _dot(u, u))
        w = _sub(v, u, mu)
        if _dot(w, w) >= _dot(u, u):
            return u, w
        v = u
        u = w
    raise ValueError("lattice reduction failed to terminate")


def lattice_systole(lattice: Lattice2D) -> float:
    """Euclidean length of a shortest nonzero lattice vector."""
    u, v = _lagrange_reduce(*lattice.basis)
    best = min(
        _dot(u, u),
        _dot(v, v),
        _dot((u[0] + v[0], u[1] + v[1]), (u[0] + v[0], u[1] + v[1])),
        _dot((u[0] - v[0], u[1] - v[1]), (u[0] - v[0], u[1] - v[1])),
    )
    return math.sqrt(best)


def loewner_ratio(lattice: Lattice2D) -> float:
    """systole^2 / area for the flat torus R^2 / lattice.

    Bounded above by 2/sqrt(3) for every lattice; the hexagonal lattice
    attains the bound.
    """
    sys1 = lattice_systole(lattice)
    return sys1 * sys1 / lattice.area


def pu_ratio(plane: RoundProjectivePlane) -> float:
    """systole^2 / area of the round projective plane; equals pi/2 for every radius.

    Closed geodesics are half great circles (length pi*R) and the area is
    half the sphere's (2*pi*R^2).
    """
    r = plane.radius
    sys1 = math.pi * r
    area = 2.0 * math.pi * r * r
    return sys1 * sys1 / area


def hexagonal_lattice(scale: float = 1.0) -> Lattice2D:
    """The Loewner-extremal lattice at the given edge length."""
    return Lattice2D(((scale, 0.0), (scale / 2.0, scale * math.sqrt(3.0) / 2.0)))
