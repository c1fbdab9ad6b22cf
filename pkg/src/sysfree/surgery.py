"""Coordinate-chart machinery for the Dehn-surgery metric construction:
solid-torus charts, the twisting and gluing maps, the radial cutoff, and
the blended metric, with numerical regularity checks.

Charts use cylindrical coordinates (r, theta, t).  The source solid torus
has radius L/(2*pi) + delta and period 2*pi*eps in t; the gluing map sends
its boundary annulus onto the collar {eps <= r <= eps + delta} of the
target tube, exchanging meridian and longitude directions.  Metrics are
3x3 symmetric positive-definite tensors attached to chart points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ChartDomainError, DegenerateMapError, IntegrationError

TWO_PI = 2.0 * math.pi

# a metric field maps a chart point (length-3 array) to a 3x3 tensor
MetricField = Callable[[np.ndarray], np.ndarray]

_DOMAIN_TOL = 1e-9


def _point(x) -> np.ndarray:
    p = np.asarray(x, dtype=float)
    if p.shape != (3,):
        raise ValueError(f"chart point must have 3 coordinates, got shape {p.shape}")
    return p


@dataclass(frozen=True)
class SolidTorusChart:
    """Cylindrical chart 0 <= r <= r_max, theta in [0, 2*pi), t in [0, t_period)."""

    r_max: float
    t_period: float

    def __post_init__(self) -> None:
        if self.r_max <= 0 or self.t_period <= 0:
            raise ValueError(
                f"chart extents must be positive: r_max={self.r_max}, t_period={self.t_period}")

    def box(self, r_floor: float = 0.0) -> tuple[tuple[float, float], ...]:
        return ((r_floor, self.r_max), (0.0, TWO_PI), (0.0, self.t_period))


@dataclass(frozen=True)
class SmoothProfile:
    """Monotone ramp on [0,1] with value 0 -> 1 and zero slope at both ends;
    value(1/2) is exactly 1/2 so cutoff midpoints are reproducible bit-for-bit."""

    name: str
    value: Callable[[float], float]
    derivative: Callable[[float], float]

    def __call__(self, u: float) -> float:
        return self.value(u)


def _smoothstep3(u: float) -> float:
    return u * u * (3.0 - 2.0 * u)


def _smoothstep3_deriv(u: float) -> float:
    return 6.0 * u * (1.0 - u)


def _smoothstep5(u: float) -> float:
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u))


def _smoothstep5_deriv(u: float) -> float:
    return 30.0 * u * u * (1.0 + u * (u - 2.0))


SMOOTHSTEP_CUBIC = SmoothProfile("smoothstep3", _smoothstep3, _smoothstep3_deriv)
SMOOTHSTEP_QUINTIC = SmoothProfile("smoothstep5", _smoothstep5, _smoothstep5_deriv)
DEFAULT_PROFILE = SMOOTHSTEP_CUBIC

PROFILES = {p.name: p for p in (SMOOTHSTEP_CUBIC, SMOOTHSTEP_QUINTIC)}


@dataclass(frozen=True)
class CoordinateMap:
    """Forward chart map with optional analytic Jacobian and inverse.

    forward/inverse are pure coordinate formulas (no angle wrapping, no
    domain clipping) so finite-difference stencils stay consistent; domain
    checks live in the point-level operations.
    """

    name: str
    forward: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None
    inverse: Callable[[np.ndarray], np.ndarray] | None = None
    domain: str = ""
    codomain: str = ""


def numerical_jacobian(f: Callable[[np.ndarray], np.ndarray],
                       point, rel_step: float = 6.0e-6) -> np.ndarray:
    """Central finite-difference Jacobian, step scaled per coordinate."""
    x = _point(point)
    jac = np.empty((3, 3))
    for j in range(3):
        h = rel_step * max(1.0, abs(x[j]))
        xp = x.copy()
        xm = x.copy()
        xp[j] += h
        xm[j] -= h
        jac[:, j] = (np.asarray(f(xp)) - np.asarray(f(xm))) / (2.0 * h)
    return jac


def annulus_twist(theta: float, t: float) -> tuple[float, float]:
    """Model twist of the flat annulus: (theta, t) -> (theta + 2*pi*t, t)."""
    if not 0.0 <= t <= 1.0:
        raise ChartDomainError(f"annulus coordinate t must lie in [0,1], got {t}")
    return ((theta + TWO_PI * t) % TWO_PI, t)


def euclidean_torus_metric(point) -> np.ndarray:
    """Flat solid-torus tensor diag(1, r^2, 1) for dr^2 + r^2 dtheta^2 + dt^2."""
    r = _point(point)[0]
    if r <= 0.0:
        raise ChartDomainError(f"polar chart degenerates at r <= 0, got r={r}")
    return np.diag([1.0, r * r, 1.0])


def _twist_angle(t: float, eps: float, half_width: float,
                 profile: SmoothProfile) -> float:
    mid = math.pi * eps
    s = abs(t - mid)
    if s >= half_width:
        return 0.0
    return math.pi * profile.value(1.0 - s / half_width)


def _twist_angle_deriv(t: float, eps: float, half_width: float,
                       profile: SmoothProfile) -> float:
    mid = math.pi * eps
    s = abs(t - mid)
    if s >= half_width or t == mid:
        return 0.0
    sign = -1.0 if t > mid else 1.0
    return sign * math.pi * profile.derivative(1.0 - s / half_width) / half_width


def _check_half_width(eps: float, half_width: float | None) -> float:
    if half_width is None:
        half_width = math.pi * eps / 2.0
    if not 0.0 < half_width < math.pi * eps:
        raise ValueError(
            f"twist half-width must lie in (0, pi*eps): got {half_width} for eps={eps}")
    return half_width


def beta_twist(point, eps: float, profile: SmoothProfile = DEFAULT_PROFILE,
               half_width: float | None = None) -> np.ndarray:
    """Twist of the filled solid torus: rotates the disk at t = pi*eps by
    exactly pi, dying off smoothly within half_width of it; identity elsewhere."""
    w = _check_half_width(eps, half_width)
    x = _point(point)
    r, theta, t = x
    if r < 0.0:
        raise ChartDomainError(f"r must be nonnegative, got {r}")
    if not -_DOMAIN_TOL <= t <= TWO_PI * eps + _DOMAIN_TOL:
        raise ChartDomainError(
            f"t={t} outside the solid-torus period [0, {TWO_PI * eps}]")
    alpha = _twist_angle(t, eps, w, profile)
    return np.array([r, (theta + alpha) % TWO_PI, t])


def make_beta_twist(eps: float, profile: SmoothProfile = DEFAULT_PROFILE,
                    half_width: float | None = None) -> CoordinateMap:
    """Twisting map as a CoordinateMap with analytic Jacobian and inverse."""
    w = _check_half_width(eps, half_width)

    def forward(x: np.ndarray) -> np.ndarray:
        r, theta, t = x
        return np.array([r, theta + _twist_angle(t, eps, w, profile), t])

    def jac(x: np.ndarray) -> np.ndarray:
        da = _twist_angle_deriv(x[2], eps, w, profile)
        return np.array([[1.0, 0.0, 0.0],
                         [0.0, 1.0, da],
                         [0.0, 0.0, 1.0]])

    def inv(x: np.ndarray) -> np.ndarray:
        r, theta, t = x
        return np.array([r, theta - _twist_angle(t, eps, w, profile), t])

    return CoordinateMap(
        name=f"beta_twist(eps={eps:g}, w={w:g}, {profile.name})",
        forward=forward, jacobian=jac, inverse=inv,
        domain="solid torus, t period 2*pi*eps", codomain="same chart")


def make_beta_twist_inverse(eps: float, profile: SmoothProfile = DEFAULT_PROFILE,
                            half_width: float | None = None) -> CoordinateMap:
    fwd = make_beta_twist(eps, profile, half_width)

    def jac(x: np.ndarray) -> np.ndarray:
        j = fwd.jacobian(x)
        j[1, 2] = -j[1, 2]
        return j

    return CoordinateMap(name=fwd.name + "^-1", forward=fwd.inverse,
                         jacobian=jac, inverse=fwd.forward,
                         domain=fwd.codomain, codomain=fwd.domain)


def gluing_map(point, L: float, eps: float, delta: float | None = None) -> np.ndarray:
    """Annulus gluing (r, theta, t) -> (r - L/2pi + eps, t/eps, L*theta/2pi).

    Maps the boundary annulus of the filled torus onto the collar
    {eps <= r' <= eps + delta}, sending meridians onto length-L longitudes.
    """
    if delta is None:
        delta = eps / 4.0
    x = _point(point)
    r, theta, t = x
    r_in = L / TWO_PI
    tol = _DOMAIN_TOL * max(1.0, r_in)
    if not r_in - tol <= r <= r_in + delta + tol:
        raise ChartDomainError(
            f"r={r} outside the source annulus [{r_in}, {r_in + delta}]")
    if not -_DOMAIN_TOL <= theta <= TWO_PI + _DOMAIN_TOL:
        raise ChartDomainError(f"theta={theta} outside [0, 2*pi]")
    if not -_DOMAIN_TOL <= t <= TWO_PI * eps + _DOMAIN_TOL:
        raise ChartDomainError(f"t={t} outside [0, {TWO_PI * eps}]")
    return np.array([r - r_in + eps, t / eps, L * theta / TWO_PI])


def make_gluing_map(L: float, eps: float, delta: float) -> CoordinateMap:
    r_in = L / TWO_PI

    def forward(x: np.ndarray) -> np.ndarray:
        r, theta, t = x
        return np.array([r - r_in + eps, t / eps, L * theta / TWO_PI])

    jac_const = np.array([[1.0, 0.0, 0.0],
                          [0.0, 0.0, 1.0 / eps],
                          [0.0, L / TWO_PI, 0.0]])

    def jac(x: np.ndarray) -> np.ndarray:
        return jac_const.copy()

    def inv(x: np.ndarray) -> np.ndarray:
        rp, thetap, tp = x
        return np.array([rp + r_in - eps, TWO_PI * tp / L, eps * thetap])

    return CoordinateMap(
        name=f"gluing(L={L:g}, eps={eps:g}, delta={delta:g})",
        forward=forward, jacobian=jac, inverse=inv,
        domain="source annulus Y~", codomain="target collar Y")


def make_gluing_map_inverse(L: float, eps: float, delta: float) -> CoordinateMap:
    fwd = make_gluing_map(L, eps, delta)
    r_in = L / TWO_PI

    jac_const = np.array([[1.0, 0.0, 0.0],
                          [0.0, 0.0, TWO_PI / L],
                          [0.0, eps, 0.0]])

    def jac(x: np.ndarray) -> np.ndarray:
        return jac_const.copy()

    return CoordinateMap(name=fwd.name + "^-1", forward=fwd.inverse,
                         jacobian=jac, inverse=fwd.forward,
                         domain=fwd.codomain, codomain=fwd.domain)


def pullback_metric(map_: CoordinateMap, g: MetricField, point) -> np.ndarray:
    """Pullback J^T g(map(x)) J; falls back to a finite-difference Jacobian
    when the map carries no analytic one."""
    x = _point(point)
    if map_.jacobian is not None:
        jac = np.asarray(map_.jacobian(x), dtype=float)
    else:
        jac = numerical_jacobian(map_.forward, x)
    if abs(np.linalg.det(jac)) < 1e-12:
        raise DegenerateMapError(
            f"map {map_.name} has singular Jacobian at {x.tolist()}")
    tensor = jac.T @ np.asarray(g(map_.forward(x)), dtype=float) @ jac
    return 0.5 * (tensor + tensor.T)


def cutoff_phi(point, eps: float, delta: float,
               profile: SmoothProfile = DEFAULT_PROFILE) -> float:
    """Radial cutoff: 1 on the filled torus (r <= eps), 0 outside the collar
    (r >= eps + delta), ramping through exactly 1/2 at r = eps + delta/2."""
    r = _point(point)[0]
    if r <= eps:
        return 1.0
    if r >= eps + delta:
        return 0.0
    return 1.0 - profile.value((r - eps) / delta)


def blended_metric(point, g_inner: MetricField, g_outer: MetricField,
                   phi: float) -> np.ndarray:
    """Convex combination phi*g_inner + (1-phi)*g_outer; positive-definite
    whenever both inputs are."""
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"phi must lie in [0,1], got {phi}")
    x = _point(point)
    return phi * np.asarray(g_inner(x), dtype=float) \
        + (1.0 - phi) * np.asarray(g_outer(x), dtype=float)


def make_blended_field(g_inner: MetricField, g_outer: MetricField,
                       eps: float, delta: float,
                       profile: SmoothProfile = DEFAULT_PROFILE) -> MetricField:
    """Three-case surgered metric by radius: inner for r <= eps, outer for
    r >= eps + delta, cutoff blend across the collar."""

    def field(point) -> np.ndarray:
        x = _point(point)
        r = x[0]
        if r <= eps:
            return np.asarray(g_inner(x), dtype=float)
        if r >= eps + delta:
            return np.asarray(g_outer(x), dtype=float)
        return blended_metric(x, g_inner, g_outer,
                              cutoff_phi(x, eps, delta, profile))

    return field


def _leading_minors(tensor: np.ndarray) -> tuple[float, float, float]:
    a = tensor
    m1 = a[0, 0]
    m2 = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    m3 = (a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
          - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
          + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0]))
    return m1, m2, m3


def positive_definite_check(tensor, tol: float = 1e-12) -> bool:
    """Sylvester criterion: all leading principal minors exceed tol."""
    a = np.asarray(tensor, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 tensor, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.T))) > 1e-9 * scale:
        raise ValueError("tensor is not symmetric")
    m1, m2, m3 = _leading_minors(a)
    return m1 > tol and m2 > tol and m3 > tol


def min_pivot(tensor: np.ndarray) -> float:
    """Smallest LDL pivot (successive minor ratio); a cheap proxy for the
    smallest eigenvalue when ordering positivity campaigns."""
    m1, m2, m3 = _leading_minors(np.asarray(tensor, dtype=float))
    if m1 <= 0.0:
        return m1
    if m2 <= 0.0:
        return m2 / m1
    return min(m1, m2 / m1, m3 / m2)


@dataclass(frozen=True)
class VolumeResult:
    volume: float
    resolution: tuple[int, int, int]


def chart_volume(g: MetricField, domain, resolution) -> VolumeResult:
    """Volume integral of sqrt(det g) over a coordinate box by composite
    midpoint quadrature (second order).

    domain is three (lo, hi) pairs; resolution an int or per-axis triple.
    A non-positive-definite sample aborts with the offending point.
    """
    box = [(float(lo), float(hi)) for lo, hi in domain]
    if len(box) != 3 or any(hi <= lo for lo, hi in box):
        raise ValueError(f"domain must be three nonempty intervals, got {domain}")
    if isinstance(resolution, int):
        res = (resolution,) * 3
    else:
        res = tuple(int(n) for n in resolution)
    if len(res) != 3 or any(n < 1 for n in res):
        raise ValueError(f"resolution must be positive, got {resolution}")
    steps = [(hi - lo) / n for (lo, hi), n in zip(box, res)]
    cell = steps[0] * steps[1] * steps[2]
    axes = [
        [lo + (i + 0.5) * h for i in range(n)]
        for (lo, _), h, n in zip(box, steps, res)
    ]
    values = []
    point = np.empty(3)
    for x0 in axes[0]:
        point[0] = x0
        for x1 in axes[1]:
            point[1] = x1
            for x2 in axes[2]:
                point[2] = x2
                tensor = np.asarray(g(point), dtype=float)
                m1, m2, m3 = _leading_minors(tensor)
                if m1 <= 1e-12 or m2 <= 1e-12 or m3 <= 1e-12:
                    raise IntegrationError(
                        f"metric not positive-definite at {point.tolist()}")
                values.append(math.sqrt(m3))
    return VolumeResult(volume=math.fsum(values) * cell, resolution=res)


def curve_length(g: MetricField, samples) -> float:
    """Polyline length: sum of sqrt(dx^T g(midpoint) dx) over segments."""
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 2:
        raise ValueError(f"need at least two 3d sample points, got shape {pts.shape}")
    total = []
    for i in range(len(pts) - 1):
        dx = pts[i + 1] - pts[i]
        mid = 0.5 * (pts[i + 1] + pts[i])
        q = float(dx @ np.asarray(g(mid), dtype=float) @ dx)
        total.append(math.sqrt(max(q, 0.0)))
    return math.fsum(total)


def substitution_length_bound(eps: float, delta: float,
                              n_twists: int, g: int) -> float:
    """Detour cost of rerouting a loop around all surgery tubes:
    2*pi*(eps+delta)*(n_twists + 2g).  With delta = eps/4 this equals
    (5*pi/2)*(n_twists + 2g)*eps."""
    if eps <= 0 or delta <= 0:
        raise ValueError(f"eps and delta must be positive, got {eps}, {delta}")
    if n_twists < 0 or g < 0:
        raise ValueError(f"counts must be nonnegative, got {n_twists}, {g}")
    return TWO_PI * (eps + delta) * (n_twists + 2 * g)


def inner_collar_field(L: float, eps: float, delta: float,
                       profile: SmoothProfile = DEFAULT_PROFILE,
                       half_width: float | None = None) -> MetricField:
    """Metric induced on the collar by the filled solid torus: the flat
    tube metric pulled back through the inverse twist, then the inverse
    gluing."""
    beta_inv = make_beta_twist_inverse(eps, profile, half_width)
    glue_inv = make_gluing_map_inverse(L, eps, delta)

    def g_tilde(x_tilde) -> np.ndarray:
        return pullback_metric(beta_inv, euclidean_torus_metric, x_tilde)

    def field(point) -> np.ndarray:
        return pullback_metric(glue_inv, g_tilde, point)

    return field


@dataclass(frozen=True)
class SurgeryVerification:
    chart: str
    samples: int
    min_eigenvalue_proxy: float
    interface_max_mismatch: float
    volume: float
    resolution: tuple[int, int, int]

    def to_json_dict(self) -> dict:
        return {
            "chart": self.chart,
            "samples": self.samples,
            "minEigenvalueProxy": self.min_eigenvalue_proxy,
            "interfaceMaxMismatch": self.interface_max_mismatch,
            "volume": self.volume,
            "resolution": list(self.resolution),
        }


def _relative_mismatch(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-300)
    return float(np.max(np.abs(a - b))) / scale


def verify_surgery_charts(L: float, eps: float, delta: float | None = None,
                          profile: SmoothProfile = DEFAULT_PROFILE,
                          samples: int = 10_000, resolution: int = 24,
                          seed: int = 0,
                          half_width: float | None = None) -> SurgeryVerification:
    """Regularity campaign over the collar Y = {eps <= r <= eps+delta}:
    positive-definiteness of the blended metric at random samples, value
    continuity across both collar interfaces, and the collar volume.
    """
    if delta is None:
        delta = eps / 4.0
    if L <= 0 or eps <= 0 or delta <= 0:
        raise ValueError(f"L, eps, delta must be positive: {L}, {eps}, {delta}")
    inner = inner_collar_field(L, eps, delta, profile, half_width)
    outer = euclidean_torus_metric
    blended = make_blended_field(inner, outer, eps, delta, profile)

    rng = np.random.default_rng(seed)
    proxy = math.inf
    for _ in range(samples):
        point = np.array([
            rng.uniform(eps, eps + delta),
            rng.uniform(0.0, TWO_PI),
            rng.uniform(0.0, L),
        ])
        tensor = blended(point)
        piv = min_pivot(tensor)
        if piv < proxy:
            proxy = piv
        if piv <= 1e-12:
            raise IntegrationError(
                f"blended metric lost positive-definiteness at {point.tolist()}")

    # value continuity across r = eps and r = eps + delta
    h = 1e-7 * delta
    mismatch = 0.0
    for _ in range(64):
        theta = rng.uniform(0.0, TWO_PI)
        t = rng.uniform(0.0, L)
        for r0 in (eps, eps + delta):
            lo = blended(np.array([r0 - h, theta, t]))
            hi = blended(np.array([r0 + h, theta, t]))
            mismatch = max(mismatch, _relative_mismatch(lo, hi))

    vol = chart_volume(blended, ((eps, eps + delta), (0.0, TWO_PI), (0.0, L)),
                       resolution)
    return SurgeryVerification(
        chart=f"collar Y: L={L:g}, eps={eps:g}, delta={delta:g}, {profile.name}",
        samples=samples,
        min_eigenvalue_proxy=proxy,
        interface_max_mismatch=mismatch,
        volume=vol.volume,
        resolution=vol.resolution,
    )
