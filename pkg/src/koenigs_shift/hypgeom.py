"""Closed-form hyperbolic geometry on the disc, the right half-plane and sectors.

Points are plain Python complex numbers. The Denjoy-Wolff point ``tau`` is a
unit complex number and defaults to 1; other boundary points are handled by
rotating into that normalization.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    AmplitudeTooSmall,
    BadAngle,
    NonInterior,
    NonPositiveRadius,
    OutOfSector,
    Singular,
)

# below this 1 - rho is treated as zero and the distance as unbounded
_UNDERFLOW = 1e-300


def boundary_point(angle: float) -> complex:
    """The point e^{i angle} of the unit circle."""
    return cmath.exp(1j * angle)


def _check_disc(z: complex) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)) or abs(z) >= 1.0:
        raise NonInterior(f"{z!r} is not in the open unit disc")


def _check_halfplane(w: complex) -> None:
    if not (math.isfinite(w.real) and math.isfinite(w.imag)) or w.real <= 0.0:
        raise NonInterior(f"{w!r} is not in the right half-plane")


def _log_ratio(one_minus_sq: float, rho: float) -> float:
    # 1/2 log((1+rho)/(1-rho)), with 1 - rho recovered from 1 - rho^2 to
    # keep full relative accuracy close to the boundary
    one_minus = one_minus_sq / (1.0 + rho)
    if one_minus < _UNDERFLOW:
        return math.inf
    return 0.5 * math.log((1.0 + rho) / one_minus)


def disc_distance(z: complex, w: complex) -> float:
    """Poincare distance k_D(z, w) on the unit disc (curvature -4 normalization)."""
    z, w = complex(z), complex(w)
    _check_disc(z)
    _check_disc(w)
    if z == w:
        return 0.0
    denom = abs(1.0 - w.conjugate() * z)
    rho = abs(w - z) / denom
    one_minus_sq = (1.0 - abs(z) ** 2) * (1.0 - abs(w) ** 2) / denom**2
    return _log_ratio(one_minus_sq, rho)


def halfplane_distance(z: complex, w: complex) -> float:
    """Hyperbolic distance on Re w > 0, pulled back from the disc by Cayley."""
    z, w = complex(z), complex(w)
    _check_halfplane(z)
    _check_halfplane(w)
    if z == w:
        return 0.0
    denom = abs(z + w.conjugate())
    rho = abs(z - w) / denom
    one_minus_sq = 4.0 * (z.real / denom) * (w.real / denom)
    return _log_ratio(one_minus_sq, rho)


def cayley(tau: complex, z: complex) -> complex:
    """C_tau(z) = (tau + z) / (tau - z), mapping the disc onto Re w > 0."""
    tau, z = complex(tau), complex(z)
    if z == tau:
        raise Singular("Cayley transform is singular at tau")
    _check_disc(z)
    w = (tau + z) / (tau - z)
    _check_halfplane(w)
    return w


def cayley_inverse(tau: complex, w: complex) -> complex:
    tau, w = complex(tau), complex(w)
    _check_halfplane(w)
    return tau * (w - 1.0) / (w + 1.0)


def horocycle_contains(tau: complex, radius: float, z: complex) -> bool:
    """Strict membership |tau - z|^2 < R (1 - |z|^2)."""
    if radius <= 0:
        raise NonPositiveRadius(f"horocycle radius must be positive, got {radius}")
    z = complex(z)
    return abs(tau - z) ** 2 < radius * (1.0 - abs(z) ** 2)


def stolz_contains(tau: complex, amplitude: float, z: complex) -> bool:
    """Strict membership |tau - z| < R (1 - |z|), for amplitude R > 1."""
    if amplitude <= 1:
        raise AmplitudeTooSmall(f"Stolz amplitude must exceed 1, got {amplitude}")
    z = complex(z)
    return abs(tau - z) < amplitude * (1.0 - abs(z))


@dataclass(frozen=True)
class SectorParams:
    """The symmetric sector |arg w| < half_angle translated to the vertex r0.

    half_angle = pi/2 with vertex 0 is the right half-plane itself.
    """

    half_angle: float
    vertex: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.half_angle <= math.pi / 2:
            raise BadAngle(f"half angle must lie in (0, pi/2], got {self.half_angle}")
        if self.vertex < 0.0:
            raise OutOfSector(f"vertex must be nonnegative, got {self.vertex}")


def sector_distance(params: SectorParams, s1: float, s2: float) -> float:
    """Distance between two real points of r0 + W, W the sector of half-angle beta0.

    Uses the power map w -> w^(pi / (2 beta0)) onto the half-plane, which
    gives (pi / (4 beta0)) log((s2 - r0) / (s1 - r0)).
    """
    r0 = params.vertex
    if s1 <= r0 or s2 <= r0:
        raise OutOfSector(f"points must exceed the vertex {r0}")
    coef = math.pi / (4.0 * params.half_angle)
    return coef * abs(math.log((s2 - r0) / (s1 - r0)))


def quasi_geodesic_constants(half_angle: float) -> tuple[float, float]:
    """(A, B) making the real half-line an (A, B)-quasi-geodesic.

    A = pi / (2 beta0), B = pi log 2 / (4 beta0).
    """
    if not 0.0 < half_angle < math.pi / 2:
        raise BadAngle(f"half angle must lie in (0, pi/2), got {half_angle}")
    a = math.pi / (2.0 * half_angle)
    return a, a * math.log(2.0) / 2.0


def diameter_projection(w: complex) -> float:
    """Nearest point of the geodesic (0, +inf) to w in the half-plane: |w|."""
    w = complex(w)
    _check_halfplane(w)
    return abs(w)


def disc_automorphism(a: complex, angle: float = 0.0):
    """z -> e^{i angle} (z - a) / (1 - conj(a) z), for |a| < 1."""
    _check_disc(a)
    rot = cmath.exp(1j * angle)

    def phi(z: complex) -> complex:
        return rot * (z - a) / (1.0 - a.conjugate() * z)

    return phi
