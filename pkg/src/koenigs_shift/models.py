"""Closed-form parabolic semigroups with Denjoy-Wolff point 1.

Each model is described by its Koenigs map in half-plane coordinates,
H(w) = h(C^{-1}(w)) with C the Cayley transform, so that the conjugated
semigroup psi_t = C o phi_t o C^{-1} is psi_t(w) = H^{-1}(H(w) + it). Speeds
and distances are evaluated on the half-plane side, where orbits stay well
conditioned for large t; disc points are produced only on request.
"""
from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import domains as dm
from . import hypgeom as hg
from .errors import BranchViolation, OmegaNotInHalfPlane, OutOfDomain, RayNotContained

TAU = 1.0 + 0.0j


@dataclass(frozen=True)
class HalfPlaneTranslation:
    """Omega = H and h = C, so psi_t(w) = w + it."""

    @property
    def omega(self):
        return dm.HalfPlane()

    def forward(self, w):
        return w

    def backward(self, zeta):
        return zeta


@dataclass(frozen=True)
class VerticalSectorModel:
    """h(z) = p + i e^{-i alpha/2} C(z)^{alpha/pi}, onto p + {pi/2 - alpha < arg < pi/2}."""

    vertex: complex = 1.0 + 0.0j
    aperture: float = math.pi / 6

    def __post_init__(self):
        object.__setattr__(self, "vertex", complex(self.vertex))
        if not 0.0 < self.aperture < math.pi / 2:
            raise ValueError(f"aperture must lie in (0, pi/2), got {self.aperture}")

    @property
    def omega(self):
        return dm.VerticalSector(self.vertex, self.aperture)

    def forward(self, w):
        return self.vertex + 1j * cmath.exp(-0.5j * self.aperture) * w ** (self.aperture / math.pi)

    def backward(self, zeta):
        base = -1j * cmath.exp(0.5j * self.aperture) * (zeta - self.vertex)
        if base == 0 or abs(cmath.phase(base)) >= self.aperture / 2:
            raise BranchViolation(f"{zeta!r} leaves the principal sector of the power map")
        w = base ** (math.pi / self.aperture)
        if w.real <= 0:
            raise BranchViolation(f"power map image {w!r} left the half-plane")
        return w


@dataclass(frozen=True)
class SlitPlaneModel:
    """h(z) = i C(z)^2 onto the plane minus {iy : y <= 0}."""

    @property
    def omega(self):
        return dm.SlitPlane()

    def forward(self, w):
        return 1j * w * w

    def backward(self, zeta):
        w = cmath.sqrt(-1j * zeta)
        if w.real <= 0:
            raise BranchViolation(f"square root of {-1j * zeta!r} is not in the half-plane")
        return w


ModelSemigroup = Union[HalfPlaneTranslation, VerticalSectorModel, SlitPlaneModel]


class StepKind(str, enum.Enum):
    PARABOLIC_POSITIVE = "ParabolicPositiveStep"
    PARABOLIC_ZERO = "ParabolicZeroStep"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class SemigroupClass:
    kind: StepKind
    omega_prime: str
    spectral_value: Optional[float] = None


def semigroup_class(m: ModelSemigroup) -> SemigroupClass:
    """Type of the semigroup, read off the union of all Omega - it."""
    if isinstance(m, SlitPlaneModel):
        return SemigroupClass(StepKind.PARABOLIC_ZERO, "WholePlane")
    # the sector sweeps out Re z > Re p, a half-plane after translation
    return SemigroupClass(StepKind.PARABOLIC_POSITIVE, "HalfPlane")


def _in_omega(m, zeta):
    return bool(dm.contains(m.omega, complex(zeta)))


def koenigs(m: ModelSemigroup, z: complex) -> complex:
    """h(z) for z in the unit disc."""
    w = hg.cayley(TAU, z)
    return complex(m.forward(w))


def koenigs_inverse(m: ModelSemigroup, zeta: complex) -> complex:
    """h^{-1}(zeta) for zeta in Omega."""
    zeta = complex(zeta)
    if not _in_omega(m, zeta):
        raise OutOfDomain(f"{zeta!r} is not in the Koenigs domain")
    return hg.cayley_inverse(TAU, m.backward(zeta))


def psi(m: ModelSemigroup, w: complex, t: float) -> complex:
    """The conjugated semigroup C o phi_t o C^{-1} on the right half-plane."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    w = complex(w)
    if t == 0:
        return w
    return complex(m.backward(m.forward(w) + 1j * t))


def orbit(m: ModelSemigroup, z: complex, t: float) -> complex:
    """phi_t(z) = h^{-1}(h(z) + it)."""
    if t == 0:
        hg.cayley(TAU, z)  # validates z
        return complex(z)
    return hg.cayley_inverse(TAU, psi(m, hg.cayley(TAU, z), t))


@dataclass(frozen=True)
class SpeedSample:
    t: float
    v: float
    v_orth: float
    v_tang: float
    rho: float
    theta: float


def speeds(m: ModelSemigroup, t: float) -> SpeedSample:
    """Total, orthogonal and tangential speed of the orbit of 0 at time t.

    With psi_t(1) = rho e^{i theta}: v = k_H(1, psi_t(1)), v^O = k_H(1, rho)
    and v^T = k_H(psi_t(1), rho), rho being the projection onto the diameter.
    """
    t = float(t)
    w = psi(m, 1.0, t)
    rho = hg.diameter_projection(w)
    v = hg.halfplane_distance(1.0, w)
    v_orth = hg.halfplane_distance(1.0, rho)
    v_tang = hg.halfplane_distance(w, rho)
    return SpeedSample(t, v, v_orth, v_tang, rho, cmath.phase(w))


def tangential_proxy(sample: SpeedSample) -> float:
    """1/2 log(1 / cos theta), equal to v^T up to a bounded error."""
    return 0.5 * math.log(1.0 / math.cos(sample.theta))


def speed_gap(m: ModelSemigroup, t_grid) -> float:
    """max over the grid of |v^O - 1/2 log t| + |v^T - 1/2 log t|."""
    t_grid = [float(t) for t in t_grid]
    if any(t < 1 for t in t_grid) or any(b < a for a, b in zip(t_grid, t_grid[1:])):
        raise ValueError("t grid must be increasing inside [1, inf)")
    gap = 0.0
    for t in t_grid:
        s = speeds(m, t)
        half = 0.5 * math.log(t)
        gap = max(gap, abs(s.v_orth - half) + abs(s.v_tang - half))
    return gap


def geodesic_gap(m: ModelSemigroup, r: float) -> float:
    """k_D(h^{-1}(r), (r - 1)/(r + 1)), evaluated as k_H(H^{-1}(r), r)."""
    r = float(r)
    if not _in_omega(m, r):
        raise RayNotContained(f"real point {r} is not in the Koenigs domain")
    if r <= 0:
        raise OutOfDomain("r must be positive")
    return hg.halfplane_distance(m.backward(complex(r)), complex(r))


@dataclass(frozen=True)
class StepEstimate:
    value: float
    monotone: bool
    strict_grid: bool


def hyperbolic_step(m: ModelSemigroup, z: complex, t_grid) -> StepEstimate:
    """k_D(phi_t(z), phi_{t+1}(z)) at the last grid time, with diagnostics.

    The sequence is nonincreasing in t by the Schwarz-Pick lemma; ``monotone``
    reports whether the computed values respect that.
    """
    w = hg.cayley(TAU, z)
    t_grid = [float(t) for t in t_grid]
    values = [hg.halfplane_distance(psi(m, w, t), psi(m, w, t + 1.0)) for t in t_grid]
    monotone = all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    strict = all(b > a for a, b in zip(t_grid, t_grid[1:]))
    return StepEstimate(values[-1], monotone, strict)


def dilation_estimate(m: ModelSemigroup, radial_grid) -> float:
    """Tail value of k_D(0, w) - k_D(0, C^{-1}(h(w))) along w = r in (0, 1).

    Returns inf once the value exceeds 1e3. Each term equals
    1/2 log s - k_H(1, H(s)) with s = (1 + r)/(1 - r).
    """
    if isinstance(m, SlitPlaneModel):
        raise OmegaNotInHalfPlane("the slit plane is not contained in the half-plane")
    radial_grid = [float(r) for r in radial_grid]
    if any(not 0 < r < 1 for r in radial_grid):
        raise ValueError("radii must lie in (0, 1)")
    if max(radial_grid) < 0.9:
        warnings.warn("radial grid does not approach 1", RuntimeWarning, stacklevel=2)
    r = radial_grid[-1]
    s = (1.0 + r) / (1.0 - r)
    value = 0.5 * math.log(s) - hg.halfplane_distance(1.0, m.forward(complex(s)))
    return math.inf if value > 1e3 else value


def real_part_profile(m: ModelSemigroup, t_grid) -> np.ndarray:
    """Re psi_t(1) on the grid: bounded exactly for finite-shift semigroups."""
    return np.array([psi(m, 1.0, float(t)).real for t in t_grid])


def injective_on_samples(m: ModelSemigroup, n: int = 1000, seed: int = 0) -> bool:
    """Round-trip check h^{-1}(h(z)) = z on random disc points."""
    rng = np.random.default_rng(seed)
    rad = 0.99 * np.sqrt(rng.random(n))
    ang = rng.uniform(-math.pi, math.pi, n)
    for z in rad * np.exp(1j * ang):
        if abs(koenigs_inverse(m, koenigs(m, z)) - z) > 1e-10:
            return False
    return True
