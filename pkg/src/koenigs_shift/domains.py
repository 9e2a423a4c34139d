"""Koenigs domains that are starlike at infinity in the +i direction.

Every domain answers membership queries on scalars or numpy arrays. On top
of that this module computes the starlike-ification heights b(x), inner
tangent (cone) certificates, the arc profile eta(r) of Omega n {|z| = r}
through the positive real axis, and the left/right boundary distances used
to classify non-tangential convergence.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    BadAngle,
    BudgetExceeded,
    NotFound,
    PointNotInDomain,
    RadiusTooSmall,
    RayNotContained,
)

MARCH_STEP = math.pi / 256
TWO_PI = 2.0 * math.pi


class StepShapeWarning(UserWarning):
    """a_k / b_k is not decreasing on the supplied steps."""


def _as_xy(z):
    z = np.asarray(z, dtype=complex)
    return z.real, z.imag


def _scalar_or_array(result, z):
    if np.ndim(z) == 0:
        return bool(result)
    return result


# ---------------------------------------------------------------- variants


@dataclass(frozen=True)
class HalfPlane:
    """Re z > 0."""

    def member(self, x, y):
        return x > 0

    def depth(self, x):
        return np.where(np.asarray(x) > 0, np.inf, -np.inf)

    def ray_radius(self, window):
        return 0.0

    def cone_radius(self, beta, window):
        return 0.0

    def side_distances(self, q, re_p):
        return math.inf, q.real


@dataclass(frozen=True)
class SlitPlane:
    """The plane minus the closed ray {iy : y <= 0}."""

    def member(self, x, y):
        return ~((x == 0) & (y <= 0))

    def depth(self, x):
        return np.full(np.shape(x), np.inf)

    def ray_radius(self, window):
        return 0.0

    def cone_radius(self, beta, window):
        return 0.0

    def side_distances(self, q, re_p):
        dist = abs(q - 1j * min(q.imag, 0.0))
        right = dist if re_p <= 0 else math.inf
        left = dist if re_p >= 0 else math.inf
        return right, left


@dataclass(frozen=True)
class VerticalSector:
    """vertex + {pi/2 - aperture < arg < pi/2}: one vertical side, one slanted side."""

    vertex: complex
    aperture: float

    def __post_init__(self):
        object.__setattr__(self, "vertex", complex(self.vertex))
        if not 0.0 < self.aperture < math.pi / 2:
            raise ValueError(f"aperture must lie in (0, pi/2), got {self.aperture}")

    def member(self, x, y):
        dx, dy = x - self.vertex.real, y - self.vertex.imag
        arg = np.arctan2(dy, dx)
        return (dx > 0) & (arg > math.pi / 2 - self.aperture) & (arg < math.pi / 2)

    def depth(self, x):
        # only meaningful for subgraph domains; a sector never contains a real ray
        return np.full(np.shape(x), -np.inf)

    def ray_radius(self, window):
        return math.inf

    def cone_radius(self, beta, window):
        raise NotFound("a vertical sector contains no real half-line", refuted=True)

    def side_distances(self, q, re_p):
        v = self.vertex
        up = _dist_vertical_ray(q, v.real, v.imag, upward=True)
        u = complex(math.sin(self.aperture), math.cos(self.aperture))
        split = (re_p - v.real) / u.real
        left = min(up, _dist_param_segment(q, v, u, 0.0, split))
        right = _dist_param_segment(q, v, u, split, math.inf)
        return right, left


@dataclass(frozen=True)
class StepDomain:
    """H minus the closed boxes S_k = [a_{k-1}, a_k] x (-inf, -b_k], k = 1..K.

    ``a`` holds a_0 = 0 < a_1 < ... < a_K and ``b`` holds b_1 <= ... <= b_K.
    Beyond a_K the domain is unobstructed; callers model the continuation
    of the staircase through a tail model.
    """

    a: tuple
    b: tuple
    _a: np.ndarray = field(init=False, repr=False, compare=False)
    _b: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if len(b) < 1 or len(a) != len(b) + 1:
            raise ValueError("need len(a) == len(b) + 1 >= 2")
        if a[0] != 0.0:
            raise ValueError("a must start at 0")
        if not all(x < y for x, y in zip(a, a[1:])):
            raise ValueError("a must be strictly increasing")
        if not all(math.isfinite(v) and v > 0 for v in b):
            raise ValueError("b must be positive and finite")
        if not all(x <= y for x, y in zip(b, b[1:])):
            raise ValueError("b must be nondecreasing")
        ratios = [x / y for x, y in zip(a[1:], b)]
        if any(r2 > r1 for r1, r2 in zip(ratios, ratios[1:])):
            warnings.warn("a_k / b_k is not decreasing", StepShapeWarning, stacklevel=3)
        object.__setattr__(self, "_a", np.array(a))
        object.__setattr__(self, "_b", np.array(b))

    @property
    def steps(self) -> int:
        return len(self.b)

    @property
    def extent(self) -> float:
        return self.a[-1]

    def depth(self, x):
        # column k covers [a_{k-1}, a_k]; at a shared edge the shallower
        # (earlier) step wins since both boxes are closed
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self._a, x, side="left")
        out = np.full(x.shape, np.inf)
        inside = (idx >= 1) & (idx <= self.steps)
        out[inside] = self._b[idx[inside] - 1]
        out[x <= 0] = -np.inf
        return out

    def member(self, x, y):
        return (x > 0) & (y > -self.depth(x))

    def arc_member(self, r, angles):
        """member() on r e^{i angles}, exact enough to resolve tangency with a step.

        -y < b is rewritten as r - b < r (1 + sin t) = 2 r sin^2((t + pi/2) / 2),
        which keeps full precision near t = -pi/2 where cos would round to 1.
        """
        x = r * np.cos(angles)
        lift = 2.0 * r * np.sin(0.5 * (angles + 0.5 * math.pi)) ** 2
        return (x > 0) & (r - self.depth(x) < lift)

    def ray_radius(self, window):
        return 0.0

    def cone_radius(self, beta, window):
        tb = math.tan(beta)
        hits = [ak for ak, bk in zip(self.a[1:], self.b) if bk < ak * tb]
        return max(hits) / math.cos(beta) if hits else 0.0

    def side_distances(self, q, re_p):
        a, b = self.a, self.b
        right, left = math.inf, math.inf
        # imaginary axis above the first step
        left = min(left, _dist_vertical_ray(q, 0.0, -b[0], upward=True))
        for k in range(1, self.steps + 1):
            lo, hi, y = a[k - 1], a[k], -b[k - 1]
            if lo <= re_p:
                left = min(left, _dist_horizontal(q, lo, min(hi, re_p), y))
            if hi >= re_p:
                right = min(right, _dist_horizontal(q, max(lo, re_p), hi, y))
            if k < self.steps:
                d = _dist_vertical(q, hi, -b[k], y)
            else:
                d = _dist_vertical_ray(q, hi, y, upward=False)
            if hi <= re_p:
                left = min(left, d)
            if hi >= re_p:
                right = min(right, d)
        return right, left


@dataclass(frozen=True)
class XLogEps:
    """g(x) = x |log x|^(1 + eps)."""

    eps: float

    def __post_init__(self):
        if not (self.eps >= 0 and math.isfinite(self.eps)):
            raise ValueError(f"eps must be finite and >= 0, got {self.eps}")

    def g(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return x * np.abs(np.log(x)) ** (1.0 + self.eps)

    g0 = 0.0

    def running_inf(self, x):
        x = np.asarray(x, dtype=float)
        out = self.g(x)
        low = x < 1.0
        for i in np.flatnonzero(low):
            grid = np.geomspace(x[i], 1.0, 10_000)
            out[i] = min(float(self.g(grid).min()), 0.0)
        return out

    def nonpositive_points(self):
        return [1.0]

    def cone_radius(self, beta, window):
        level = math.tan(beta) ** (1.0 / (1.0 + self.eps))
        return math.exp(level) / math.cos(beta)


@dataclass(frozen=True)
class Power:
    """g(x) = c x^p."""

    p: float
    c: float = 1.0

    def __post_init__(self):
        if not (self.p > 0 and self.c > 0):
            raise ValueError("power family needs p > 0 and c > 0")

    def g(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(invalid="ignore"):
            return self.c * x**self.p

    g0 = 0.0

    def running_inf(self, x):
        return self.g(x)

    def nonpositive_points(self):
        return []

    def cone_radius(self, beta, window):
        tb = math.tan(beta)
        if self.p > 1:
            return (tb / self.c) ** (1.0 / (self.p - 1.0)) / math.cos(beta)
        if self.p == 1 and self.c >= tb:
            return 0.0
        raise NotFound("c x^p / x never stays above tan(beta)", refuted=True)


@dataclass(frozen=True)
class Table:
    """Piecewise-linear g through (x, g) knots, constant before the first knot
    and continued with ``slope`` after the last one."""

    knots: tuple
    slope: float = 0.0
    _x: np.ndarray = field(init=False, repr=False, compare=False)
    _g: np.ndarray = field(init=False, repr=False, compare=False)
    _suffix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        knots = tuple((float(x), float(g)) for x, g in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2:
            raise ValueError("a table needs at least two knots")
        xs = np.array([k[0] for k in knots])
        gs = np.array([k[1] for k in knots])
        if not np.all(np.isfinite(gs)) or not np.all(np.isfinite(xs)):
            raise ValueError("knots must be finite")
        if np.any(np.diff(xs) <= 0) or xs[0] <= 0:
            raise ValueError("knot abscissae must be positive and strictly increasing")
        object.__setattr__(self, "_x", xs)
        object.__setattr__(self, "_g", gs)
        suffix = np.append(np.minimum.accumulate(gs[::-1])[::-1], np.inf)
        object.__setattr__(self, "_suffix", suffix)

    @property
    def g0(self):
        return float(self._g[0])

    def g(self, x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, self._x, self._g)
        tail = x > self._x[-1]
        return np.where(tail, self._g[-1] + self.slope * (x - self._x[-1]), out)

    def running_inf(self, x):
        x = np.asarray(x, dtype=float)
        if self.slope < 0:
            return np.full(x.shape, -np.inf)
        idx = np.searchsorted(self._x, x, side="right")
        return np.minimum(self.g(x), self._suffix[idx])

    def nonpositive_points(self):
        grid = np.union1d(self._x, np.linspace(self._x[0], self._x[-1], 4097))
        bad = grid[self.g(grid) <= 0]
        pts = list(bad)
        if self.g0 <= 0:
            pts.append(self._x[0])
        if self.slope < 0:
            pts.append(math.inf)
        return pts

    def cone_radius(self, beta, window):
        return None


GraphFamily = Union[XLogEps, Power, Table]


@dataclass(frozen=True)
class GraphDomain:
    """{x + iy : x > 0, y > -g(x)}."""

    family: GraphFamily

    def g(self, x):
        return self.family.g(x)

    def depth(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, self.family.g(np.where(x > 0, x, 1.0)), -np.inf)

    def member(self, x, y):
        return (x > 0) & (y > -self.depth(x))

    def ray_radius(self, window):
        pts = [p for p in self.family.nonpositive_points() if p <= window or p == math.inf]
        return max(pts, default=0.0)

    def cone_radius(self, beta, window):
        return self.family.cone_radius(beta, window)

    def side_distances(self, q, re_p):
        g0 = self.family.g0
        axis = math.hypot(q.real, max(0.0, -g0 - q.imag))
        left = min(axis, self._curve_distance(q, re_p, left=True))
        right = self._curve_distance(q, re_p, left=False)
        return right, left

    def _curve_distance(self, q, re_p, left):
        def dist(x):
            return math.hypot(x - q.real, -float(self.g(x)) - q.imag)

        bound = dist(re_p)
        if left:
            lo, hi = max(re_p - bound, 0.0), re_p
        else:
            lo, hi = re_p, re_p + bound
        if hi <= lo:
            return bound
        xs = np.linspace(lo, hi, 2049)
        xs = xs[xs > 0]
        ds = np.hypot(xs - q.real, -self.g(xs) - q.imag)
        i = int(np.argmin(ds))
        a, b = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
        best = float(ds[i])
        if b > a:
            res = minimize_scalar(dist, bounds=(a, b), method="bounded",
                                  options={"xatol": 1e-12})
            best = min(best, float(res.fun))
        return min(best, bound)


DomainSpec = Union[HalfPlane, SlitPlane, VerticalSector, StepDomain, GraphDomain]


@dataclass(frozen=True)
class HeightDomain:
    """{x + iy : x > 0, y > -b(x)} for the running-infimum height b of a
    subgraph domain, i.e. the points of Omega that stay in Omega under all
    positive real translations."""

    base: Union[StepDomain, GraphDomain]

    def depth(self, x):
        x = np.asarray(x, dtype=float)
        pos = np.where(x > 0, x, 1.0)
        return np.where(x > 0, _running_inf(self.base, pos), -np.inf)

    def member(self, x, y):
        return (x > 0) & (y > -self.depth(x))


# ------------------------------------------------------- boundary geometry


def _dist_horizontal(q, x0, x1, y):
    if x1 < x0:
        return math.inf
    x = min(max(q.real, x0), x1)
    return math.hypot(q.real - x, q.imag - y)


def _dist_vertical(q, x, y0, y1):
    lo, hi = min(y0, y1), max(y0, y1)
    y = min(max(q.imag, lo), hi)
    return math.hypot(q.real - x, q.imag - y)


def _dist_vertical_ray(q, x, y0, upward):
    dy = max(0.0, y0 - q.imag) if upward else max(0.0, q.imag - y0)
    return math.hypot(q.real - x, dy)


def _dist_param_segment(q, origin, unit, s0, s1):
    if s1 < s0:
        return math.inf
    s = (q - origin).real * unit.real + (q - origin).imag * unit.imag
    s = min(max(s, s0), s1)
    return abs(q - (origin + s * unit))


# ------------------------------------------------------------- operations


def contains(d: DomainSpec, z):
    """Membership of z (scalar or array) in the open domain d."""
    x, y = _as_xy(z)
    return _scalar_or_array(d.member(x, y), z)


def _running_inf(d, x):
    if isinstance(d, StepDomain):
        # b is nondecreasing, so the infimum over x' >= x is the depth at x
        return d.depth(x)
    if isinstance(d, GraphDomain):
        return d.family.running_inf(x)
    if isinstance(d, (HalfPlane, SlitPlane)):
        return np.full(np.shape(x), np.inf)
    return np.full(np.shape(x), -np.inf)


def bstar_heights(d: DomainSpec, xs) -> np.ndarray:
    """Vectorized bstar_height; every abscissa must lie on a contained real ray."""
    xs = np.asarray(xs, dtype=float)
    if not np.all(d.member(xs, np.zeros_like(xs))):
        bad = xs[~d.member(xs, np.zeros_like(xs))][0]
        raise RayNotContained(f"real point {bad} is not in the domain")
    return np.maximum(_running_inf(d, xs), 0.0)


def bstar_height(d: DomainSpec, x: float) -> float:
    """b(x) = inf{y > 0 : x - iy not in Omega_*}, the depth of the starlike-ification."""
    return float(bstar_heights(d, np.array([float(x)]))[0])


def ray_radius(d: DomainSpec, search_max: float = 1e3) -> float:
    """Smallest r0 such that (r0, 10 search_max] lies in d; inf if none."""
    return float(d.ray_radius(10.0 * search_max))


@dataclass(frozen=True)
class ConeCertificate:
    beta: float
    radius: float
    analytic: bool


def _cone_sample_ok(d, beta, r, outer):
    angles = beta * (1.0 - 1e-9) * np.linspace(-1.0, 1.0, 129)
    radii = np.geomspace(r * (1.0 + 1e-9), outer, 400)
    pts = radii[:, None] * np.exp(1j * angles[None, :])
    return bool(np.all(d.member(pts.real, pts.imag)))


def inner_tangent_radius(d: DomainSpec, beta: float, search_max: float = 1e3) -> ConeCertificate:
    """Smallest radius r with Gamma(beta, r) inside d, certified on |z| <= 10 search_max.

    Variants with a closed-form boundary get an analytic radius which is
    then confirmed by sampling; table graphs are certified by sampling only.
    """
    if not 0.0 < beta < math.pi / 2:
        raise BadAngle(f"beta must lie in (0, pi/2), got {beta}")
    outer = 10.0 * search_max
    floor = search_max * 1e-4
    analytic = d.cone_radius(beta, outer)
    if analytic is not None:
        r = max(analytic, floor)
        if r > search_max:
            raise NotFound(f"cone radius {r:.6g} exceeds search_max {search_max}")
        if _cone_sample_ok(d, beta, r, outer):
            return ConeCertificate(beta, r, True)
    for r in np.geomspace(floor, search_max, 161):
        if analytic is not None and r < analytic:
            continue
        if _cone_sample_ok(d, beta, float(r), outer):
            return ConeCertificate(beta, float(r), analytic is not None)
    raise NotFound(f"no radius up to {search_max} certifies the cone at beta={beta}")


def _on_arc(d, r, angles):
    if hasattr(d, "arc_member"):
        return d.arc_member(r, angles)
    pts = r * np.exp(1j * angles)
    return d.member(pts.real, pts.imag)


def _exit_angle(d, r, sign, tol):
    angles = sign * MARCH_STEP * np.arange(1, 513)
    inside = _on_arc(d, r, angles)
    outside = np.flatnonzero(~inside)
    if outside.size == 0:
        return TWO_PI
    j = int(outside[0])
    lo, hi = j * MARCH_STEP, (j + 1) * MARCH_STEP
    # vectorized bisection: each pass splits the bracket into 64 pieces
    for _ in range(40):
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        grid = np.linspace(lo, hi, 65)[1:-1]
        out = np.flatnonzero(~_on_arc(d, r, sign * grid))
        if out.size:
            i = int(out[0])
            new_lo, new_hi = (grid[i - 1] if i else lo), grid[i]
        else:
            new_lo, new_hi = grid[-1], hi
        if (new_lo, new_hi) == (lo, hi):
            break
        lo, hi = new_lo, new_hi
    if hi - lo <= max(tol, 8 * math.ulp(hi)):
        return 0.5 * (lo + hi)
    raise BudgetExceeded(f"arc exit bracket did not shrink below tol={tol}")


def eta(d, r: float, tol: float = 1e-10) -> float:
    """Angular length of the arc of d n {|z| = r} through the point r."""
    if not bool(d.member(np.array(float(r)), np.array(0.0))):
        raise PointNotInDomain(f"real point {r} is not in the domain")
    if isinstance(d, HalfPlane):
        return math.pi
    total = _exit_angle(d, r, 1.0, tol) + _exit_angle(d, r, -1.0, tol)
    return min(total, TWO_PI)


@dataclass(frozen=True)
class EtaProfile:
    radii: tuple
    eta: tuple
    tolerance: float


def eta_profile(d, radii, tol: float = 1e-10) -> EtaProfile:
    radii = tuple(float(r) for r in radii)
    return EtaProfile(radii, tuple(eta(d, r, tol) for r in radii), tol)


def cd_sequences(s: StepDomain):
    """c_k = |a_{k-1} - i b_k| and d_k = |a_k - i b_k| for k = 1..K."""
    c = np.hypot(s._a[:-1], s._b)
    dd = np.hypot(s._a[1:], s._b)
    return c, dd


def eta_step_array(s: StepDomain, r) -> np.ndarray:
    """Closed-form eta of a step domain; equals pi below c_1."""
    r = np.asarray(r, dtype=float)
    c, dd = cd_sequences(s)
    k = np.searchsorted(c, r, side="right")  # c_k <= r < c_{k+1}, 1-based
    out = np.full(r.shape, math.pi)
    on = k >= 1
    ki = k[on] - 1
    rr = r[on]
    first = rr <= dd[ki]
    b_k, a_k = s._b[ki], s._a[1:][ki]
    with np.errstate(invalid="ignore"):
        top = np.arctan2(np.sqrt(np.maximum(rr**2 - b_k**2, 0.0)), b_k)
        side = np.arctan2(a_k, np.sqrt(np.maximum(rr**2 - a_k**2, 0.0)))
    out[on] = math.pi - np.where(first, top, side)
    return out


def eta_step_closed_form(s: StepDomain, r: float) -> float:
    """pi - eta on [c_k, d_k] is arctan(sqrt(r^2 - b_k^2) / b_k) and on
    [d_k, c_{k+1}] it is arctan(a_k / sqrt(r^2 - a_k^2))."""
    c, _ = cd_sequences(s)
    if r < c[0]:
        raise RadiusTooSmall(f"r={r} is below c_1={c[0]}")
    return float(eta_step_array(s, np.array([float(r)]))[0])


@dataclass(frozen=True)
class DeltaSample:
    t: float
    delta_plus: float
    delta_minus: float


def delta_pm(d: DomainSpec, p: complex, t: float) -> DeltaSample:
    """Right and left boundary distances of p + it, each clipped at t."""
    p = complex(p)
    if not bool(d.member(np.array(p.real), np.array(p.imag))):
        raise PointNotInDomain(f"{p} is not in the domain")
    t = float(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    right, left = d.side_distances(p + 1j * t, p.real)
    return DeltaSample(t, float(min(right, t)), float(min(left, t)))


class ConvergenceMode(str, enum.Enum):
    NON_TANGENTIAL = "NonTangential"
    TANGENTIAL_MINUS = "TangentialMinus"
    TANGENTIAL_PLUS = "TangentialPlus"
    UNDETERMINED = "Undetermined"


def classify_convergence_mode(d: DomainSpec, p: complex, t_grid, upper: float = 1e3,
                              lower: float = 1e-3) -> ConvergenceMode:
    """Read the slope of the orbits off the tail of delta^+/delta^-."""
    t_grid = [float(t) for t in t_grid]
    samples = [delta_pm(d, p, t) for t in t_grid]
    if len(t_grid) < 2 or t_grid[-1] < 1e3:
        return ConvergenceMode.UNDETERMINED
    ratios = np.array([s.delta_plus / s.delta_minus for s in samples if s.t > 0])
    tail = ratios[len(ratios) // 2:]
    if tail.size < 2:
        return ConvergenceMode.UNDETERMINED
    steps = np.diff(tail)
    if tail[-1] > upper and np.all(steps >= -1e-12 * tail[1:]):
        return ConvergenceMode.TANGENTIAL_MINUS
    if tail[-1] < lower and np.all(steps <= 1e-12 * tail[:-1]):
        return ConvergenceMode.TANGENTIAL_PLUS
    if np.all((tail >= lower) & (tail <= upper)) and tail.max() / tail.min() <= 10.0:
        return ConvergenceMode.NON_TANGENTIAL
    return ConvergenceMode.UNDETERMINED
