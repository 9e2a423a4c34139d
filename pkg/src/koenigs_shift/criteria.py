"""Finite-shift criteria for Koenigs domains.

Three tests are implemented and cross-checked: the series of reciprocal
starlike-ification heights sum 1/b(j), the integral of (1/eta - 1/pi) dr/r,
and for staircase domains the weighted series sum (a_k - a_{k-1}) / b_k.
Finite data can only be extrapolated through a declared tail model, so every
verdict is three-valued and carries its evidence.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.integrate import quad

from . import domains as dm
from .errors import (
    BadPartition,
    EtaOutOfRange,
    IndexOutOfRange,
    NotFound,
    PreconditionFailed,
    ShiftError,
    TooFewSteps,
)
from .quadrature import piecewise_simpson

PI = math.pi


class Verdict(str, enum.Enum):
    CONVERGENT = "Convergent"
    DIVERGENT = "Divergent"
    UNKNOWN = "Unknown"


class Decision(str, enum.Enum):
    FINITE_SHIFT = "FiniteShift"
    INFINITE_SHIFT = "InfiniteShift"
    INCONCLUSIVE = "Inconclusive"


# ------------------------------------------------------------ tail models

_FAMILY_PARAMS = {
    "xlog": ("eps",),
    "power": ("p", "c"),
    "powerlog": ("c", "p", "q", "shift"),
    "geometric": ("c", "base"),
}


@dataclass(frozen=True)
class ClosedForm:
    """Declared height law b(x) beyond the data.

    xlog: x (log x)^(1+eps); power: c x^p; powerlog: c x^p log(x + shift)^q;
    geometric: c base^x.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _FAMILY_PARAMS:
            raise ValueError(f"unknown tail family {self.family!r}")
        defaults = {"c": 1.0, "shift": 0.0, "q": 0.0}
        params = {}
        for name in _FAMILY_PARAMS[self.family]:
            if name in self.params:
                params[name] = float(self.params[name])
            elif name in defaults:
                params[name] = defaults[name]
            else:
                raise ValueError(f"tail family {self.family!r} needs parameter {name!r}")
        extra = set(self.params) - set(params)
        if extra:
            raise ValueError(f"unexpected tail parameters {sorted(extra)}")
        if params.get("c", 1.0) <= 0:
            raise ValueError("tail coefficient c must be positive")
        object.__setattr__(self, "params", params)

    def b(self, x):
        x = np.asarray(x, dtype=float)
        p = self.params
        with np.errstate(all="ignore"):
            if self.family == "xlog":
                return x * np.log(x) ** (1.0 + p["eps"])
            if self.family == "power":
                return p["c"] * x ** p["p"]
            if self.family == "powerlog":
                return p["c"] * x ** p["p"] * np.log(x + p["shift"]) ** p["q"]
            return p["c"] * p["base"] ** x

    @property
    def convergent(self) -> bool:
        """Whether the integral of dx / b(x) is finite at infinity."""
        p = self.params
        if self.family == "xlog":
            return p["eps"] > 0
        if self.family == "power":
            return p["p"] > 1
        if self.family == "powerlog":
            return p["p"] > 1 or (p["p"] == 1 and p["q"] > 1)
        return p["base"] > 1

    def tail_integral(self, x0: float) -> float:
        """Integral of dx / b(x) over [x0, inf)."""
        if not self.convergent:
            return math.inf
        p = self.params
        if self.family == "xlog":
            return math.log(x0) ** (-p["eps"]) / p["eps"]
        if self.family == "power":
            return x0 ** (1.0 - p["p"]) / (p["c"] * (p["p"] - 1.0))
        if self.family == "geometric":
            return p["base"] ** (-x0) / (p["c"] * math.log(p["base"]))

        def integrand(u):
            # 1/b(e^u) e^u, written to avoid overflow for large u
            log_term = u + math.log1p(p["shift"] * math.exp(-u))
            return math.exp(u * (1.0 - p["p"])) / (p["c"] * log_term ** p["q"])

        value, _ = quad(integrand, math.log(x0), math.inf, limit=400)
        return value

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({inner})"


@dataclass(frozen=True)
class PowerLogFit:
    """Fit log b = log C + p log x + q log log x on ``window`` points near the end of the data."""

    window: int = 16

    def __post_init__(self):
        if self.window < 8:
            raise ValueError("PowerLogFit window must be at least 8")


TailModel = Optional[Union[ClosedForm, PowerLogFit]]

FIT_RESIDUAL_MAX = 1e-3


def fit_power_log(xs, bs):
    """Least-squares (C, p, q) and the RMS residual in log coordinates."""
    xs, bs = np.asarray(xs, float), np.asarray(bs, float)
    design = np.column_stack([np.ones_like(xs), np.log(xs), np.log(np.log(xs))])
    coef, *_ = np.linalg.lstsq(design, np.log(bs), rcond=None)
    resid = design @ coef - np.log(bs)
    return math.exp(coef[0]), float(coef[1]), float(coef[2]), float(np.sqrt(np.mean(resid**2)))


def _fit_verdict(p, q):
    if abs(p - 1.0) <= 0.02:
        if q > 1.05:
            return Verdict.CONVERGENT
        if q <= 1.0 + 1e-3:
            return Verdict.DIVERGENT
        return Verdict.UNKNOWN
    if p > 1.05:
        return Verdict.CONVERGENT
    if p < 0.95:
        return Verdict.DIVERGENT
    return Verdict.UNKNOWN


def tail_verdict(tail: TailModel, xs, bs):
    """Decide the tail of sum dx / b(x) from the data heights bs at abscissae xs.

    A ClosedForm must reproduce the last five finite data points; a
    PowerLogFit uses ``window`` data points log-spaced over [sqrt(x_N), x_N].
    """
    xs, bs = np.asarray(xs, dtype=float), np.asarray(bs, dtype=float)
    if tail is None:
        return Verdict.UNKNOWN, "no tail model declared"
    if isinstance(tail, ClosedForm):
        finite = np.flatnonzero(np.isfinite(bs))[-5:]
        if finite.size:
            model = tail.b(xs[finite])
            rel = np.abs(model - bs[finite]) / np.abs(bs[finite])
            if not np.all(rel <= 1e-9):
                return Verdict.UNKNOWN, (
                    f"closed form {tail.describe()} disagrees with the data "
                    f"(max rel err {float(np.max(rel)):.3g})")
        verdict = Verdict.CONVERGENT if tail.convergent else Verdict.DIVERGENT
        return verdict, f"closed form {tail.describe()}: integral test on dx/b(x)"
    x_last = xs[-1]
    targets = np.geomspace(max(math.sqrt(x_last), 3.0), x_last, tail.window)
    idx = np.unique(np.clip(np.searchsorted(xs, targets), 0, xs.size - 1))
    if idx.size < 8 or xs[idx[0]] <= 1.0:
        return Verdict.UNKNOWN, "not enough data for a power-log fit"
    fx, fb = xs[idx], bs[idx]
    if not np.all(np.isfinite(fb) & (fb > 0)):
        return Verdict.UNKNOWN, "heights in the fit window are not finite and positive"
    c, p, q, rms = fit_power_log(fx, fb)
    if rms > FIT_RESIDUAL_MAX:
        return Verdict.UNKNOWN, f"power-log fit residual {rms:.3g} too large"
    return _fit_verdict(p, q), f"power-log fit C={c:.6g} p={p:.6g} q={q:.6g} rms={rms:.3g}"


def default_tail(d) -> TailModel:
    """The exact tail of a closed-form graph family, if there is one."""
    if isinstance(d, dm.GraphDomain):
        fam = d.family
        if isinstance(fam, dm.XLogEps):
            return ClosedForm("xlog", {"eps": fam.eps})
        if isinstance(fam, dm.Power):
            return ClosedForm("power", {"p": fam.p, "c": fam.c})
    return None


# ---------------------------------------------------------------- reports


@dataclass(frozen=True)
class SeriesReport:
    j0: int
    partial_sums: tuple
    tail_verdict: Verdict
    tail_rationale: str

    @property
    def certified(self) -> bool:
        return self.tail_verdict is not Verdict.UNKNOWN

    @property
    def total(self) -> float:
        return self.partial_sums[-1][1]


@dataclass(frozen=True)
class IntegralReport:
    r0: float
    r_max: float
    partial_integral: float
    lower_tail: float
    upper_tail: float
    verdict: Verdict
    rationale: str
    panels: int

    @property
    def certified(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN


@dataclass(frozen=True)
class Evidence:
    criterion: str
    partial_value: float
    tail_lower: float
    tail_upper: float
    verdict: Verdict
    certified: bool
    note: str = ""


@dataclass(frozen=True)
class ShiftVerdict:
    decision: Decision
    evidence: tuple
    preconditions_met: bool
    diagnostic: str = ""


def _checkpoint_counts(n: int):
    counts, m = [], 1
    while m < n:
        counts.append(m)
        m *= 2
    counts.append(n)
    return counts


def _partial_sums(terms, labels):
    with np.errstate(over="ignore"):
        sums = np.cumsum(terms)
    return tuple((labels[n - 1], float(sums[n - 1])) for n in _checkpoint_counts(len(terms)))


# -------------------------------------------------------- heights on data


def _step_heights(s: dm.StepDomain, tail: TailModel, xs):
    """Depths of s at xs, continuing the staircase beyond a_K with a ClosedForm
    tail: the last gap repeats and b is read off the closed form at each edge."""
    xs = np.asarray(xs, dtype=float)
    out = s.depth(xs)
    beyond = xs > s.extent
    if np.any(beyond) and isinstance(tail, ClosedForm):
        gap = s.a[-1] - s.a[-2]
        m = np.ceil((xs[beyond] - s.extent) / gap)
        with np.errstate(all="ignore"):
            edge_b = tail.b(s.extent + m * gap)
        out[beyond] = np.maximum(np.nan_to_num(edge_b, nan=np.inf), s.b[-1])
    return out


def extend_steps(s: dm.StepDomain, height, x_max: float) -> dm.StepDomain:
    """Staircase continued with the last gap up to x_max; the new column ending
    at x gets depth height(x), capped at 1e300."""
    gap = s.a[-1] - s.a[-2]
    count = max(int(math.ceil((x_max - s.extent) / gap)), 0)
    if count == 0:
        return s
    new_a = s.extent + gap * np.arange(1, count + 1)
    with np.errstate(all="ignore"):
        new_b = np.nan_to_num(height(new_a), nan=1e300, posinf=1e300)
    new_b = np.minimum(np.maximum.accumulate(np.maximum(new_b, s.b[-1])), 1e300)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", dm.StepShapeWarning)
        return dm.StepDomain(s.a + tuple(new_a), s.b + tuple(new_b))


def _heights(d, tail, xs):
    if isinstance(d, dm.StepDomain):
        return _step_heights(d, tail, xs)
    return dm.bstar_heights(d, xs)


def _require_cone(d, beta=PI / 4, search_max=1e3):
    try:
        return dm.inner_tangent_radius(d, beta, search_max)
    except NotFound as exc:
        raise PreconditionFailed(f"inner tangent not certified at beta={beta:.6g}: {exc}") from exc


def _series_report(j0, xs, bs, tail, own=None):
    with np.errstate(divide="ignore"):
        terms = np.where(bs > 0, 1.0 / bs, np.inf)
    sums = _partial_sums(terms, [int(x) if float(x).is_integer() else float(x) for x in xs])
    if np.any(bs <= 0):
        first = float(xs[np.argmax(bs <= 0)])
        return SeriesReport(j0, sums, Verdict.DIVERGENT, f"zero height at x={first:g}")
    if own is not None:
        xs, bs = xs[own], bs[own]
    verdict, why = tail_verdict(tail, xs, bs)
    return SeriesReport(j0, sums, verdict, why)


def series_criterion(d, j0: int, j_max: int, tail: TailModel) -> SeriesReport:
    """Partial sums of 1/b(j) for j = j0..j_max and the extrapolated tail verdict."""
    _require_cone(d)
    if j0 < 1:
        raise PreconditionFailed("j0 must be at least 1")
    if j0 <= dm.ray_radius(d):
        raise PreconditionFailed(f"j0={j0} lies below the contained real ray")
    if j_max < j0 + 100:
        raise PreconditionFailed("j_max must be at least j0 + 100")
    xs = np.arange(j0, j_max + 1, dtype=float)
    bs = _heights(d, tail, xs)
    own = None
    if isinstance(d, dm.StepDomain) and xs[0] <= d.extent:
        # judge the tail model on the supplied steps, not on its own continuation
        own = xs <= d.extent
    return _series_report(j0, xs, bs, tail, own)


def step_series(s: dm.StepDomain, tail: TailModel) -> SeriesReport:
    """Partial sums of (a_k - a_{k-1}) / b_k over the given steps."""
    a, b = s._a, s._b
    terms = np.diff(a) / b
    sums = _partial_sums(terms, list(range(1, s.steps + 1)))
    verdict, why = tail_verdict(tail, a[1:], b)
    return SeriesReport(1, sums, verdict, why)


def generalized_partition_series(d, partition, tail: TailModel,
                                 gap_ratio: float = 10.0) -> SeriesReport:
    """Series over an arbitrary increasing partition of the real ray.

    Nearly uniform gaps (max/min <= gap_ratio) use the summand 1/b(a_k);
    gaps that grow at most geometrically (consecutive ratio < gap_ratio)
    use (a_k - a_{k-1}) / b(a_k).
    """
    xs = np.asarray(partition, dtype=float)
    if xs.size < 2 or np.any(np.diff(xs) <= 0):
        raise BadPartition("partition must be strictly increasing with at least two points")
    gaps = np.diff(xs)
    bs = _heights(d, tail, xs)
    if gaps.max() / gaps.min() <= gap_ratio:
        return _series_report(int(math.ceil(xs[0])), xs, bs, tail)
    if np.max(gaps[1:] / gaps[:-1]) < gap_ratio:
        with np.errstate(divide="ignore"):
            terms = np.where(bs[1:] > 0, gaps / bs[1:], np.inf)
        sums = _partial_sums(terms, [float(x) for x in xs[1:]])
        if np.any(bs <= 0):
            return SeriesReport(int(math.ceil(xs[0])), sums, Verdict.DIVERGENT, "zero height")
        verdict, why = tail_verdict(tail, xs, bs)
        return SeriesReport(int(math.ceil(xs[0])), sums, verdict, why)
    raise BadPartition("partition gaps are neither bounded nor of bounded growth")


# ------------------------------------------------------ integral and bounds


def integrand_bracket(eta: float):
    """(pi - eta)/pi^2 <= 1/eta - 1/pi <= 2 (pi - eta)/pi^2 for eta in (pi/2, pi]."""
    if not PI / 2 < eta <= PI:
        raise EtaOutOfRange(f"eta={eta} outside (pi/2, pi]")
    gap = PI - eta
    return gap / PI**2, 2.0 * gap / PI**2


def sandwich_pieces(s: dm.StepDomain, k: int):
    """Brackets for the integral of (pi - eta)/r over [c_k, d_k] and [d_k, c_{k+1}]."""
    if not 1 <= k <= s.steps:
        raise IndexOutOfRange(f"step index {k} outside 1..{s.steps}")
    c, d = dm.cd_sequences(s)
    ck, dk = c[k - 1], d[k - 1]
    inv_next = 1.0 / c[k] if k < s.steps else 0.0
    a_prev, a_k = s.a[k - 1], s.a[k]
    first = (PI / 4 * (1 / ck - 1 / dk) * a_prev, 2 * (1 / ck - 1 / dk) * a_k)
    second = (PI / 4 * (1 / dk - inv_next) * a_k, 2 * (1 / dk - inv_next) * a_k)
    return first, second


def step_integral_sandwich(s: dm.StepDomain, k: int):
    """Bracket for the integral of (pi - eta)/r dr over [c_k, c_{k+1}]."""
    first, second = sandwich_pieces(s, k)
    return float(first[0] + second[0]), float(first[1] + second[1])


def sandwich_conditions_hold(s: dm.StepDomain, k: int) -> bool:
    """2 b_j > c_j and b_j >= sqrt(3) a_j for j = k and, when it exists, k + 1."""
    if not 1 <= k <= s.steps:
        raise IndexOutOfRange(f"step index {k} outside 1..{s.steps}")
    c, _ = dm.cd_sequences(s)
    for j in range(k, min(k + 1, s.steps) + 1):
        bj, aj = s.b[j - 1], s.a[j]
        if not (2 * bj > c[j - 1] and bj >= math.sqrt(3) * aj):
            return False
    return True


def sigma_prime(s: dm.StepDomain) -> dm.StepDomain:
    """The index-shifted staircase a' = (0, a_2, ..., a_K), b' = (b_1, ..., b_{K-1})."""
    if s.steps < 2:
        raise TooFewSteps("sigma prime needs at least two steps")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", dm.StepShapeWarning)
        return dm.StepDomain((0.0,) + s.a[2:], s.b[:-1])


def graph_staircase(d, tail: ClosedForm, n0: int, x_max: float) -> dm.StepDomain:
    """Sigma with a_k = n0 - 1 + k and b_k = b(a_k), a staircase containing Omega_*."""
    count = int(math.ceil(x_max)) - n0 + 2
    a = n0 - 1 + np.arange(0, count + 1, dtype=float)
    a[0] = 0.0
    bs = np.minimum(np.nan_to_num(tail.b(a[1:]), nan=1e300, posinf=1e300), 1e300)
    bs = np.maximum.accumulate(np.maximum(bs, 1e-300))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", dm.StepShapeWarning)
        return dm.StepDomain(tuple(a), tuple(bs))


def _tail_bracket(s: dm.StepDomain, tail: ClosedForm, r_max: float, lag: float = 0.0,
                  extra: float = 0.0, direct: int = 2000):
    """Bracket for the integral of (pi - eta_s)/r over [r_max, inf) for the
    staircase s continued by ``tail`` (uniform last gap), in that measure.

    Summation by parts turns the per-step bounds into sums of gap/c_k; the
    remainder beyond the directly summed steps is bounded by the integral of
    dx / b(x).
    """
    gap = s.a[-1] - s.a[-2]
    # extend until c_k has passed r_max plus `direct` further steps
    x_need = s.extent
    while True:
        ext = extend_steps(s, lambda x: tail.b(x - lag), x_need)  # noqa: B023
        c, _ = dm.cd_sequences(ext)
        beyond = np.flatnonzero(c > r_max)
        if beyond.size and ext.steps - beyond[0] >= direct:
            break
        if x_need > 1e12:
            return 0.0, math.inf, "staircase does not reach r_max"
        x_need = max(2.0 * x_need, x_need + direct * gap)
    k1 = int(beyond[0])  # 1-based index of the last c_k <= r_max
    ks = np.arange(k1 + 1, ext.steps + 1)
    a, bvals = ext._a, ext._b
    ok = (2 * bvals[ks - 1] > c[ks - 1]) & (bvals[ks - 1] >= math.sqrt(3) * a[ks])
    if not np.all(ok):
        return 0.0, math.inf, "smallness conditions fail beyond r_max"
    a_k1 = a[k1] if k1 >= 1 else 0.0
    c_k1 = c[k1 - 1] if k1 >= 1 else r_max
    gaps_over_c = np.diff(a)[ks - 1] / c[ks - 1]
    last_x = a[ks[-1]]
    if not tail.convergent:
        return math.inf, math.inf, "heights grow too slowly: lower bound diverges"
    remainder = tail.tail_integral(max(last_x - gap - lag, 1.0 + 1e-9))
    upper = float(2.0 * (a_k1 / c_k1 + float(np.sum(gaps_over_c)) + remainder) + extra)
    lower = PI / 4 * float(np.sum(gaps_over_c[1:]))
    return lower, upper, "step sandwich with closed-form remainder"


def _eta_function(d, tol):
    if isinstance(d, dm.StepDomain):
        return lambda r: float(dm.eta_step_array(d, np.array([r]))[0])
    eta_tol = min(1e-12, tol * 1e-4)
    return lambda r: dm.eta(d, r, eta_tol)


def karamanlis_integral(d, r0: float, r_max: float, tol: float = 1e-8,
                        tail: TailModel = None, budget: int = 10**6) -> IntegralReport:
    """Integral of (1/eta(r) - 1/pi) dr/r over [r0, r_max] plus a tail bracket.

    Quadrature is adaptive Simpson in u = log r, with the step breakpoints
    c_k, d_k as panel edges. The tail bracket over [r_max, inf) comes from
    the staircase sandwich when a closed-form tail applies, otherwise it is
    (0, inf).
    """
    _require_cone(d)
    if not bool(dm.contains(d, complex(r0))):
        raise PreconditionFailed(f"r0={r0} is not on the contained real ray")
    if r_max <= 10 * r0:
        raise PreconditionFailed("r_max must exceed 10 r0")
    eta_at = _eta_function(d, tol)

    def f(u):
        return 1.0 / eta_at(math.exp(u)) - 1.0 / PI

    lo, hi = math.log(r0), math.log(r_max)
    breaks = [lo, hi]
    if isinstance(d, dm.StepDomain):
        c, dd = dm.cd_sequences(d)
        inner = np.log(np.concatenate([c, dd]))
        breaks = sorted({lo, hi, *inner[(inner > lo) & (inner < hi)].tolist()})
    value, panels = piecewise_simpson(f, breaks, tol, budget)

    lower, upper, why = 0.0, math.inf, "no tail model: tail unbounded"
    verdict = Verdict.UNKNOWN
    if isinstance(d, dm.HalfPlane):
        lower, upper, why, verdict = 0.0, 0.0, "integrand vanishes identically", Verdict.CONVERGENT
    elif isinstance(tail, ClosedForm):
        consistent, check = _integral_consistency(d, tail, r0, r_max, tol)
        if not consistent:
            why = check
        else:
            staircase, lag, extra = _staircase_for_tail(d, tail)
            lo_pe, hi_pe, why = _tail_bracket(staircase, tail, r_max, lag, extra / r_max)
            lower, upper = lo_pe / PI**2, 2.0 * hi_pe / PI**2
            if math.isinf(lower):
                verdict = Verdict.DIVERGENT
            elif math.isfinite(upper):
                verdict = Verdict.CONVERGENT
    elif isinstance(tail, PowerLogFit):
        why = "power-log fit does not bound the integral tail"
    return IntegralReport(float(r0), float(r_max), float(value), lower, upper, verdict, why, panels)


def _staircase_for_tail(d, tail):
    """(staircase, lag, extra * r_max) for the upper tail bound.

    A graph domain is compared with Sigma' built on unit columns: its column
    ending at x has depth b(x - 1), and eta_{Sigma'} exceeds eta of the
    starlike hull by at most 2 n0 / r, which integrates to 2 n0 / r_max.
    """
    if isinstance(d, dm.StepDomain):
        return d, 0.0, 0.0
    n0 = int(math.floor(dm.ray_radius(d))) + 1
    sigma = graph_staircase(d, tail, n0, n0 + 4.0)
    return sigma_prime(sigma), 1.0, 2.0 * n0


def _integral_consistency(d, tail, r0, r_max, tol):
    """Cheap cross-checks that the closed-form tail describes d."""
    radii = np.geomspace(max(r0, 1.0), r_max, 24)
    if isinstance(d, dm.StepDomain):
        xs = d._a[1:][-5:]
        model = tail.b(xs)
        if not np.allclose(model, d._b[-5:], rtol=1e-9, atol=0):
            return False, "closed form disagrees with the step heights"
        return True, ""
    n0 = int(math.floor(dm.ray_radius(d))) + 1
    xs = np.arange(max(n0, 2), max(n0, 2) + 50, dtype=float)
    if not np.allclose(tail.b(xs), dm.bstar_heights(d, xs), rtol=1e-9, atol=0):
        return False, "closed form disagrees with the starlike heights"
    sigma = graph_staircase(d, tail, n0, r_max)
    sig_p = sigma_prime(sigma)
    hull = dm.HeightDomain(d)
    radii = radii[radii >= 2 * n0]
    eta_hull = np.array([dm.eta(hull, r, 1e-12) for r in radii])
    eta_sigma = dm.eta_step_array(sigma, radii)
    eta_prime = dm.eta_step_array(sig_p, radii)
    slack = 1e-9
    if np.any(eta_hull > eta_sigma + slack):
        return False, "eta of the starlike hull exceeds the enclosing staircase"
    if np.any(eta_prime - eta_hull > 2 * n0 / radii + slack):
        return False, "inner staircase comparison fails"
    return True, ""


# ------------------------------------------------------------- classifier


@dataclass(frozen=True)
class ClassifyOptions:
    j0: Optional[int] = None
    j_max: int = 100_000
    r0: Optional[float] = None
    r_max: float = 1e4
    tol: float = 1e-8
    tail: TailModel = None
    auto_tail: bool = True
    search_max: float = 1e3
    betas: tuple = (PI / 4, 3 * PI / 8)


def _series_evidence(name, rep: SeriesReport):
    return Evidence(name, rep.total, 0.0, math.inf, rep.tail_verdict, rep.certified,
                    rep.tail_rationale)


def classify_shift(d, opts: ClassifyOptions = ClassifyOptions()) -> ShiftVerdict:
    """Decide finite versus infinite shift from all applicable criteria."""
    evidence = []
    for beta in opts.betas:
        try:
            cert = dm.inner_tangent_radius(d, beta, opts.search_max)
        except NotFound as exc:
            evidence.append(Evidence(f"inner_tangent[{beta:.6g}]", math.nan, 0.0, math.inf,
                                     Verdict.DIVERGENT if exc.refuted else Verdict.UNKNOWN,
                                     exc.refuted, str(exc)))
            if exc.refuted:
                return ShiftVerdict(Decision.INFINITE_SHIFT, tuple(evidence), False,
                                    "no cone around the real axis fits in the domain")
            return ShiftVerdict(Decision.INCONCLUSIVE, tuple(evidence), False,
                                "inner tangent could not be certified in the search window")
        evidence.append(Evidence(f"inner_tangent[{beta:.6g}]", cert.radius, 0.0, 0.0,
                                 Verdict.UNKNOWN, False,
                                 "precondition met, "
                                 + ("analytic certificate" if cert.analytic else "sampled")))

    tail = opts.tail if opts.tail is not None or not opts.auto_tail else default_tail(d)
    j0 = opts.j0 if opts.j0 is not None else max(1, int(math.floor(dm.ray_radius(d))) + 1)
    r0 = opts.r0 if opts.r0 is not None else float(j0)

    runs = [("series", lambda: _series_evidence(
        "series", series_criterion(d, j0, opts.j_max, tail)))]

    def integral():
        rep = karamanlis_integral(d, r0, opts.r_max, opts.tol, tail)
        return Evidence("integral", rep.partial_integral, rep.lower_tail, rep.upper_tail,
                        rep.verdict, rep.certified, rep.rationale)

    runs.append(("integral", integral))
    if isinstance(d, dm.StepDomain):
        runs.append(("step_series", lambda: _series_evidence("step_series", step_series(d, tail))))

    for name, run in runs:
        try:
            evidence.append(run())
        except ShiftError as exc:
            evidence.append(Evidence(name, math.nan, 0.0, math.inf, Verdict.UNKNOWN, False,
                                     f"{type(exc).__name__}: {exc}"))

    verdicts = {e.verdict for e in evidence if e.certified and not e.criterion.startswith("inner")}
    if len(verdicts) == 1:
        decision = (Decision.FINITE_SHIFT if verdicts.pop() is Verdict.CONVERGENT
                    else Decision.INFINITE_SHIFT)
        return ShiftVerdict(decision, tuple(evidence), True)
    diag = ("criteria disagree; treating as a numerical failure" if verdicts
            else "no criterion produced a certified verdict")
    return ShiftVerdict(Decision.INCONCLUSIVE, tuple(evidence), True, diag)
