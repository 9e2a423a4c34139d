"""Reference implementations that share no code with the package.

Each oracle reaches its answer by a different route than the library:
arctanh/arccosh distance formulas, brute-force circle sampling, scipy
quadrature and scalar minimization.
"""
import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar


def disc_distance(z, w):
    # curvature -4 normalization: arctanh of the pseudo-hyperbolic distance
    return math.atanh(abs(z - w) / abs(1 - np.conj(w) * z))


def halfplane_distance(z, w):
    # half the curvature -1 distance: arccosh(1 + |z-w|^2 / (2 Re z Re w)) / 2
    return 0.5 * math.acosh(1 + abs(z - w) ** 2 / (2 * z.real * w.real))


def projection(w):
    """argmin over s > 0 of the half-plane distance from w to s."""
    res = minimize_scalar(lambda u: halfplane_distance(w, math.exp(u)),
                          bracket=(-5.0, 5.0), tol=1e-12)
    return math.exp(res.x)


def eta_bruteforce(member, r, n=200_001):
    """Arc through angle 0 on a fine uniform angle grid (resolution 2 pi / n)."""
    th = np.linspace(-math.pi, math.pi, n)
    pts = r * np.exp(1j * th)
    inside = member(pts.real, pts.imag)
    mid = n // 2
    lo = mid
    while lo > 0 and inside[lo - 1]:
        lo -= 1
    hi = mid
    while hi < n - 1 and inside[hi + 1]:
        hi += 1
    return th[hi] - th[lo], th[1] - th[0]


def step_eta_geometric(a, b, r):
    """eta of a staircase by intersecting the circle with every box edge directly."""
    # lowest exit below the real axis: first box met going clockwise from angle 0
    best = math.pi / 2
    for k in range(1, len(a)):
        lo, hi, depth = a[k - 1], a[k], b[k - 1]
        # points of the circle with x in [lo, hi] and y <= -depth: angle range
        if r <= depth:
            continue
        # the box is met at angle where either y = -depth (top edge) or x = hi (right edge)
        x_top = math.sqrt(r * r - depth * depth)
        if lo <= x_top <= hi:
            ang = math.atan2(depth, x_top)
        elif x_top > hi:
            y = math.sqrt(r * r - hi * hi) if r > hi else 0.0
            if y < depth:
                continue
            ang = math.atan2(y, hi)
        else:
            continue
        best = min(best, ang)
    return math.pi / 2 + best


def integrate(f, a, b):
    value, _ = quad(f, a, b, limit=500, epsabs=1e-13, epsrel=1e-12)
    return value


def integrate_to_inf(f, a):
    value, _ = quad(f, a, math.inf, limit=500, epsabs=1e-14, epsrel=1e-12)
    return value


def gauss_legendre(f, a, b, n=200):
    """Fixed high-order Gauss-Legendre rule on [a, b] (numpy nodes, no adaptivity)."""
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * float(np.sum(w * f(mid + half * x)))
