"""Adaptive Simpson quadrature with a panel budget."""
from __future__ import annotations

from .errors import BudgetExceeded

MAX_DEPTH = 60


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-8, budget: int = 10**6):
    """Integrate f over [a, b] to absolute tolerance tol.

    Returns (value, panels). Panels are processed left to right from an
    explicit stack so the summation order, and hence the result, is fixed.
    Raises BudgetExceeded once more than ``budget`` panels have been split.
    """
    if a == b:
        return 0.0, 0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    panels = 0
    while stack:
        lo, hi, flo, fmid, fhi, est, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = (mid - lo) * (flo + 4.0 * flm + fmid) / 6.0
        right = (hi - mid) * (fmid + 4.0 * frm + fhi) / 6.0
        delta = left + right - est
        panels += 1
        if panels > budget:
            raise BudgetExceeded(f"adaptive Simpson exceeded {budget} panels")
        if abs(delta) <= 15.0 * eps or depth >= MAX_DEPTH:
            total += left + right + delta / 15.0
        else:
            # right pushed first so the left half is finished first
            stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
            stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
    return total, panels


def piecewise_simpson(f, breaks, tol: float = 1e-8, budget: int = 10**6):
    """adaptive_simpson over consecutive [breaks[i], breaks[i+1]], tolerance split by length."""
    breaks = list(breaks)
    span = breaks[-1] - breaks[0]
    total, panels = 0.0, 0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi <= lo:
            continue
        eps = tol * (hi - lo) / span if span > 0 else tol
        value, used = adaptive_simpson(f, lo, hi, eps, budget - panels)
        total += value
        panels += used
    return total, panels
