import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from koenigs_shift.errors import BudgetExceeded
from koenigs_shift.quadrature import adaptive_simpson, piecewise_simpson


def test_polynomials_are_exact():
    value, panels = adaptive_simpson(lambda x: x**3 - 2 * x + 1, 0.0, 2.0)
    assert value == pytest.approx(4 - 4 + 2, abs=1e-14)
    assert panels == 1


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(0.5, 10.0))
def test_matches_scipy_quad(freq, width):
    f = lambda x: math.exp(-x) * math.cos(freq * x)  # noqa: E731
    value, _ = adaptive_simpson(f, 0.0, width, tol=1e-10)
    assert value == pytest.approx(oracles.integrate(f, 0.0, width), abs=1e-9)


def test_deterministic_order():
    f = lambda x: math.sin(x) ** 2 / (1 + x)  # noqa: E731
    assert adaptive_simpson(f, 0, 30, 1e-9) == adaptive_simpson(f, 0, 30, 1e-9)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        adaptive_simpson(lambda x: math.sin(1 / x), 1e-6, 1.0, tol=1e-12, budget=50)


def test_piecewise_handles_kinks():
    f = lambda x: abs(x - 1.0)  # noqa: E731
    value, _ = piecewise_simpson(f, [0.0, 1.0, 3.0], tol=1e-12)
    assert value == pytest.approx(0.5 + 2.0, abs=1e-12)
