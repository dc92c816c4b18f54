"""Adaptive Simpson and trapezoid helpers against known integrals."""

import math

import numpy as np
import pytest

from netgibbs.quadrature import QuadratureError, adaptive_simpson, cumulative_trapezoid, trapezoid


def test_polynomial_is_exact():
    # Simpson integrates cubics exactly
    assert adaptive_simpson(lambda x: x**3 - 2 * x + 1, 0.0, 2.0) == pytest.approx(2.0, abs=1e-14)


def test_gaussian_mass():
    val = adaptive_simpson(lambda x: math.exp(-0.5 * x * x), -10.0, 10.0, abs_tol=1e-12)
    assert val == pytest.approx(math.sqrt(2 * math.pi), abs=1e-11)


def test_oscillatory_integrand():
    val = adaptive_simpson(math.sin, 0.0, math.pi, abs_tol=1e-11)
    assert val == pytest.approx(2.0, abs=1e-10)


def test_empty_interval_is_zero():
    assert adaptive_simpson(lambda x: x, 1.0, 1.0) == 0.0


def test_reversed_interval_rejected():
    with pytest.raises(ValueError):
        adaptive_simpson(lambda x: x, 1.0, 0.0)


def test_discontinuity_hits_depth_limit():
    step = lambda x: 0.0 if x < 0.5 else 1.0
    with pytest.raises(QuadratureError, match="depth"):
        adaptive_simpson(step, 0.0, 1.0, abs_tol=1e-14, max_depth=8)


def test_trapezoid_matches_closed_form():
    xs = np.linspace(0, 1, 10001)
    assert trapezoid(xs**2, xs) == pytest.approx(1.0 / 3.0, abs=1e-8)


def test_cumulative_trapezoid_endpoints():
    xs = np.linspace(0, 2, 5001)
    cum = cumulative_trapezoid(xs, xs)
    assert cum[0] == 0.0
    assert cum[-1] == pytest.approx(2.0, abs=1e-10)
    assert np.all(np.diff(cum) >= 0)
