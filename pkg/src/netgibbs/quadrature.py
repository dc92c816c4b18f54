"""Scalar adaptive Simpson integration and trapezoid helpers.

The adaptive rule bisects intervals until the Richardson error estimate of
each piece is below its share of the absolute tolerance.  Integrands used in
this package are smooth and finite on their windows, so the recursion is
shallow in practice; ``max_depth`` exists to turn a pathological input into
an error instead of a hang.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


class QuadratureError(RuntimeError):
    """Adaptive integration failed to reach the requested tolerance."""


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(fn, a, fa, b, fb, m, fm, whole, tol, depth, max_depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = fn(lm)
    frm = fn(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    err = left + right - whole
    if abs(err) <= 15.0 * tol or (b - a) <= 1e-300:
        return left + right + err / 15.0
    if depth >= max_depth:
        raise QuadratureError(
            f"adaptive Simpson hit max depth {max_depth} on [{a}, {b}] "
            f"(residual error estimate {abs(err) / 15.0:.3e} > {tol:.3e})"
        )
    return _adaptive(fn, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) + _adaptive(
        fn, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth
    )


def adaptive_simpson(fn: Callable[[float], float], a: float, b: float, abs_tol: float = 1e-10, max_depth: int = 48) -> float:
    """Integrate ``fn`` over [a, b] to absolute tolerance ``abs_tol``."""
    if not b > a:
        if b == a:
            return 0.0
        raise ValueError(f"bad interval [{a}, {b}]")
    fa = fn(a)
    fb = fn(b)
    m = 0.5 * (a + b)
    fm = fn(m)
    whole = _simpson(fa, fm, fb, b - a)
    return _adaptive(fn, a, fa, b, fb, m, fm, whole, abs_tol, 0, max_depth)


def trapezoid(y: np.ndarray, x: np.ndarray) -> float:
    """Trapezoid-rule integral of sampled values y over grid x."""
    return float(np.trapezoid(y, x))


def cumulative_trapezoid(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Running trapezoid integral, starting at 0 on the first grid point."""
    seg = 0.5 * (y[1:] + y[:-1]) * np.diff(x)
    out = np.empty_like(np.asarray(y, dtype=float))
    out[0] = 0.0
    np.cumsum(seg, out=out[1:])
    return out
