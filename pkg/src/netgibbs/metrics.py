"""Empirical estimators and 1-D quadrature densities.

Bridges sampler output to the exact theory: Gaussian moment fits with a
ridge, plug-in KL against a known Gaussian target, and grid densities
(normalized by trapezoid rule) for checks where no closed form exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import gaussian_oracle
from .gaussian_oracle import GaussianDist
from .potentials import QUADRATIC, ZERO, PotentialSpec, prox
from .quadrature import QuadratureError, cumulative_trapezoid, trapezoid

# Window half-width, in conservative standard deviations, for the inner
# integral over the coupled variable; exp(-12^2/2) ~ 5e-32 of tail mass.
_INNER_WINDOW_SDS = 12.0
_TAIL_REL_TOL = 1e-12


class CoverageError(ValueError):
    """The supplied grid does not cover the density's mass."""


@dataclass(frozen=True)
class EmpiricalGaussian:
    """Moment-fitted Gaussian: sample mean, ridged unbiased covariance."""

    mean: np.ndarray
    cov: np.ndarray
    n_samples: int
    ridge: float

    def as_dist(self) -> GaussianDist:
        return GaussianDist(self.mean, self.cov)


@dataclass(frozen=True)
class Quadrature1D:
    """A normalized 1-D density tabulated on a grid.

    ``log_density`` holds the normalized log pdf on ``grid``; ``log_norm``
    is the log of the constant divided out.  The trapezoid integral of the
    density over the grid is 1 up to floating-point error.
    """

    grid: np.ndarray
    log_density: np.ndarray
    log_norm: float

    def pdf(self) -> np.ndarray:
        return np.exp(self.log_density)

    def cdf(self) -> np.ndarray:
        return cumulative_trapezoid(self.pdf(), self.grid)

    def cdf_at(self, x) -> np.ndarray:
        return np.interp(x, self.grid, self.cdf())

    def mass(self) -> float:
        return trapezoid(self.pdf(), self.grid)


def quadrature_density_1d(log_density_fn: Callable[[float], float], grid: np.ndarray) -> Quadrature1D:
    """Normalize exp(log_density_fn) on the grid; the grid must cover the mass.

    Raises CoverageError when the density at either grid end exceeds 1e-12
    of the peak, since truncated tails would silently bias every downstream
    statistic.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.shape[0] < 8:
        raise ValueError("grid must be a 1-D array with at least 8 points")
    if not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be strictly increasing")
    raw = np.array([float(log_density_fn(float(x))) for x in grid])
    peak = float(raw.max())
    if raw[0] > peak + math.log(_TAIL_REL_TOL) or raw[-1] > peak + math.log(_TAIL_REL_TOL):
        raise CoverageError(
            "density at a grid end exceeds 1e-12 of the peak; widen the grid "
            f"(ends are {math.exp(raw[0] - peak):.2e} and {math.exp(raw[-1] - peak):.2e} of peak)"
        )
    dens = np.exp(raw - peak)
    z = trapezoid(dens, grid)
    return Quadrature1D(grid=grid, log_density=raw - peak - math.log(z), log_norm=peak + math.log(z))


def _values_on_grid(pot_spec: PotentialSpec, ys: np.ndarray) -> np.ndarray:
    """Evaluate a 1-D potential on an array of scalar points."""
    if pot_spec.kind == ZERO:
        return np.zeros_like(ys)
    if pot_spec.kind == QUADRATIC:
        p = float(pot_spec.precision[0, 0])
        u = float(pot_spec.center[0])
        return 0.5 * p * (ys - u) ** 2
    return np.array([pot_spec.value(np.array([y])) for y in ys])


def _simpson_doubling(fvec, lo: float, hi: float, abs_tol: float, max_doublings: int = 18) -> float:
    """Composite Simpson with interval-count doubling until the Richardson
    error estimate |I_2n - I_n| / 15 falls below abs_tol."""
    n = 64
    prev = None
    for _ in range(max_doublings):
        ys = fvec(np.linspace(lo, hi, n + 1))
        h = (hi - lo) / n
        cur = h / 3.0 * (ys[0] + ys[-1] + 4.0 * float(ys[1::2].sum()) + 2.0 * float(ys[2:-1:2].sum()))
        if prev is not None and abs(cur - prev) <= 15.0 * abs_tol:
            return cur + (cur - prev) / 15.0
        prev = cur
        n *= 2
    raise QuadratureError(f"inner integral did not converge to {abs_tol:.1e} within {max_doublings} refinements")


def marginal_density_1d(f: PotentialSpec, g: PotentialSpec, eta: float, grid: np.ndarray) -> Quadrature1D:
    """X-marginal of exp(-f(x) - g(y) - (x - y)^2 / (2 eta)) on a grid (d = 1).

    For each grid point the inner integral over y runs adaptive (interval
    doubling) Simpson on a window around its mode, located by the prox of
    g and wide enough that the neglected tails are below 1e-30 of the mass.
    """
    if eta <= 0:
        raise ValueError("eta must be > 0")
    s_max = 1.0 / math.sqrt(g.alpha + 1.0 / eta)
    half = _INNER_WINDOW_SDS * s_max

    def log_density(x: float) -> float:
        xv = np.array([x])
        y_star = float(prox(g, xv, eta)[0])

        def phi(ys: np.ndarray) -> np.ndarray:
            return _values_on_grid(g, ys) + (x - ys) ** 2 / (2.0 * eta)

        phi_star = float(phi(np.array([y_star]))[0])
        inner = _simpson_doubling(
            lambda ys: np.exp(-(phi(ys) - phi_star)), y_star - half, y_star + half, abs_tol=1e-10 * s_max
        )
        return -f.value(xv) - phi_star + math.log(inner)

    return quadrature_density_1d(log_density, grid)


def tv_quadrature(p: Quadrature1D, q: Quadrature1D) -> float:
    """Total variation between two grid densities tabulated on the same grid."""
    if p.grid.shape != q.grid.shape or not np.array_equal(p.grid, q.grid):
        raise ValueError("densities must share the same grid")
    return 0.5 * trapezoid(np.abs(p.pdf() - q.pdf()), p.grid)


def fit_gaussian(samples: np.ndarray, ridge: float | None = None) -> EmpiricalGaussian:
    """Sample mean and unbiased covariance plus ridge * I.

    The default ridge is 1e-9 * tr(cov)/d, just enough to keep downstream
    solves stable without visibly moving any plug-in statistic.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    n, d = samples.shape
    if n < d + 2:
        raise ValueError(f"need at least d + 2 = {d + 2} samples to fit a covariance, got {n}")
    mean = samples.mean(axis=0)
    centered = samples - mean
    cov = centered.T @ centered / (n - 1)
    if ridge is None:
        ridge = 1e-9 * float(np.trace(cov)) / d
    cov = cov + ridge * np.eye(d)
    return EmpiricalGaussian(mean=mean, cov=cov, n_samples=n, ridge=float(ridge))


def empirical_kl_vs_gaussian(samples: np.ndarray, target: GaussianDist, ridge: float | None = None) -> float:
    """Plug-in KL(fit(samples) || target) using the Gaussian closed form."""
    fit = fit_gaussian(samples, ridge=ridge)
    return gaussian_oracle.kl(fit.as_dist(), target)
