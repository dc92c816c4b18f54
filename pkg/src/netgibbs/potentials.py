"""Potential-function abstraction: value, gradient, convexity constants, prox.

A potential h is the negative log of an unnormalized density exp(-h).  The
sampler only ever touches potentials through this interface: evaluation,
gradient, a strong-convexity constant ``alpha``, a smoothness constant
``beta`` and a proximal map.  Quadratic and zero potentials carry exact
closed-form proximal maps; custom potentials fall back to damped gradient
descent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

QUADRATIC = "quadratic"
ZERO = "zero"
CUSTOM = "custom"

# Gradient-norm tolerance is relative to 1 + |y|: the prox result feeds the
# rejection envelope, which is exact only at the true minimizer.
PROX_GRAD_TOL = 1e-10
PROX_MAX_ITER = 10_000


class ProxConvergenceError(RuntimeError):
    """Gradient-descent prox failed to reach the gradient tolerance.

    Carries the last iterate and its gradient norm for diagnosis.
    """

    def __init__(self, message: str, last_iterate: np.ndarray, residual: float):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


@dataclass(frozen=True)
class PotentialSpec:
    """A strongly convex potential with certified curvature constants.

    alpha and beta must satisfy alpha <= beta and bracket the true curvature:
    h(x) - h(y) - <grad h(y), x - y> lies in [alpha/2, beta/2] * |x - y|^2.
    The library never estimates these constants; a wrong declaration silently
    invalidates the rejection envelope, so custom potentials must certify
    them explicitly.
    """

    kind: str
    value_fn: Callable[[np.ndarray], float]
    grad_fn: Callable[[np.ndarray], np.ndarray]
    alpha: float
    beta: float
    prox_fn: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    center: Optional[np.ndarray] = field(default=None, repr=False)
    precision: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.beta < self.alpha:
            raise ValueError(f"beta ({self.beta}) must be >= alpha ({self.alpha})")

    def value(self, x: np.ndarray) -> float:
        return float(self.value_fn(np.asarray(x, dtype=float)))

    def grad(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.grad_fn(np.asarray(x, dtype=float)), dtype=float)


def quadratic(center, precision) -> PotentialSpec:
    """Quadratic potential 0.5 * (x - u)' P (x - u).

    ``center`` is the minimizer u; ``precision`` is a positive scalar
    (isotropic) or a symmetric positive-definite matrix P.  alpha and beta
    are the extreme eigenvalues of P, and the prox is exact.
    """
    u = np.atleast_1d(np.asarray(center, dtype=float))
    d = u.shape[0]
    P = np.asarray(precision, dtype=float)
    if P.ndim == 0:
        if P <= 0:
            raise ValueError("scalar precision must be > 0")
        P = float(P) * np.eye(d)
    if P.shape != (d, d):
        raise ValueError(f"precision shape {P.shape} does not match center dim {d}")
    if not np.allclose(P, P.T, rtol=1e-12, atol=1e-12):
        raise ValueError("precision matrix must be symmetric")
    eigvals, eigvecs = np.linalg.eigh(P)
    if eigvals[0] <= 0:
        raise ValueError(f"precision matrix must be positive definite (min eig {eigvals[0]})")
    P = 0.5 * (P + P.T)

    def value_fn(x):
        r = x - u
        return 0.5 * float(r @ P @ r)

    def grad_fn(x):
        return P @ (x - u)

    def prox_fn(y, eta_prime):
        # argmin 0.5 (x-u)'P(x-u) + |x-y|^2 / (2 eta'):  (P + I/eta')(x-u) = (y-u)/eta'
        w = eigvecs.T @ (y - u) / eta_prime
        return u + eigvecs @ (w / (eigvals + 1.0 / eta_prime))

    return PotentialSpec(
        kind=QUADRATIC,
        value_fn=value_fn,
        grad_fn=grad_fn,
        alpha=float(eigvals[0]),
        beta=float(eigvals[-1]),
        prox_fn=prox_fn,
        center=u,
        precision=P,
    )


def zero() -> PotentialSpec:
    """The identically-zero potential: alpha = beta = 0, prox is the identity."""
    return PotentialSpec(
        kind=ZERO,
        value_fn=lambda x: 0.0,
        grad_fn=np.zeros_like,
        alpha=0.0,
        beta=0.0,
        prox_fn=lambda y, eta_prime: y,
    )


def custom(value_fn, grad_fn, alpha: float, beta: float, prox_fn=None) -> PotentialSpec:
    """Wrap user-supplied callables with explicitly certified (alpha, beta).

    ``grad_fn`` must be the true gradient of ``value_fn`` (differentiability
    is required; subgradients are not supported).  When ``prox_fn`` is
    omitted, prox evaluations run damped gradient descent, which needs
    beta < inf.
    """
    return PotentialSpec(
        kind=CUSTOM,
        value_fn=value_fn,
        grad_fn=grad_fn,
        alpha=float(alpha),
        beta=float(beta),
        prox_fn=prox_fn,
    )


def prox(h: PotentialSpec, y: np.ndarray, eta_prime: float, grad_tol: float = PROX_GRAD_TOL, max_iter: int = PROX_MAX_ITER) -> np.ndarray:
    """Proximal map: argmin_x h(x) + |x - y|^2 / (2 eta_prime).

    Uses the potential's closed form when present; otherwise damped gradient
    descent with step 1/(beta + 1/eta_prime) until the objective gradient
    norm falls below grad_tol * (1 + |y|).
    """
    y = np.asarray(y, dtype=float)
    if eta_prime <= 0:
        raise ValueError(f"eta_prime must be > 0, got {eta_prime}")
    if h.alpha + 1.0 / eta_prime <= 0:
        raise ValueError("prox objective is not strongly convex")
    if h.prox_fn is not None:
        return np.asarray(h.prox_fn(y, float(eta_prime)), dtype=float)
    if not np.isfinite(h.beta):
        raise ValueError("gradient-descent prox requires a finite smoothness constant")
    step = 1.0 / (h.beta + 1.0 / eta_prime)
    tol = grad_tol * (1.0 + float(np.linalg.norm(y)))
    x = y.copy()
    for _ in range(max_iter):
        g = h.grad(x) + (x - y) / eta_prime
        res = float(np.linalg.norm(g))
        if res <= tol:
            return x
        x = x - step * g
    g = h.grad(x) + (x - y) / eta_prime
    res = float(np.linalg.norm(g))
    if res <= tol:
        return x
    raise ProxConvergenceError(
        f"prox did not converge in {max_iter} iterations (residual {res:.3e}, tol {tol:.3e})",
        last_iterate=x,
        residual=res,
    )


def shift_to_common_minimizer(f: PotentialSpec, g: PotentialSpec, x_star, stationarity_tol: float = 1e-8):
    """Tilt f and g by opposite linear terms so both are stationary at x_star.

    Requires x_star to be a stationary point of f + g.  Returns
    (f - <grad f(x_star), .>, g + <grad f(x_star), .>); the sum f + g is
    unchanged pointwise and both tilted potentials have zero gradient at
    x_star.  Curvature constants are unaffected, and closed-form proxes are
    carried through (a linear tilt only translates the prox argument).
    """
    x_star = np.atleast_1d(np.asarray(x_star, dtype=float))
    gf = f.grad(x_star)
    gg = g.grad(x_star)
    joint = float(np.linalg.norm(gf + gg))
    if joint > stationarity_tol:
        raise ValueError(
            f"x_star is not a stationary point of f + g: |grad (f+g)| = {joint:.3e} > {stationarity_tol:.1e}"
        )
    f_shift = _tilt(f, -gf)
    g_shift = _tilt(g, gf)
    return f_shift, g_shift


def _tilt(h: PotentialSpec, slope: np.ndarray) -> PotentialSpec:
    """h(x) + <slope, x> as a new potential with the same curvature."""
    slope = np.asarray(slope, dtype=float)
    h_value = h.value_fn
    h_grad = h.grad_fn
    h_prox = h.prox_fn

    def value_fn(x):
        return float(h_value(x)) + float(slope @ x)

    def grad_fn(x):
        return np.asarray(h_grad(x), dtype=float) + slope

    prox_fn = None
    if h_prox is not None:
        # argmin h + <s, x> + |x-y|^2/(2e)  ==  argmin h + |x - (y - e s)|^2/(2e)
        def prox_fn(y, eta_prime):
            return h_prox(y - eta_prime * slope, eta_prime)

    return PotentialSpec(
        kind=CUSTOM,
        value_fn=value_fn,
        grad_fn=grad_fn,
        alpha=h.alpha,
        beta=h.beta,
        prox_fn=prox_fn,
    )


def check_gradient(h: PotentialSpec, x: np.ndarray, rel_tol: float = 1e-5, h_step: float = 1e-6) -> bool:
    """Central finite-difference check that grad_fn differentiates value_fn."""
    x = np.asarray(x, dtype=float)
    g = h.grad(x)
    fd = np.empty_like(x)
    for i in range(x.shape[0]):
        e = np.zeros_like(x)
        e[i] = h_step * max(1.0, abs(x[i]))
        fd[i] = (h.value(x + e) - h.value(x - e)) / (2.0 * e[i])
    scale = max(1.0, float(np.linalg.norm(g)))
    return float(np.linalg.norm(fd - g)) <= rel_tol * scale
