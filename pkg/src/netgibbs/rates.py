"""Calculators for every provable convergence quantity of the sampler.

Two-node per-sweep KL contraction, the convex-case 1/k bound, the
strong-log-concavity coefficient of the interpolating law, the bipartite
contraction exponent C (integrated by adaptive Simpson), exact mixing-sweep
counts, and the small-coupling approximation bounds for the composite
density exp(-f - g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .quadrature import adaptive_simpson

Y_STEP = "Y"
X_STEP = "X"

_MAX_MIXING_SWEEPS = 10**9


@dataclass(frozen=True)
class NetworkSummary:
    """The handful of network statistics the rate formulas consume."""

    n: int
    m: int
    min_row_sum: float
    min_col_sum: float
    min_alpha_f: float
    min_alpha_g: float

    @classmethod
    def from_network(cls, net) -> "NetworkSummary":
        return cls(
            n=net.n,
            m=net.m,
            min_row_sum=float(min(net.row_sums)),
            min_col_sum=float(min(net.col_sums)),
            min_alpha_f=min(p.alpha for p in net.f),
            min_alpha_g=min(p.alpha for p in net.g),
        )

    @property
    def degenerate(self) -> bool:
        """True when some vertex potential is merely convex (alpha = 0)."""
        return self.min_alpha_f == 0.0 or self.min_alpha_g == 0.0


def two_node_rate(alpha_f: float, alpha_g: float, eta: float) -> float:
    """Per-sweep KL contraction factor 1 / ((1 + eta a_f)^2 (1 + eta a_g)^2)."""
    if alpha_f < 0 or alpha_g < 0 or eta <= 0:
        raise ValueError("need alpha_f, alpha_g >= 0 and eta > 0")
    return 1.0 / ((1.0 + eta * alpha_f) ** 2 * (1.0 + eta * alpha_g) ** 2)


def convex_rate_bound(w2_init_sq: float, eta: float, k: int) -> float:
    """Convex-only KL bound after k sweeps: W2^2(initial, target) / (k eta)."""
    if k < 1:
        raise ValueError("k must be >= 1 for the convex-case bound")
    if w2_init_sq < 0 or eta <= 0:
        raise ValueError("need w2_init_sq >= 0 and eta > 0")
    return w2_init_sq / (k * eta)


def _inverse_sum(terms) -> float:
    s = 0.0
    for t in terms:
        if math.isinf(t):
            return 0.0
        s += t
    return 1.0 / s if s > 0 else math.inf


def _ratio(num: float, den: float) -> float:
    """num/den with the 0/0 -> 0 and pos/0 -> inf conventions of the rate terms."""
    if num == 0.0:
        return 0.0
    if den == 0.0:
        return math.inf
    return num / den


def c_t(summary: NetworkSummary, eta: float, t: float, direction: str = Y_STEP) -> float:
    """Strong-log-concavity coefficient of the block-update interpolation.

    For the Y step:
    c_t = [eta t(1-t)/min_col_sum + m n (1-t)^2 / min_alpha_f
           + t^2 / min_alpha_g]^{-1};
    the X step swaps the roles of the two sides.  A zero minimum alpha makes
    the corresponding term infinite and the coefficient collapse to 0 (the
    contraction bound degenerates).
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must be in [0, 1], got {t}")
    if eta <= 0:
        raise ValueError("eta must be > 0")
    mn = summary.m * summary.n
    if direction == Y_STEP:
        weight_sum, a_lead, a_tail = summary.min_col_sum, summary.min_alpha_f, summary.min_alpha_g
    elif direction == X_STEP:
        weight_sum, a_lead, a_tail = summary.min_row_sum, summary.min_alpha_g, summary.min_alpha_f
    else:
        raise ValueError(f"direction must be {Y_STEP!r} or {X_STEP!r}")
    if weight_sum <= 0:
        raise ValueError("summary has a non-positive minimum weight sum (irregular network)")
    terms = (
        eta * t * (1.0 - t) / weight_sum,
        _ratio(mn * (1.0 - t) ** 2, a_lead),
        _ratio(t * t, a_tail),
    )
    val = _inverse_sum(terms)
    return 0.0 if math.isinf(val) else val


def bipartite_C(summary: NetworkSummary, eta: float, quad_tol: float = 1e-10) -> float:
    """Contraction exponent: KL after k sweeps <= exp(-k C) * initial KL.

    C = (eta/n) * integral of the Y-step coefficient over t in [0, 1]
      + (eta/m) * integral of the X-step coefficient.
    Both integrals use adaptive Simpson to half of ``quad_tol`` each.  When
    some minimum alpha is 0 both integrands vanish except at one endpoint,
    so the literal value C = 0 is returned (no contraction is guaranteed).
    """
    if summary.degenerate:
        return 0.0
    y_int = adaptive_simpson(lambda t: c_t(summary, eta, t, Y_STEP), 0.0, 1.0, abs_tol=0.5 * quad_tol)
    x_int = adaptive_simpson(lambda t: c_t(summary, eta, t, X_STEP), 0.0, 1.0, abs_tol=0.5 * quad_tol)
    return (eta / summary.n) * y_int + (eta / summary.m) * x_int


def mixing_sweeps_exact_rgo(
    alpha_f: float,
    alpha_g: float,
    beta_f: float,
    beta_g: float,
    d: int,
    eta: float,
    kl0: float,
    delta: float,
) -> int:
    """Smallest sweep count k with contraction^k * kl0 <= 2 delta^2.

    By Pinsker, KL <= 2 delta^2 forces total variation <= delta.  The count
    is computed from the exact two-node contraction factor rather than the
    order-form estimate (see mixing_o_form for the latter); beta_f, beta_g
    and d only sanity-check that the rejection envelope applies.
    """
    if not (0 < delta < 1):
        raise ValueError("delta must be in (0, 1)")
    if kl0 < 0 or d < 1 or eta <= 0:
        raise ValueError("need kl0 >= 0, d >= 1, eta > 0")
    if not (0 <= alpha_f <= beta_f and 0 <= alpha_g <= beta_g):
        raise ValueError("need 0 <= alpha <= beta on both sides")
    if not (math.isfinite(beta_f) and math.isfinite(beta_g)):
        raise ValueError("exact conditional sampling requires finite smoothness constants")
    target = 2.0 * delta * delta
    if kl0 <= target:
        return 0
    factor = two_node_rate(alpha_f, alpha_g, eta)
    if factor >= 1.0:
        raise ValueError("contraction factor is 1 (both alphas are 0): no convergence guarantee")
    k = max(0, math.ceil((math.log(kl0) - math.log(target)) / -math.log(factor)))
    while k > 0 and factor ** (k - 1) * kl0 <= target:
        k -= 1
    while factor**k * kl0 > target:
        k += 1
        if k > _MAX_MIXING_SWEEPS:
            raise ValueError("mixing sweep count exceeds 1e9; contraction is too weak")
    return k


def mixing_o_form(alpha_f: float, alpha_g: float, beta_f: float, beta_g: float, d: int, kl0: float, delta: float) -> float:
    """Order-form sweep estimate (beta_f+beta_g) d / (alpha_f+alpha_g) * log(kl0/delta^2)."""
    if alpha_f + alpha_g <= 0:
        return math.inf
    if kl0 <= 0:
        return 0.0
    return (beta_f + beta_g) * d / (alpha_f + alpha_g) * math.log(kl0 / delta**2)


def smoothing_kl_bound(d: int, alpha: float, beta: float, eta: float) -> float:
    """KL(smoothed target || composite) bound when the X-side potential is zero.

    d alpha / (2 beta) * [exp(2 beta^2 eta / alpha) - 1]; requires the
    Y-side potential to be alpha-strongly convex and beta-smooth.
    """
    if not 0 < alpha <= beta:
        raise ValueError("need 0 < alpha <= beta")
    if d < 1 or eta < 0:
        raise ValueError("need d >= 1 and eta >= 0")
    return d * alpha / (2.0 * beta) * math.expm1(2.0 * beta * beta * eta / alpha)


def smoothing_tv_bound(d: int, alpha: float, beta: float, eta: float) -> float:
    """Companion total-variation bound sqrt(d alpha / (4 beta) * [exp(2 b^2 e / a) - 1])."""
    if not 0 < alpha <= beta:
        raise ValueError("need 0 < alpha <= beta")
    if d < 1 or eta < 0:
        raise ValueError("need d >= 1 and eta >= 0")
    return math.sqrt(d * alpha / (4.0 * beta) * math.expm1(2.0 * beta * beta * eta / alpha))


def shared_minimizer_tv_bound(d: int, alpha_f: float, sigma_sq: float, eta: float) -> float:
    """TV(smoothed marginal, composite) <= eta sqrt(d) / (2 (alpha_f s^4 + s^2)).

    Setup: isotropic quadratic Y-side potential |y - u|^2 / (2 sigma_sq),
    alpha_f-strongly convex X-side potential, both minimized at u.
    """
    if d < 1 or alpha_f < 0 or sigma_sq <= 0 or eta < 0:
        raise ValueError("need d >= 1, alpha_f >= 0, sigma_sq > 0, eta >= 0")
    return eta * math.sqrt(d) / (2.0 * (alpha_f * sigma_sq**2 + sigma_sq))


def shared_minimizer_kl_bound(d: int, alpha_f: float, sigma_sq: float, eta: float) -> float:
    """Companion KL form d eta^2 / (2 (alpha_f s^4 + s^2)^2)."""
    if d < 1 or alpha_f < 0 or sigma_sq <= 0 or eta < 0:
        raise ValueError("need d >= 1, alpha_f >= 0, sigma_sq > 0, eta >= 0")
    return d * eta * eta / (2.0 * (alpha_f * sigma_sq**2 + sigma_sq) ** 2)


@dataclass(frozen=True)
class SmallEtaBounds:
    kl_bound: float
    tv_bound: float


@dataclass(frozen=True)
class RateReport:
    """Theoretical contraction summary for one network and coupling scale."""

    per_sweep_contraction: float
    C: float
    kl0: Optional[float] = None
    degenerate: bool = False
    small_eta_bounds: Optional[SmallEtaBounds] = None

    def kl_bound_at_k(self, k: int) -> float:
        if self.kl0 is None:
            raise ValueError("rate report was built without an initial KL value")
        if k < 0:
            raise ValueError("k must be >= 0")
        return self.kl0 * self.per_sweep_contraction**k

    def mixing_sweeps(self, delta: float) -> int:
        if self.kl0 is None:
            raise ValueError("rate report was built without an initial KL value")
        if not (0 < delta < 1):
            raise ValueError("delta must be in (0, 1)")
        target = 2.0 * delta * delta
        if self.kl0 <= target:
            return 0
        if self.per_sweep_contraction >= 1.0:
            raise ValueError("contraction factor is 1: no convergence guarantee")
        k = 0
        while self.per_sweep_contraction**k * self.kl0 > target:
            k += 1
            if k > _MAX_MIXING_SWEEPS:
                raise ValueError("mixing sweep count exceeds 1e9; contraction is too weak")
        return k


def build_rate_report(
    summary: NetworkSummary,
    eta: float,
    kl0: Optional[float] = None,
    small_eta_bounds: Optional[SmallEtaBounds] = None,
    quad_tol: float = 1e-10,
) -> RateReport:
    """Assemble a RateReport; two-node networks use the sharper per-sweep factor."""
    C = bipartite_C(summary, eta, quad_tol=quad_tol)
    contraction = math.exp(-C)
    if summary.n == 1 and summary.m == 1:
        contraction = min(contraction, two_node_rate(summary.min_alpha_f, summary.min_alpha_g, eta))
    return RateReport(
        per_sweep_contraction=contraction,
        C=C,
        kl0=kl0,
        degenerate=summary.degenerate,
        small_eta_bounds=small_eta_bounds,
    )
