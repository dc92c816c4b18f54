"""Exact sampler for densities proportional to exp(-h(y) - |y - c|^2 / (2 eta_eff)).

Rejection sampling against a Gaussian centered at the proximal minimizer:
with x* = prox(h, c, eta_eff) and total potential
H(y) = h(y) + |y - c|^2 / (2 eta_eff), strong convexity gives the global
minorant H(y) >= H(x*) + (alpha + 1/eta_eff) |y - x*|^2 / 2, so proposing
Z ~ N(x*, (alpha + 1/eta_eff)^{-1} I) and accepting with probability
exp(-[H(Z) - H(x*) - (alpha + 1/eta_eff) |Z - x*|^2 / 2]) yields exact
draws.  Smoothness bounds the expected number of proposals by
((beta + 1/eta_eff) / (alpha + 1/eta_eff))^{d/2}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .potentials import PotentialSpec, prox

DEFAULT_MAX_PROPOSALS = 1_000_000

# Acceptance probabilities above 1 + this slack indicate the declared
# strong-convexity constant overstates the potential's true curvature.
ENVELOPE_SLACK = 1e-9


class ProposalLimitError(RuntimeError):
    """Proposal budget exhausted before acceptance.

    Usually means eta_eff is too large for the declared (alpha, beta), so the
    envelope is far looser than the target; reduce the coupling scale or
    tighten the declared constants.
    """

    def __init__(self, message: str, proposals: int):
        super().__init__(message)
        self.proposals = proposals


class EnvelopeError(RuntimeError):
    """Acceptance probability exceeded 1: the minorant is not global.

    The declared alpha is larger than the potential's true strong-convexity
    constant (or the declared prox tolerance was violated), so samples would
    be biased.
    """


@dataclass(frozen=True)
class RGOProblem:
    """One conditional-sampling problem: potential, Gaussian center, scale."""

    potential: PotentialSpec
    center: np.ndarray
    eta_eff: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.atleast_1d(np.asarray(self.center, dtype=float)))
        if not self.eta_eff > 0:
            raise ValueError(f"eta_eff must be > 0, got {self.eta_eff}")
        if not np.isfinite(self.potential.beta):
            raise ValueError("rejection sampling requires a finite smoothness constant")


@dataclass(frozen=True)
class RGOResult:
    sample: np.ndarray
    proposals_used: int
    prox_point: np.ndarray


def expected_proposals(alpha: float, beta: float, eta_eff: float, d: int) -> float:
    """Expected proposals per accepted sample: ((beta + 1/eta) / (alpha + 1/eta))^(d/2)."""
    if not (0 <= alpha <= beta):
        raise ValueError(f"need 0 <= alpha <= beta, got alpha={alpha}, beta={beta}")
    if eta_eff <= 0 or d < 1:
        raise ValueError("need eta_eff > 0 and d >= 1")
    inv = 1.0 / eta_eff
    return ((beta + inv) / (alpha + inv)) ** (0.5 * d)


def rgo_sample(problem: RGOProblem, rng: np.random.Generator, max_proposals: int = DEFAULT_MAX_PROPOSALS) -> RGOResult:
    """Draw one exact sample from exp(-h(y) - |y - c|^2 / (2 eta_eff)).

    The generator is consumed as: one standard-normal vector plus one uniform
    per proposal.  Callers that need replay or parallelism should pass a
    dedicated stream per call.
    """
    h = problem.potential
    c = problem.center
    eta_eff = problem.eta_eff
    x_star = prox(h, c, eta_eff)
    a_prime = h.alpha + 1.0 / eta_eff
    sd = 1.0 / math.sqrt(a_prime)

    dxc = x_star - c
    h_star = h.value(x_star) + float(dxc @ dxc) / (2.0 * eta_eff)

    for used in range(1, max_proposals + 1):
        z = x_star + sd * rng.standard_normal(c.shape[0])
        dzc = z - c
        total = h.value(z) + float(dzc @ dzc) / (2.0 * eta_eff)
        dzx = z - x_star
        gap = total - h_star - 0.5 * a_prime * float(dzx @ dzx)
        if gap < -ENVELOPE_SLACK:
            raise EnvelopeError(
                f"acceptance probability exp({-gap:.3e}) > 1: declared alpha={h.alpha} "
                "exceeds the potential's true strong-convexity constant"
            )
        if rng.random() <= math.exp(-max(gap, 0.0)):
            return RGOResult(sample=z, proposals_used=used, prox_point=x_star)
    raise ProposalLimitError(
        f"no acceptance within {max_proposals} proposals "
        f"(expected about {expected_proposals(h.alpha, h.beta, eta_eff, c.shape[0]):.3g}); "
        "eta_eff may be too large for the declared curvature constants",
        proposals=max_proposals,
    )
