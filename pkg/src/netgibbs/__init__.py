"""Blocked Gibbs sampling for coupled log-concave distributions on bipartite networks.

The joint density couples per-vertex strongly convex potentials through
quadratic edge terms; blocked sweeps alternate exact conditional draws of
the two vertex sides.  The package bundles the sampler (sequential and
simulated message-passing execution), an exact Gaussian ground-truth oracle
for quadratic networks, calculators for every provable contraction rate and
small-coupling approximation bound, empirical estimators, and a
config-driven experiment harness.
"""

__version__ = "0.1.0"

from .gaussian_oracle import GaussianDist, exact_joint, kl, kl_decay_x, propagate_chain, tv_1d, w2_squared
from .gibbs import GibbsState, SweepStats, init, run, run_distributed_sim, sweep
from .graph import BipartiteNetwork, conditional_problem_x, conditional_problem_y, make_network, validate
from .potentials import PotentialSpec, custom, prox, quadratic, shift_to_common_minimizer, zero
from .rgo import RGOProblem, RGOResult, expected_proposals, rgo_sample
from .rates import (
    NetworkSummary,
    RateReport,
    bipartite_C,
    build_rate_report,
    c_t,
    convex_rate_bound,
    mixing_o_form,
    mixing_sweeps_exact_rgo,
    smoothing_kl_bound,
    shared_minimizer_kl_bound,
    smoothing_tv_bound,
    shared_minimizer_tv_bound,
    two_node_rate,
)
from .metrics import EmpiricalGaussian, Quadrature1D, empirical_kl_vs_gaussian, fit_gaussian, marginal_density_1d, tv_quadrature

__all__ = [
    "__version__",
    "BipartiteNetwork",
    "EmpiricalGaussian",
    "GaussianDist",
    "GibbsState",
    "NetworkSummary",
    "PotentialSpec",
    "Quadrature1D",
    "RGOProblem",
    "RGOResult",
    "RateReport",
    "SweepStats",
    "bipartite_C",
    "build_rate_report",
    "c_t",
    "conditional_problem_x",
    "conditional_problem_y",
    "convex_rate_bound",
    "custom",
    "empirical_kl_vs_gaussian",
    "exact_joint",
    "expected_proposals",
    "fit_gaussian",
    "init",
    "kl",
    "kl_decay_x",
    "make_network",
    "marginal_density_1d",
    "mixing_o_form",
    "mixing_sweeps_exact_rgo",
    "propagate_chain",
    "prox",
    "quadratic",
    "rgo_sample",
    "run",
    "run_distributed_sim",
    "shift_to_common_minimizer",
    "smoothing_kl_bound",
    "shared_minimizer_kl_bound",
    "smoothing_tv_bound",
    "shared_minimizer_tv_bound",
    "sweep",
    "tv_1d",
    "tv_quadrature",
    "two_node_rate",
    "validate",
    "w2_squared",
    "zero",
]
