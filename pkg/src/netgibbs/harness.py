"""Chain-batched execution engine for the experiment harness.

Runs many independent replicas of the blocked Gibbs chain at once,
vectorizing every vertex update across chains.  Chains are processed in
fixed-size blocks; each (block, side, vertex, sweep) address gets its own
RNG stream, so results are byte-reproducible and independent of how many
worker processes execute the blocks.  Only quadratic and zero potentials are
supported here (the config format cannot express anything else); arbitrary
potentials go through the single-chain API in ``gibbs``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import BipartiteNetwork
from .potentials import QUADRATIC, ZERO
from .rgo import ENVELOPE_SLACK, DEFAULT_MAX_PROPOSALS, EnvelopeError, ProposalLimitError
from .streams import INIT, SIDE_X, SIDE_Y, substream

BLOCK_SIZE = 2048  # chains per block; fixed so results do not depend on worker count


@dataclass(frozen=True)
class _VertexParams:
    """Picklable quadratic/zero potential parameters for one vertex."""

    is_zero: bool
    u: Optional[np.ndarray]
    eigvals: Optional[np.ndarray]
    eigvecs: Optional[np.ndarray]
    alpha: float

    @classmethod
    def from_spec(cls, spec, d: int) -> "_VertexParams":
        if spec.kind == ZERO:
            return cls(is_zero=True, u=None, eigvals=None, eigvecs=None, alpha=0.0)
        if spec.kind != QUADRATIC:
            raise ValueError(f"chain-batch engine supports quadratic/zero potentials, not {spec.kind!r}")
        if spec.center.shape[0] != d:
            raise ValueError(f"potential dimension {spec.center.shape[0]} does not match d={d}")
        lam, vec = np.linalg.eigh(spec.precision)
        return cls(is_zero=False, u=spec.center.copy(), eigvals=lam, eigvecs=vec, alpha=float(lam[0]))


@dataclass(frozen=True)
class _BatchNet:
    """Network reduced to plain arrays so worker processes can rebuild nothing."""

    n: int
    m: int
    d: int
    eta: float
    n_edges: int
    col_adj: tuple
    row_adj: tuple
    col_sums: np.ndarray
    row_sums: np.ndarray
    f: tuple
    g: tuple

    @classmethod
    def from_network(cls, net: BipartiteNetwork) -> "_BatchNet":
        return cls(
            n=net.n,
            m=net.m,
            d=net.d,
            eta=net.eta,
            n_edges=net.n_edges,
            col_adj=net.col_adj,
            row_adj=net.row_adj,
            col_sums=net.col_sums.copy(),
            row_sums=net.row_sums.copy(),
            f=tuple(_VertexParams.from_spec(p, net.d) for p in net.f),
            g=tuple(_VertexParams.from_spec(p, net.d) for p in net.g),
        )


@dataclass(frozen=True)
class InitSpec:
    """Initial X-block law: iid Gaussian per coordinate, or a fixed matrix."""

    kind: str  # "gaussian" | "fixed"
    mean: Optional[np.ndarray] = None  # (n, d) for gaussian
    std: float = 1.0
    x0: Optional[np.ndarray] = None  # (n, d) for fixed


@dataclass
class BatchResult:
    """Per-sweep history over all chains: index [chain, sweep-1, vertex, coord]."""

    X: np.ndarray  # (C, K, n, d)
    Y: np.ndarray  # (C, K, m, d)
    proposals_x: np.ndarray  # (C, K, n)
    proposals_y: np.ndarray  # (C, K, m)
    messages_per_sweep: Optional[int] = None  # set in distributed-sim mode


def _values(params: _VertexParams, z: np.ndarray) -> np.ndarray:
    """Potential values for a (chains, d) batch."""
    if params.is_zero:
        return np.zeros(z.shape[0])
    r = (z - params.u) @ params.eigvecs
    return 0.5 * np.sum(r * r * params.eigvals, axis=1)


def _prox(params: _VertexParams, c: np.ndarray, eta_eff: float) -> np.ndarray:
    if params.is_zero:
        return c
    w = (c - params.u) @ params.eigvecs / eta_eff
    return params.u + (w / (params.eigvals + 1.0 / eta_eff)) @ params.eigvecs.T


def _batch_update(params: _VertexParams, centers: np.ndarray, eta_eff: float, rng, max_proposals: int):
    """Vectorized rejection sampling of one vertex across all chains in a block.

    Equivalent to running ``rgo.rgo_sample`` per chain: proposals come from
    the Gaussian centered at the prox point whose precision matches the
    strong-convexity minorant, and each chain keeps drawing until accepted.
    """
    chains = centers.shape[0]
    x_star = _prox(params, centers, eta_eff)
    a_prime = params.alpha + 1.0 / eta_eff
    sd = 1.0 / math.sqrt(a_prime)
    dxc = x_star - centers
    h_star = _values(params, x_star) + np.sum(dxc * dxc, axis=1) / (2.0 * eta_eff)

    out = np.empty_like(centers)
    proposals = np.zeros(chains, dtype=np.int64)
    active = np.arange(chains)
    rounds = 0
    while active.size:
        rounds += 1
        if rounds > max_proposals:
            raise ProposalLimitError(
                f"{active.size} chains had no acceptance within {max_proposals} proposals",
                proposals=max_proposals,
            )
        z = x_star[active] + sd * rng.standard_normal((active.size, centers.shape[1]))
        dzc = z - centers[active]
        total = _values(params, z) + np.sum(dzc * dzc, axis=1) / (2.0 * eta_eff)
        dzx = z - x_star[active]
        gap = total - h_star[active] - 0.5 * a_prime * np.sum(dzx * dzx, axis=1)
        if float(gap.min(initial=0.0)) < -ENVELOPE_SLACK:
            raise EnvelopeError("acceptance probability above 1 in batch update")
        accept = rng.random(active.size) <= np.exp(-np.maximum(gap, 0.0))
        proposals[active] += 1
        taken = active[accept]
        out[taken] = z[accept]
        active = active[~accept]
    return out, proposals


def _block_centers(adj, values: np.ndarray):
    """Weighted neighbor average and weight total for a (chains, n_src, d) batch."""
    acc = None
    total = 0.0
    for idx, w in adj:
        contrib = w * values[:, idx, :]
        acc = contrib if acc is None else acc + contrib
        total += w
    return acc / total, total


def _run_block(batch_net: _BatchNet, init: InitSpec, seed: int, block: int, chains: int, sweeps: int, max_proposals: int):
    net = batch_net
    if init.kind == "gaussian":
        rng = substream(seed, block, INIT, 0, 0)
        X = init.mean + init.std * rng.standard_normal((chains, net.n, net.d))
    elif init.kind == "fixed":
        X = np.broadcast_to(init.x0, (chains, net.n, net.d)).copy()
    else:
        raise ValueError(f"unknown init kind {init.kind!r}")

    Xh = np.empty((chains, sweeps, net.n, net.d))
    Yh = np.empty((chains, sweeps, net.m, net.d))
    px = np.zeros((chains, sweeps, net.n), dtype=np.int64)
    py = np.zeros((chains, sweeps, net.m), dtype=np.int64)
    Y = np.empty((chains, net.m, net.d))
    for k in range(sweeps):
        for j in range(net.m):
            centers, total = _block_centers(net.col_adj[j], X)
            rng = substream(seed, block, SIDE_Y, j, k)
            Y[:, j, :], py[:, k, j] = _batch_update(net.g[j], centers, net.eta / total, rng, max_proposals)
        X_new = np.empty_like(X)
        for i in range(net.n):
            centers, total = _block_centers(net.row_adj[i], Y)
            rng = substream(seed, block, SIDE_X, i, k)
            X_new[:, i, :], px[:, k, i] = _batch_update(net.f[i], centers, net.eta / total, rng, max_proposals)
        X = X_new
        Xh[:, k] = X
        Yh[:, k] = Y
    return Xh, Yh, px, py


def run_chain_batch(
    net: BipartiteNetwork,
    n_chains: int,
    sweeps: int,
    seed: int,
    init: InitSpec,
    distributed: bool = False,
    threads: int = 1,
    max_proposals: int = DEFAULT_MAX_PROPOSALS,
) -> BatchResult:
    """Run n_chains independent chains for ``sweeps`` full sweeps.

    ``threads`` only controls how many processes execute the fixed chain
    blocks (0 = one per CPU); it never changes the output.  In
    distributed-sim mode the samples are identical and the synchronous
    message schedule (two messages per edge per sweep) is reported.
    """
    if n_chains < 1 or sweeps < 0:
        raise ValueError("need n_chains >= 1 and sweeps >= 0")
    batch_net = _BatchNet.from_network(net)
    blocks = []
    lo = 0
    b = 0
    while lo < n_chains:
        hi = min(lo + BLOCK_SIZE, n_chains)
        blocks.append((b, hi - lo))
        lo = hi
        b += 1
    args = [(batch_net, init, seed, blk, cnt, sweeps, max_proposals) for blk, cnt in blocks]
    if threads == 0:
        import os

        threads = os.cpu_count() or 1
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(args))) as pool:
            parts = list(pool.map(_run_block_star, args))
    else:
        parts = [_run_block(*a) for a in args]
    Xh = np.concatenate([p[0] for p in parts], axis=0)
    Yh = np.concatenate([p[1] for p in parts], axis=0)
    px = np.concatenate([p[2] for p in parts], axis=0)
    py = np.concatenate([p[3] for p in parts], axis=0)
    return BatchResult(
        X=Xh,
        Y=Yh,
        proposals_x=px,
        proposals_y=py,
        messages_per_sweep=2 * net.n_edges if distributed else None,
    )


def _run_block_star(args):
    return _run_block(*args)
