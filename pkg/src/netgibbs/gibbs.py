"""Blocked Gibbs sweeps over a bipartite network.

One sweep draws every Y-vertex from its conditional given the current X
block, then every X-vertex from its conditional given that new Y block.
Each vertex update consumes a dedicated RNG stream addressed by
(seed, side, vertex, sweep), so updates within a block commute and the
sequential and message-passing executions produce bit-identical states.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .graph import BipartiteNetwork, conditional_problem_x, conditional_problem_y, weighted_center
from .rgo import RGOProblem, rgo_sample
from .streams import INIT, SIDE_X, SIDE_Y, substream

Mu0 = Union[np.ndarray, Callable[[np.random.Generator], np.ndarray]]


class VertexSampleError(RuntimeError):
    """A conditional draw failed; carries side, vertex index and sweep."""

    def __init__(self, side: str, vertex: int, k: int, cause: Exception):
        super().__init__(f"{side}-vertex {vertex} failed at sweep {k}: {cause}")
        self.side = side
        self.vertex = vertex
        self.k = k


@dataclass(frozen=True)
class GibbsState:
    """Sampler state after k sweeps: X is set at k=0, Y only from k>=1.

    Per-vertex RNG streams are part of the state in the functional sense:
    ``stream(side, vertex)`` returns the generator the next sweep will
    consume for that vertex, derived purely from (seed, side, vertex, k).
    """

    X: np.ndarray
    Y: Optional[np.ndarray]
    k: int
    seed: int

    def stream(self, side: str, vertex: int) -> np.random.Generator:
        code = {"X": SIDE_X, "Y": SIDE_Y}[side]
        return substream(self.seed, code, vertex, self.k)


@dataclass(frozen=True)
class SweepStats:
    k: int
    proposals_y: np.ndarray
    proposals_x: np.ndarray
    y_seconds: float
    x_seconds: float


@dataclass(frozen=True)
class SweepRounds:
    """Bookkeeping of one simulated synchronous sweep (rounds A-D)."""

    k: int
    messages_x_to_y: int
    messages_y_to_x: int
    y_compute: tuple  # ((vertex, proposals_used), ...)
    x_compute: tuple


def init(net: BipartiteNetwork, mu0: Mu0, seed: int) -> GibbsState:
    """Initial state: X drawn from mu0 (array or sampler callable), Y unset."""
    if callable(mu0):
        X = np.asarray(mu0(substream(seed, INIT)), dtype=float)
    else:
        X = np.array(mu0, dtype=float, copy=True)
    if X.shape != (net.n, net.d):
        raise ValueError(f"initial X must have shape ({net.n}, {net.d}), got {X.shape}")
    return GibbsState(X=X, Y=None, k=0, seed=int(seed))


def sweep(
    net: BipartiteNetwork,
    state: GibbsState,
    y_order: Optional[Sequence[int]] = None,
    x_order: Optional[Sequence[int]] = None,
):
    """One full blocked sweep; returns (new state, per-vertex stats).

    All Y updates read the same incoming X block and all X updates read the
    same new Y block, so ``y_order``/``x_order`` (scheduling hooks, default
    ascending) cannot change the result.
    """
    if y_order is not None and sorted(y_order) != list(range(net.m)):
        raise ValueError("y_order must be a permutation of the Y-vertex indices")
    if x_order is not None and sorted(x_order) != list(range(net.n)):
        raise ValueError("x_order must be a permutation of the X-vertex indices")
    k = state.k
    X = state.X
    Y_new = np.empty((net.m, net.d))
    prop_y = np.zeros(net.m, dtype=np.int64)
    prop_x = np.zeros(net.n, dtype=np.int64)

    t0 = time.perf_counter()
    for j in y_order if y_order is not None else range(net.m):
        center, eta_eff, pot = conditional_problem_y(net, j, X)
        try:
            res = rgo_sample(RGOProblem(pot, center, eta_eff), state.stream("Y", j))
        except Exception as e:
            raise VertexSampleError("Y", j, k, e) from e
        Y_new[j] = res.sample
        prop_y[j] = res.proposals_used
    t1 = time.perf_counter()

    X_new = np.empty((net.n, net.d))
    for i in x_order if x_order is not None else range(net.n):
        center, eta_eff, pot = conditional_problem_x(net, i, Y_new)
        try:
            res = rgo_sample(RGOProblem(pot, center, eta_eff), state.stream("X", i))
        except Exception as e:
            raise VertexSampleError("X", i, k, e) from e
        X_new[i] = res.sample
        prop_x[i] = res.proposals_used
    t2 = time.perf_counter()

    stats = SweepStats(k=k + 1, proposals_y=prop_y, proposals_x=prop_x, y_seconds=t1 - t0, x_seconds=t2 - t1)
    return GibbsState(X=X_new, Y=Y_new, k=k + 1, seed=state.seed), stats


def run(net: BipartiteNetwork, state: GibbsState, K: int, trace_sink=None) -> GibbsState:
    """Apply exactly K sweeps (K=0 leaves the state untouched).

    After each sweep, ``trace_sink(k, X, Y, stats)`` is invoked if given.
    Sink errors propagate; records already emitted stay with the sink.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    for _ in range(K):
        state, stats = sweep(net, state)
        if trace_sink is not None:
            trace_sink(state.k, state.X, state.Y, stats)
    return state


def run_distributed_sim(net: BipartiteNetwork, state: GibbsState, K: int, rounds_sink=None) -> GibbsState:
    """K sweeps executed as a synchronous message-passing simulation.

    Round A: every X-vertex sends its sample along its edges.  Round B: every
    Y-vertex averages its inbox and draws its conditional sample.  Rounds C
    and D mirror A and B toward the X side.  Inboxes are accumulated in
    sender order, so the arithmetic (and hence the final state) is
    bit-identical to ``run`` with the same seed.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    for _ in range(K):
        k = state.k

        # Round A: X -> Y messages along edges.
        inbox_y = [[] for _ in range(net.m)]
        msgs_xy = 0
        for i in range(net.n):
            for j, w in net.row_adj[i]:
                inbox_y[j].append((i, w, state.X[i]))
                msgs_xy += 1

        # Round B: each Y-vertex computes its center locally and samples.
        Y_new = np.empty((net.m, net.d))
        y_compute = []
        for j in range(net.m):
            if not inbox_y[j]:
                raise VertexSampleError("Y", j, k, ValueError("no incoming messages; vertex is isolated"))
            payload = {i: x for i, _, x in inbox_y[j]}
            center, total = weighted_center([(i, w) for i, w, _ in inbox_y[j]], payload)
            try:
                res = rgo_sample(RGOProblem(net.g[j], center, net.eta / total), state.stream("Y", j))
            except Exception as e:
                raise VertexSampleError("Y", j, k, e) from e
            Y_new[j] = res.sample
            y_compute.append((j, res.proposals_used))

        # Round C: Y -> X messages.
        inbox_x = [[] for _ in range(net.n)]
        msgs_yx = 0
        for j in range(net.m):
            for i, w in net.col_adj[j]:
                inbox_x[i].append((j, w, Y_new[j]))
                msgs_yx += 1

        # Round D: X-vertex updates.
        X_new = np.empty((net.n, net.d))
        x_compute = []
        for i in range(net.n):
            if not inbox_x[i]:
                raise VertexSampleError("X", i, k, ValueError("no incoming messages; vertex is isolated"))
            payload = {j: y for j, _, y in inbox_x[i]}
            center, total = weighted_center([(j, w) for j, w, _ in inbox_x[i]], payload)
            try:
                res = rgo_sample(RGOProblem(net.f[i], center, net.eta / total), state.stream("X", i))
            except Exception as e:
                raise VertexSampleError("X", i, k, e) from e
            X_new[i] = res.sample
            x_compute.append((i, res.proposals_used))

        state = GibbsState(X=X_new, Y=Y_new, k=k + 1, seed=state.seed)
        if rounds_sink is not None:
            rounds_sink(
                SweepRounds(
                    k=state.k,
                    messages_x_to_y=msgs_xy,
                    messages_y_to_x=msgs_yx,
                    y_compute=tuple(y_compute),
                    x_compute=tuple(x_compute),
                )
            )
    return state
