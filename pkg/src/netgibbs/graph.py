"""Bipartite coupling network and reduction of block conditionals.

The joint density is exp(-sum_i f_i(x_i) - sum_j g_j(y_j)
- sum_ij w_ij |x_i - y_j|^2 / (2 eta)) with coupling weights w_ij in (0, 1]
on edges and 0 elsewhere.  Each blocked conditional collapses to a
single-center problem: the conditional of y_j given all of X is proportional
to exp(-g_j(y) - |y - c|^2 / (2 eta_eff)) with c the weighted average of the
neighbors and eta_eff = eta / (column weight sum).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .potentials import PotentialSpec


@dataclass(frozen=True)
class BipartiteNetwork:
    """Immutable bipartite network: counts, coupling weights, potentials.

    ``edges`` is a coordinate list of (i, j, weight).  Neighbor lists and
    row/column weight sums are cached at construction so conditional
    reductions cost O(degree).  Mutating a network after validation is
    unsupported.
    """

    n: int
    m: int
    d: int
    eta: float
    edges: tuple  # ((i, j, w), ...) sorted by (i, j)
    f: tuple  # n PotentialSpec for the X side
    g: tuple  # m PotentialSpec for the Y side
    row_adj: tuple = field(init=False, repr=False)  # per i: ((j, w), ...) sorted by j
    col_adj: tuple = field(init=False, repr=False)  # per j: ((i, w), ...) sorted by i
    row_sums: np.ndarray = field(init=False, repr=False)
    col_sums: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.d < 1:
            raise ValueError(f"need n, m, d >= 1 (got n={self.n}, m={self.m}, d={self.d})")
        if len(self.f) != self.n:
            raise ValueError(f"expected {self.n} X-side potentials, got {len(self.f)}")
        if len(self.g) != self.m:
            raise ValueError(f"expected {self.m} Y-side potentials, got {len(self.g)}")
        seen = set()
        for i, j, w in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.m):
                raise ValueError(f"edge ({i}, {j}) out of range for {self.n}x{self.m} network")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            if w == 0:
                raise ValueError(f"edge ({i}, {j}) has weight 0; omit the edge instead")
            seen.add((i, j))
        rows = [[] for _ in range(self.n)]
        cols = [[] for _ in range(self.m)]
        rsum = np.zeros(self.n)
        csum = np.zeros(self.m)
        for i, j, w in sorted(self.edges):
            rows[i].append((j, float(w)))
            cols[j].append((i, float(w)))
            rsum[i] += w
            csum[j] += w
        object.__setattr__(self, "edges", tuple(sorted((i, j, float(w)) for i, j, w in self.edges)))
        object.__setattr__(self, "row_adj", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "col_adj", tuple(tuple(c) for c in cols))
        object.__setattr__(self, "row_sums", rsum)
        object.__setattr__(self, "col_sums", csum)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def make_network(n, m, d, eta, edges, f: Sequence[PotentialSpec], g: Sequence[PotentialSpec]) -> BipartiteNetwork:
    return BipartiteNetwork(n=int(n), m=int(m), d=int(d), eta=float(eta), edges=tuple(edges), f=tuple(f), g=tuple(g))


@dataclass
class ValidationReport:
    ok: bool
    problems: list

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(self.problems)


def validate(net: BipartiteNetwork) -> ValidationReport:
    """Check coupling-weight range, vertex regularity, and eta > 0.

    Returns a report instead of raising: every isolated vertex and every
    out-of-range weight is listed.
    """
    problems = []
    if not net.eta > 0:
        problems.append(f"eta must be > 0, got {net.eta}")
    for i, j, w in net.edges:
        if not (0.0 < w <= 1.0):
            problems.append(f"edge ({i}, {j}) weight {w} outside (0, 1]")
    for i in range(net.n):
        if not net.row_sums[i] > 0:
            problems.append(f"X-vertex {i} is isolated (row weight sum {net.row_sums[i]})")
    for j in range(net.m):
        if not net.col_sums[j] > 0:
            problems.append(f"Y-vertex {j} is isolated (column weight sum {net.col_sums[j]})")
    return ValidationReport(ok=not problems, problems=problems)


def weighted_center(pairs, values: np.ndarray):
    """Weighted average of chosen vertex samples: (sum w_k v_k / sum w_k, sum w_k).

    ``pairs`` is an ordered (index, weight) sequence; the accumulation order
    is part of the bit-level contract shared with the message-passing
    simulator.
    """
    total = 0.0
    acc = None
    for idx, w in pairs:
        contrib = w * values[idx]
        acc = contrib if acc is None else acc + contrib
        total += w
    if acc is None or total <= 0:
        raise ValueError("no positive-weight neighbors")
    return acc / total, total


def conditional_problem_y(net: BipartiteNetwork, j: int, X: np.ndarray):
    """Reduce the conditional of Y-vertex j given X to (center, eta_eff, potential).

    The conditional density is proportional to
    exp(-g_j(y) - |y - center|^2 / (2 eta_eff)) with
    center = sum_i w_ij X_i / sum_i w_ij and eta_eff = eta / sum_i w_ij.
    """
    X = np.asarray(X, dtype=float)
    if X.shape != (net.n, net.d):
        raise ValueError(f"X must have shape ({net.n}, {net.d}), got {X.shape}")
    if not net.col_adj[j]:
        raise ValueError(f"Y-vertex {j} is isolated; conditional is improper")
    center, total = weighted_center(net.col_adj[j], X)
    return center, net.eta / total, net.g[j]


def conditional_problem_x(net: BipartiteNetwork, i: int, Y: np.ndarray):
    """Mirror of conditional_problem_y for X-vertex i given Y."""
    Y = np.asarray(Y, dtype=float)
    if Y.shape != (net.m, net.d):
        raise ValueError(f"Y must have shape ({net.m}, {net.d}), got {Y.shape}")
    if not net.row_adj[i]:
        raise ValueError(f"X-vertex {i} is isolated; conditional is improper")
    center, total = weighted_center(net.row_adj[i], Y)
    return center, net.eta / total, net.f[i]
