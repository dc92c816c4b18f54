"""Blocked sweeps: determinism, order independence, execution-mode equality."""

import math

import numpy as np
import pytest

from netgibbs import gaussian_oracle as go
from netgibbs import gibbs, graph, harness
from netgibbs import potentials as pot
from netgibbs.rgo import RGOProblem, rgo_sample
from netgibbs.streams import SIDE_X, SIDE_Y, substream


def two_node_quadratic_network(eta=1.0):
    return graph.make_network(1, 1, 1, eta, [(0, 0, 1.0)], [pot.quadratic([0.0], 2.0)], [pot.quadratic([1.0], 2.0)])


def wide_network():
    """4 x 2 bipartite network with mixed weights."""
    edges = [(0, 0, 1.0), (1, 0, 0.5), (2, 0, 0.8), (2, 1, 0.3), (3, 1, 1.0), (0, 1, 0.4)]
    f = [pot.quadratic([float(i)], 1.0 + 0.5 * i) for i in range(4)]
    g = [pot.quadratic([0.5], 2.0), pot.quadratic([-1.0], 1.5)]
    return graph.make_network(4, 2, 1, 0.7, edges, f, g)


class TestInit:
    def test_fixed_array(self):
        net = wide_network()
        st = gibbs.init(net, np.zeros((4, 1)), seed=0)
        np.testing.assert_array_equal(st.X, np.zeros((4, 1)))
        assert st.Y is None and st.k == 0

    def test_sampler_deterministic_per_seed(self):
        net = two_node_quadratic_network()
        mu0 = lambda rng: rng.normal(size=(1, 1))
        a = gibbs.init(net, mu0, seed=42)
        b = gibbs.init(net, mu0, seed=42)
        c = gibbs.init(net, mu0, seed=43)
        np.testing.assert_array_equal(a.X, b.X)
        assert not np.array_equal(a.X, c.X)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            gibbs.init(two_node_quadratic_network(), np.zeros((2, 1)), seed=0)


class TestSweep:
    def test_state_streams_address_next_sweep(self):
        net = two_node_quadratic_network()
        st = gibbs.init(net, np.array([[0.0]]), seed=11)
        a = st.stream("Y", 0).standard_normal(4)
        b = substream(11, SIDE_Y, 0, 0).standard_normal(4)
        np.testing.assert_array_equal(a, b)
        advanced, _ = gibbs.sweep(net, st)
        assert not np.array_equal(advanced.stream("Y", 0).standard_normal(4), a)

    def test_two_node_sweep_is_algorithm_one(self):
        # one sweep on the pair network must equal the two conditional draws
        # done by hand with the same per-vertex streams
        net = two_node_quadratic_network()
        st = gibbs.init(net, np.array([[5.0]]), seed=11)
        new, stats = gibbs.sweep(net, st)

        y = rgo_sample(RGOProblem(net.g[0], st.X[0], net.eta), substream(11, SIDE_Y, 0, 0))
        x = rgo_sample(RGOProblem(net.f[0], y.sample, net.eta), substream(11, SIDE_X, 0, 0))
        np.testing.assert_array_equal(new.Y[0], y.sample)
        np.testing.assert_array_equal(new.X[0], x.sample)
        assert stats.proposals_y[0] == y.proposals_used
        assert new.k == 1

    def test_zero_potentials_give_pure_gaussian_conditional(self):
        # with both potentials zero the Y draw given X is exactly N(X, eta)
        net = graph.make_network(1, 1, 1, 0.8, [(0, 0, 1.0)], [pot.zero()], [pot.zero()])
        x0 = 1.7
        draws = []
        for seed in range(4000):
            st = gibbs.init(net, np.array([[x0]]), seed=seed)
            new, _ = gibbs.sweep(net, st)
            draws.append(new.Y[0, 0])
        draws = np.array(draws)
        assert abs(draws.mean() - x0) < 4 * math.sqrt(0.8 / draws.size)
        assert abs(draws.var() - 0.8) < 4 * 0.8 * math.sqrt(2.0 / draws.size)

    def test_block_order_independence(self):
        net = wide_network()
        st = gibbs.init(net, lambda rng: rng.normal(size=(4, 1)), seed=3)
        plain, _ = gibbs.sweep(net, st)
        permuted, _ = gibbs.sweep(net, st, y_order=[1, 0], x_order=[2, 0, 3, 1])
        np.testing.assert_array_equal(plain.X, permuted.X)
        np.testing.assert_array_equal(plain.Y, permuted.Y)

    def test_vertex_error_carries_location(self):
        bad = pot.custom(lambda x: float(x @ x) / 2.0, lambda x: x, alpha=9.0, beta=9.0)
        net = graph.make_network(1, 1, 1, 1.0, [(0, 0, 1.0)], [pot.quadratic([0.0], 1.0)], [bad])
        st = gibbs.init(net, np.array([[0.0]]), seed=0)
        with pytest.raises(gibbs.VertexSampleError) as exc:
            for seed in range(300):
                gibbs.sweep(net, gibbs.GibbsState(X=st.X, Y=None, k=0, seed=seed))
        assert exc.value.side == "Y"
        assert exc.value.vertex == 0


class TestRun:
    def test_zero_sweeps_is_identity(self):
        net = two_node_quadratic_network()
        st = gibbs.init(net, np.array([[2.0]]), seed=5)
        out = gibbs.run(net, st, 0)
        assert out is st

    def test_deterministic_traces(self):
        net = wide_network()
        traces = []
        for _ in range(2):
            st = gibbs.init(net, lambda rng: rng.normal(size=(4, 1)), seed=9)
            rows = []
            gibbs.run(net, st, 10, trace_sink=lambda k, X, Y, stats: rows.append((k, X.copy(), Y.copy())))
            traces.append(rows)
        assert len(traces[0]) == 10
        for (k1, X1, Y1), (k2, X2, Y2) in zip(*traces):
            assert k1 == k2
            np.testing.assert_array_equal(X1, X2)
            np.testing.assert_array_equal(Y1, Y2)

    def test_pair_matches_oracle_moments_after_one_sweep(self):
        net = two_node_quadratic_network()
        mu0 = go.GaussianDist([5.0], [[1.0]])
        law = go.propagate_chain(net, mu0, 1)
        n_chains = 3000
        finals = np.empty(n_chains)
        for c in range(n_chains):
            st = gibbs.init(net, lambda rng: 5.0 + rng.standard_normal((1, 1)), seed=c)
            finals[c] = gibbs.run(net, st, 1).X[0, 0]
        x_mean = law.mean[0]
        x_var = law.cov[0, 0]
        assert abs(finals.mean() - x_mean) < 5 * math.sqrt(x_var / n_chains)
        assert abs(finals.var() - x_var) < 5 * x_var * math.sqrt(2.0 / n_chains)


class TestDistributedSim:
    def test_bit_identical_to_sequential(self):
        for net in (two_node_quadratic_network(), wide_network()):
            st = gibbs.init(net, lambda rng: rng.normal(size=(net.n, 1)), seed=7)
            seq = gibbs.run(net, st, 20)
            sim = gibbs.run_distributed_sim(net, st, 20)
            np.testing.assert_array_equal(seq.X, sim.X)
            np.testing.assert_array_equal(seq.Y, sim.Y)
            assert seq.k == sim.k == 20

    def test_message_counts(self):
        net = wide_network()
        st = gibbs.init(net, np.zeros((4, 1)), seed=1)
        rounds = []
        gibbs.run_distributed_sim(net, st, 3, rounds_sink=rounds.append)
        assert len(rounds) == 3
        for rec in rounds:
            assert rec.messages_x_to_y == net.n_edges
            assert rec.messages_y_to_x == net.n_edges
            assert rec.messages_x_to_y + rec.messages_y_to_x == 2 * net.n_edges
            assert len(rec.y_compute) == net.m and len(rec.x_compute) == net.n

    def test_star_hub_receives_all_leaf_messages(self):
        # 4 X-leaves, one Y-hub: the hub's inbox after round A has 4 messages
        f = [pot.quadratic([0.0], 1.0)] * 4
        net = graph.make_network(4, 1, 1, 1.0, [(i, 0, 1.0) for i in range(4)], f, [pot.quadratic([0.0], 1.0)])
        st = gibbs.init(net, np.zeros((4, 1)), seed=2)
        rounds = []
        gibbs.run_distributed_sim(net, st, 1, rounds_sink=rounds.append)
        assert rounds[0].messages_x_to_y == 4


class TestStationarity:
    def test_marginals_stay_at_target(self):
        # start the chain batch from the exact stationary X-marginal; the
        # empirical law at sweeps 1 and 20 must agree with it
        net = two_node_quadratic_network()
        pi_x = go.exact_joint(net).marginal([0])
        spec = harness.InitSpec(
            kind="gaussian", mean=np.full((1, 1), pi_x.mean[0]), std=math.sqrt(pi_x.cov[0, 0])
        )
        res = harness.run_chain_batch(net, n_chains=20000, sweeps=20, seed=31, init=spec)
        for k in (1, 20):
            draws = res.X[:, k - 1, 0, 0]
            assert abs(draws.mean() - pi_x.mean[0]) < 4 * math.sqrt(pi_x.cov[0, 0] / draws.size)
            assert abs(draws.var() - pi_x.cov[0, 0]) < 4 * pi_x.cov[0, 0] * math.sqrt(2.0 / draws.size)
