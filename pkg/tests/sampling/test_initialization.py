# pylint: disable=unused-argument, unused-import, redefined-outer-name, protected-access, missing-module-docstring, missing-class-docstring
# pyright: reportGeneralTypeIssues=false

import numpy as np
import pytest
from scipy.spatial.distance import pdist, squareform

from hdp_lpcm.model import log_posterior
from hdp_lpcm.network import load_edge_list
from hdp_lpcm.sampling import SamplerConfig, initialize_state, make_rng
from hdp_lpcm.sampling.initialization import classical_mds, initial_positions, shortest_path_dissimilarities
from tests.fixtures.states import network_for, random_state


def test_hop_distances_of_a_path():
    net = load_edge_list(["1,1,2", "1,2,3"], n=4, T=1)
    dist = shortest_path_dissimilarities(np.asarray(net.adjacency[0]))

    assert dist[0, 2] == 2
    # actor 4 is unreachable and sits one hop past the largest finite distance
    assert dist[0, 3] == 3
    assert np.all(np.diagonal(dist) == 0)


def test_empty_slice_has_unit_distances():
    dist = shortest_path_dissimilarities(np.zeros((3, 3)))

    assert np.array_equal(dist, 1 - np.eye(3))


def test_classical_scaling_recovers_euclidean_configurations():
    points = np.random.default_rng(0).normal(size=(7, 2))
    coords = classical_mds(squareform(pdist(points)), 2)

    assert np.allclose(squareform(pdist(coords)), squareform(pdist(points)), atol=1e-8)


def test_classical_scaling_pads_missing_dimensions():
    coords = classical_mds(np.array([[0.0, 1.0], [1.0, 0.0]]), 3)

    assert coords.shape == (2, 3)
    assert np.allclose(coords[:, 2], 0.0)


def test_initial_positions_shape():
    net = network_for(random_state(n=6, T=3, p=2, L=2, seed=1), seed=2)
    assert initial_positions(net, 2).shape == (3, 6, 2)


def test_initial_state_is_valid():
    net = network_for(random_state(n=8, T=3, p=2, L=2, seed=3), seed=4)
    config = SamplerConfig(L=4, n_init_sweeps=20, tune_interval=5, hyperparam_values={"kappa": 9.0})

    state = initialize_state(net, config, make_rng(5))

    assert (state.T, state.n, state.p, state.L) == (3, 8, 2, 4)
    assert state.groups.lambda_ == config.init_lambda
    assert state.hyper.kappa == 9.0
    assert state.hyper.rho == pytest.approx(0.9)
    assert np.all(state.labels.Z < 4)
    # labels start constant over time, one k-means cluster per actor trajectory
    assert np.all(state.labels.Z == state.labels.Z[0])
    assert np.isfinite(log_posterior(state, net, config.hyperparams))


def test_initial_state_is_deterministic():
    net = network_for(random_state(n=5, T=2, p=2, L=2, seed=6), seed=7)
    config = SamplerConfig(L=3, n_init_sweeps=10)

    first = initialize_state(net, config, make_rng(8))
    second = initialize_state(net, config, make_rng(8))

    assert np.array_equal(first.positions.X, second.positions.X)
    assert np.array_equal(first.labels.Z, second.labels.Z)
    assert first.groups.beta0 == second.groups.beta0
