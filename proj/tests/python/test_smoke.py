import math

import numpy as np
import pytest

import spcavrp


def test_loss_basics():
    e1 = np.array([[1.0], [0.0], [0.0]])
    e2 = np.array([[0.0], [1.0], [0.0]])
    assert spcavrp.subspace_loss(e1, e1) == pytest.approx(0.0, abs=1e-12)
    assert spcavrp.subspace_loss(e1, e2) == pytest.approx(1.0)


def test_hypergeometric_and_group_size():
    assert spcavrp.hypergeom_cdf(1, 2, 2, 4) == pytest.approx(5.0 / 6.0)
    assert spcavrp.choose_b(1, 2, 2, 4) == 1
    assert spcavrp.choose_b(2, 2, 2, 4) == 3


def test_fit_recovers_a_strong_spike():
    model = spcavrp.make_single_spike(30, 5, theta=4.0)
    x = spcavrp.sample_gaussian(model, n=400, seed=11)
    est = spcavrp.fit(x, A=80, B=20, d=5, l=5, seed=3)
    assert est["support"] == [0, 1, 2, 3, 4]
    loss = spcavrp.subspace_loss(est["vectors"], model.directions(1))
    assert loss < 0.25
    assert est["scores"].shape == (30,)


def test_fit_is_deterministic():
    model = spcavrp.make_single_spike(20, 4, theta=2.0)
    x = spcavrp.sample_gaussian(model, n=100, seed=5)
    a = spcavrp.fit(x, A=30, B=10, d=4, l=4, seed=9, threads=1)
    b = spcavrp.fit(x, A=30, B=10, d=4, l=4, seed=9, threads=4)
    np.testing.assert_array_equal(a["vectors"], b["vectors"])
    np.testing.assert_array_equal(a["scores"], b["scores"])
    assert a["support"] == b["support"]


def test_deflation_orthogonality():
    model = spcavrp.make_multi_spike(
        40, supports=[[0, 1, 2, 3], [4, 5, 6, 7]], thetas=[8.0, 5.0]
    )
    x = spcavrp.sample_gaussian(model, n=300, seed=21)
    result = spcavrp.deflate_fit(x, A=60, B=20, d=4, l_per_component=[4, 4], seed=2)
    v = result["components"]
    assert abs(float(v[:, 0] @ v[:, 1])) <= 1e-10
    assert np.linalg.norm(v[:, 0]) == pytest.approx(1.0)


def test_brute_force_matches_exhaustive_fit():
    rng = np.random.default_rng(17)
    g = rng.standard_normal((12, 8))
    sigma = g.T @ g / 12
    oracle = spcavrp.brute_force_sparse_pc(sigma, 2)
    x = g  # fit from the data whose covariance is sigma (divisor n)
    est = spcavrp.fit(x, A=1, B=1, d=2, l=2, exhaustive=True)
    assert est["support"] == oracle["support"]


def test_baselines_and_diagnostics():
    model = spcavrp.make_intro_model()
    sigma = model.covariance()
    assert sigma.shape == (400, 400)
    # Diagonal thresholding on data from this model targets the wrong block.
    x = spcavrp.sample_gaussian(model, n=500, seed=33)
    support, frame = spcavrp.diagonal_threshold(x, k=10, m=1)
    rate, _ = spcavrp.support_metrics(support, list(range(10)))
    assert rate <= 0.2

    nnzr, mu = spcavrp.incoherence(model.directions(1))
    assert nnzr == 10
    assert mu == pytest.approx(1.0)


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        spcavrp.make_single_spike(3, 5, theta=1.0)
    with pytest.raises(ValueError):
        spcavrp.fit(np.zeros((4, 4)), A=1, B=1, d=5, l=1)
