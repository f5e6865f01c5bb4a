"""Smoke tests for the python bindings: thin checks that the compiled module
loads and agrees with a handful of closed-form values. The exhaustive suites
live in the C++ tests."""

import math

import numpy as np
import pytest

import fourier_smooth as fs


def test_density_single_point_value():
    raw, clipped = fs.density(np.array([0.7]), np.array([0.7]), R=5.0)
    assert raw.shape == (1,)
    assert raw[0] == pytest.approx(5.0 / math.pi, rel=1e-12)
    assert clipped[0] == raw[0]


def test_density_matches_gradient_direction():
    rng = np.random.default_rng(3)
    sample = rng.normal(size=500)
    g = fs.density_gradient(sample, np.array([0.5]), R=3.0)
    raw_hi, _ = fs.density(sample, np.array([0.5 + 1e-5]), R=3.0)
    raw_lo, _ = fs.density(sample, np.array([0.5 - 1e-5]), R=3.0)
    fd = (raw_hi[0] - raw_lo[0]) / 2e-5
    assert g[0] == pytest.approx(fd, rel=1e-5)


def test_select_radius_rules():
    assert fs.select_radius(32, d=1, kind="ordinary", beta=3.0) == pytest.approx(2.0)
    assert fs.select_radius(55, kind="supersmooth", alpha=2.0, c1=0.5) == pytest.approx(
        math.sqrt(math.log(55.0))
    )


def test_regress_reproduces_constants():
    x = np.linspace(-2, 2, 50)
    y = np.full(50, 3.25)
    m_hat, _, reliable = fs.regress(x, y, np.array([0.3]), R=3.0)
    assert reliable[0] == 1.0
    assert m_hat[0] == pytest.approx(3.25, rel=1e-10)


def test_interval_contains_estimate():
    rng = np.random.default_rng(11)
    sample = rng.normal(size=2000)
    est, lower, upper = fs.pointwise_ci(sample, np.array([0.0]), R=3.0, tau=0.1)
    assert lower[0] <= est[0] <= upper[0]


def test_band_is_deterministic():
    rng = np.random.default_rng(5)
    sample = rng.normal(size=300)
    grid = np.linspace(-2, 2, 21)
    a = fs.bootstrap_band(sample, grid, R=2.5, tau=0.1, replicates=40, seed=9)
    b = fs.bootstrap_band(sample, grid, R=2.5, tau=0.1, replicates=40, seed=9)
    assert a["eta"] == b["eta"]
    assert np.array_equal(a["center"], b["center"])


def test_modes_of_two_cluster_sample():
    data = fs.generate_example(4, n=4000, seed=21, overrides={"h": 0.0})
    modes = fs.find_modes(data["x"], R=4.6, grid_lo=[-4.0], grid_hi=[4.0], grid_count=49)
    assert modes["k"] == 2
    found = np.sort(modes["modes"][:, 0])
    assert abs(found[0] + 2.0) < 0.15
    assert abs(found[1] - 2.0) < 0.15
    assert all(e < 0 for e in modes["hessian_top_eigs"])


def test_deconv_reduces_to_density_under_unit_transform():
    rng = np.random.default_rng(8)
    sample = rng.normal(size=100)
    thetas = np.array([-0.5, 0.0, 1.0])
    g = fs.deconv(sample, thetas, noise_kind="point", R=3.0)
    raw, _ = fs.density(sample, thetas, R=3.0)
    assert np.allclose(g, raw, atol=1e-8)


def test_ar1_determinism_and_transition_shape():
    s1 = fs.simulate_ar1(500, rho=0.6, x0=0.5, seed=7)
    s2 = fs.simulate_ar1(500, rho=0.6, x0=0.5, seed=7)
    assert np.array_equal(s1, s2)
    values, reliable = fs.transition(s1, np.array([1.0]), np.linspace(-2, 2, 11), R=3.0)
    assert values.shape == (11,)
    assert reliable.min() == 1.0


def test_conditional_modes_single_observation():
    modes, _, dyy = fs.conditional_modes(
        np.array([0.4]), np.array([2.2]), np.array([0.4]), R=3.0, y_lo=1.0, y_hi=3.5
    )
    assert modes.shape == (1,)
    assert modes[0] == pytest.approx(2.2, abs=1e-8)
    assert dyy[0] < 0


def test_hausdorff_known_value():
    assert fs.hausdorff(np.array([0.0, 2.0]), np.array([1.0])) == pytest.approx(1.0)


def test_mise_constant_offset():
    a = np.array([1.0, 2.0, 3.0])
    w = np.array([0.5, 0.5, 0.5])
    assert fs.mise(a + 0.1, a, w) == pytest.approx(0.01 * 1.5, rel=1e-12)
