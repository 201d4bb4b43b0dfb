import math

import numpy as np
import pytest

import gsobe


def test_dispersion_symbol_values():
    assert gsobe.dispersion_symbol(1.0, -1) == pytest.approx(1.0, abs=1e-15)
    assert gsobe.dispersion_symbol(2.0, -1) == pytest.approx(2.0 * math.sqrt(13.0), rel=1e-15)
    xs = np.linspace(-30.0, 30.0, 6001)
    for k in (-1, 1):
        sym = gsobe.dispersion_symbol(xs, k)
        cubic = np.abs(xs) ** 3 + 0.5 * k * np.abs(xs)
        assert np.max(np.abs(sym - cubic)) <= 1.0
    assert gsobe.v2_multiplier(0.0, -1) == 0.0
    assert gsobe.v2_multiplier(1.0, -1) == pytest.approx(1.0, abs=1e-15)


def test_linear_evolve_rotates_single_mode():
    n, length = 32, 2.0 * math.pi
    x = gsobe.grid_points(n, length)
    phi = np.cos(x)
    psi = np.zeros(n)
    for k in (-1, 1):
        freq = gsobe.dispersion_symbol(1.0, k)
        for t in (0.3, 1.7):
            u = gsobe.linear_evolve(phi, psi, t, k=k, length=length)
            assert np.max(np.abs(u - math.cos(t * freq) * phi)) <= 1e-13


def test_linear_state_returns_velocity():
    n = 32
    x = gsobe.grid_points(n, 2.0 * math.pi)
    u, ut = gsobe.linear_state(np.cos(x), np.zeros(n), 0.0)
    assert np.max(np.abs(u - np.cos(x))) <= 1e-14
    assert np.max(np.abs(ut)) <= 1e-13


def test_evolve_zero_data_and_mean_conservation():
    n = 32
    zero = np.zeros(n)
    out = gsobe.evolve(zero, zero, t_final=0.1, dt=0.01)
    assert not out["blew_up"]
    assert np.max(np.abs(out["u"])) == 0.0

    x = gsobe.grid_points(n, 2.0 * math.pi)
    phi = 0.05 + 0.02 * np.cos(x)
    out = gsobe.evolve(phi, zero, t_final=0.2, dt=0.01)
    means = out["u"].mean(axis=1)
    assert np.max(np.abs(means - means[0])) <= 1e-9


def test_duhamel_constant_forcing_closed_form():
    n, length, t, amp = 32, 2.0 * math.pi, 0.8, 0.75
    x = gsobe.grid_points(n, length)
    forcing = np.tile(amp * np.cos(x), (65, 1))
    got = gsobe.duhamel_integral(forcing, t, k=-1, length=length)
    phi = gsobe.dispersion_symbol(1.0, -1)
    want = (1.0 - math.cos(t * phi)) * amp / phi**2 * np.cos(x)
    assert np.max(np.abs(got - want)) <= 1e-8


def test_picard_gaps_contract_on_small_data():
    n = 32
    x = gsobe.grid_points(n, 2.0 * math.pi)
    phi = 1e-2 * np.cos(x)
    psi = 1e-2 * np.sin(x)
    out = gsobe.picard_gaps(phi, psi, T=0.1, n_iter=3, n_steps=16)
    assert not out["diverging"]
    gaps = out["gaps"]
    assert len(gaps) == 3
    assert gaps[1] <= 0.5 * gaps[0]
    assert gaps[2] <= 0.5 * gaps[1]


def test_resonance_spot_values_and_closed_form():
    assert gsobe.resonance_from_l(1.0, 2.0, -3.0, "A/a") == 18.0
    assert gsobe.resonance_closed_form(1.0, 2.0, -3.0, "A/a") == 18.0
    assert gsobe.resonance_from_l(2.0, -1.0, -1.0, "B/b") == -7.0
    rng = np.random.default_rng(5)
    for _ in range(50):
        x1 = rng.uniform(0.0, 4.0)
        x2 = rng.uniform(-x1, 0.0)
        x3 = -(x1 + x2)
        h = gsobe.resonance_from_l(x1, x2, x3, "B/b")
        closed = gsobe.resonance_closed_form(x1, x2, x3, "B/b")
        assert closed == pytest.approx(h, rel=1e-9, abs=1e-12)
    with pytest.raises(ValueError):
        gsobe.resonance_from_l(1.0, 2.0, -3.0, "Q/x")


def test_constant_sweep_deterministic():
    a = gsobe.constant_sweep("bilinear_x2", 0.0, 0.55, n_samples=10, sizes=[16], seed=3)
    b = gsobe.constant_sweep("bilinear_x2", 0.0, 0.55, n_samples=10, sizes=[16], seed=3)
    assert a["max_ratio"] == b["max_ratio"]
    assert a["median_ratio"] == b["median_ratio"]
    assert 0.0 < a["median_ratio"][0] <= a["max_ratio"][0]
    assert gsobe.default_b0("bilinear_x2", 0.7) == pytest.approx(0.75 - 0.7 / 3.0, abs=1e-15)


def test_multilinear_functional_trivial_cases():
    legs = [np.zeros((8, 8), dtype=complex) for _ in range(3)]
    assert gsobe.multilinear_functional(legs, "bilinear_x2", 0.7, 0.55) == 0.0
    legs = [np.ones((8, 8), dtype=complex) for _ in range(3)]
    assert gsobe.multilinear_functional(legs, "bilinear_x2", 0.7, 0.55) > 0.0


def test_integral_bounds():
    out = gsobe.two_center_bound(2.0, 1.0, 0.0, 0.0)
    assert out["rhs"] == pytest.approx(1.0, abs=1e-15)
    assert out["constant"] == pytest.approx(2.0, abs=1e-6)
    out = gsobe.poly_level_bound([0.0, 0.0, 1.0], 2.0)
    assert out["constant"] == pytest.approx(math.pi / math.sqrt(2.0), abs=1e-7)


def test_reduction_replay():
    assert gsobe.canonical_theta() == pytest.approx(-1.0 / 18.0, abs=1e-16)
    assert gsobe.reduction_residual_zero()
