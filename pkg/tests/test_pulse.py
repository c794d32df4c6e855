import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from khhg.errors import ValidationError
from khhg.pulse import QuiverTrajectory, Z_HAT, alpha, sample_grid
from khhg.units import LaserParams


def make_finite(n_cycles=10, ellipticity=0.0):
    params = LaserParams(800.0, 3.16e13, n_cycles)
    return QuiverTrajectory.finite_sin2(params, ellipticity=ellipticity)


def test_finite_zero_at_endpoints():
    traj = make_finite()
    assert np.allclose(alpha(traj, 0.0), 0.0)
    assert np.allclose(alpha(traj, traj.duration_T), 0.0, atol=1e-12)


def test_finite_midpulse_envelope_is_one():
    traj = make_finite()
    T = traj.duration_T
    a0 = np.linalg.norm(traj.alpha0)
    expected = a0 * math.sin(traj.omega_L * T / 2.0)
    assert alpha(traj, T / 2.0)[2] == pytest.approx(expected, rel=1e-12)


def test_monochromatic_peak():
    traj = QuiverTrajectory.monochromatic(1.0, omega_L=0.5)
    t = math.pi / (2.0 * 0.5)
    assert np.allclose(alpha(traj, t), Z_HAT, atol=1e-12)


def test_finite_domain_error():
    traj = make_finite()
    with pytest.raises(ValidationError):
        alpha(traj, -1.0)
    with pytest.raises(ValidationError):
        alpha(traj, traj.duration_T + 1.0)


def test_sample_grid_structure():
    traj = make_finite()
    t, vals = sample_grid(traj, 3)
    T = traj.duration_T
    assert np.allclose(t, [0.0, T / 2.0, T])
    assert vals.shape == (3, 3)
    with pytest.raises(ValidationError):
        sample_grid(traj, 1)


def test_sample_grid_spacing_and_bound():
    traj = make_finite()
    n = 257
    t, vals = sample_grid(traj, n)
    assert np.allclose(np.diff(t), traj.duration_T / (n - 1), rtol=1e-13)
    a0 = np.linalg.norm(traj.alpha0)
    assert np.all(np.linalg.norm(vals, axis=1) <= a0 * (1 + 1e-12))


def test_sample_grid_deterministic():
    traj = make_finite()
    t1, v1 = sample_grid(traj, 101)
    t2, v2 = sample_grid(traj, 101)
    assert np.array_equal(t1, t2) and np.array_equal(v1, v2)


@pytest.mark.parametrize("n_cycles", [2, 4, 10])
def test_half_period_antisymmetry(n_cycles):
    # alpha(T - t) = -alpha(t) for even cycle counts: the sin^2 envelope
    # is symmetric about T/2 and the carrier flips sign there
    traj = make_finite(n_cycles=n_cycles)
    T = traj.duration_T
    t = np.linspace(0.0, T, 401)
    assert np.allclose(alpha(traj, T - t), -alpha(traj, t), atol=1e-12)


def test_ellipticity_linear_limit():
    lin = make_finite(ellipticity=0.0)
    t = np.linspace(0.0, lin.duration_T, 57)
    a_lin = alpha(lin, t)
    assert np.allclose(a_lin[:, 0], 0.0) and np.allclose(a_lin[:, 1], 0.0)


def test_circular_constant_magnitude():
    traj = QuiverTrajectory.monochromatic(2.0, omega_L=0.3, ellipticity=1.0)
    t = np.linspace(0.0, traj.span, 100)
    mags = np.linalg.norm(alpha(traj, t), axis=1)
    assert np.allclose(mags, mags[0], rtol=1e-12)


@given(st.floats(min_value=0.0, max_value=1.0))
def test_ellipticity_magnitude_bound(eps):
    traj = QuiverTrajectory.monochromatic(3.0, omega_L=0.2, ellipticity=eps)
    t = np.linspace(0.0, traj.span, 64)
    mags = np.linalg.norm(alpha(traj, t), axis=1)
    assert np.all(mags <= 3.0 * (1 + 1e-12))


def test_two_color_components():
    w = 0.5
    traj = QuiverTrajectory.two_color(2.0, 0.6, omega_L=w, phi=0.25)
    t = 0.7
    expected = 2.0 * math.sin(w * t) + 0.6 * math.sin(2 * w * t + 0.25)
    assert alpha(traj, t)[2] == pytest.approx(expected, rel=1e-12)


def test_two_color_magnitude_bound():
    traj = QuiverTrajectory.two_color(2.0, 0.6, omega_L=0.5)
    t = np.linspace(0.0, traj.span, 300)
    mags = np.linalg.norm(alpha(traj, t), axis=1)
    assert np.all(mags <= 2.6 * (1 + 1e-12))


def test_trajectory_validation():
    with pytest.raises(ValidationError):
        QuiverTrajectory(kind="sawtooth", alpha0=1.0, omega_L=0.5)
    with pytest.raises(ValidationError):
        QuiverTrajectory(kind="finite_sin2", alpha0=1.0, omega_L=0.5)  # no T
    with pytest.raises(ValidationError):
        QuiverTrajectory(kind="monochromatic", alpha0=1.0, omega_L=0.5, ellipticity=1.5)
    with pytest.raises(ValidationError):
        QuiverTrajectory(kind="two_color", alpha0=1.0, omega_L=0.5)  # no second color
