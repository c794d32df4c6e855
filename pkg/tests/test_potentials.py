import math

import numpy as np
import pytest

from khhg.errors import ValidationError
from khhg.potentials import (
    FOURIER_NORM,
    RadialFormFactor,
    RadialPotential,
    coulomb_Vk,
    density_shifted,
    hydrogen_F0,
    hydrogen_density,
    tabulated_form_factor,
)


def test_coulomb_reference_value():
    # oracle: -4*pi/(2*pi)^(3/2) evaluated independently
    assert coulomb_Vk(1.0, 1.0) == pytest.approx(-0.79788, abs=1e-5)


def test_coulomb_scalings():
    assert coulomb_Vk(1.0, 2.0) == pytest.approx(coulomb_Vk(1.0, 1.0) / 4.0, rel=1e-14)
    assert coulomb_Vk(2.0, 1.0) == pytest.approx(2.0 * coulomb_Vk(1.0, 1.0), rel=1e-14)


def test_coulomb_singularity_and_sign():
    with pytest.raises(ValidationError):
        coulomb_Vk(1.0, 0.0)
    k = np.geomspace(1e-3, 100, 50)
    assert np.all(coulomb_Vk(1.0, k) < 0)
    # pure Coulomb: Vk * k^2 constant in k
    assert np.allclose(coulomb_Vk(1.0, k) * k**2, -4.0 * math.pi * FOURIER_NORM)


def test_hydrogen_F0_values():
    assert hydrogen_F0(1.0, 0.0) == pytest.approx(FOURIER_NORM, rel=1e-14)
    assert hydrogen_F0(1.0, 2.0) == pytest.approx(FOURIER_NORM / 4.0, rel=1e-14)


def test_hydrogen_F0_monotone_and_tail():
    k = np.linspace(0.0, 50.0, 400)
    F = hydrogen_F0(1.0, k)
    assert np.all(np.diff(F) < 0)
    # k^-4 asymptotic
    assert hydrogen_F0(1.0, 1e4) == pytest.approx(16.0 * FOURIER_NORM / 1e16, rel=1e-3)


def test_weight_tail_decay():
    # |k^3 Vk F0| <= C / k^3 for k > 50; the prefactor k^4/(4+k^2)^2
    # approaches its limit from below, so fit C at the far end
    k = np.linspace(50.0, 500.0, 100)
    w = np.abs(k**3 * coulomb_Vk(1.0, k) * hydrogen_F0(1.0, k))
    C = w[-1] * k[-1] ** 3
    assert np.all(w <= C / k**3 * (1 + 1e-9))


def test_density_shifted():
    rho = lambda r: hydrogen_density(1.0, r)
    assert density_shifted(rho, [0, 0, 5.0], [0, 0, 5.0]) == pytest.approx(1.0 / math.pi, rel=1e-12)
    assert density_shifted(rho, [0, 0, 1.0], [0, 0, 0.0]) == pytest.approx(rho(1.0), rel=1e-12)


def test_tabulated_matches_analytic_1s():
    r = np.linspace(0.0, 30.0, 1500)
    ff = tabulated_form_factor(r, hydrogen_density(1.0, r))
    assert not ff.warnings
    k = np.linspace(0.0, 20.0, 81)
    analytic = hydrogen_F0(1.0, k)
    numeric = ff.F0(k)
    assert np.max(np.abs(numeric - analytic)) < 1e-6


def test_tabulated_delta_like_density():
    # sharply peaked normalized density: F0 ~ FOURIER_NORM over moderate k
    sigma = 0.01
    r = np.linspace(0.0, 0.12, 400)
    rho = np.exp(-(r / sigma) ** 2 / 2.0)
    rho /= 4.0 * math.pi * np.trapezoid(r * r * rho, r)
    ff = tabulated_form_factor(r, rho)
    k = np.linspace(0.0, 10.0, 21)
    # residual width: F0 ~ exp(-k^2 sigma^2 / 2) = 0.995 at k = 10
    assert np.allclose(ff.F0(k), FOURIER_NORM, rtol=6e-3)


def test_tabulated_zero_density():
    r = np.linspace(0.0, 5.0, 50)
    ff = tabulated_form_factor(r, np.zeros_like(r))
    assert np.allclose(ff.F0(np.linspace(0, 10, 11)), 0.0, atol=1e-12)


def test_tabulated_validation_and_norm_warning():
    r = np.linspace(0.0, 10.0, 100)
    with pytest.raises(ValidationError):
        tabulated_form_factor(r[::-1], hydrogen_density(1.0, r))
    with pytest.raises(ValidationError):
        tabulated_form_factor(r, -hydrogen_density(1.0, r))
    ff = tabulated_form_factor(r, 1.5 * hydrogen_density(1.0, r))
    assert ff.warnings  # norm 1.5 recorded as a warning, not an error


def test_hydrogen_instances_expose_kind():
    assert RadialPotential.coulomb(1.0).kind == "coulomb"
    assert RadialFormFactor.hydrogen_1s(1.0).kind == "hydrogen_1s"
