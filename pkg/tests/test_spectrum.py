import math

import numpy as np
import pytest

from khhg.dipole import AccelerationSeries, HydrogenTarget, Q_CHARGE, accel_hydrogen_exact, accel_series
from khhg.errors import ValidationError
from khhg.numerics import QuadratureSpec, bessel_jn_signed, gauss_legendre
from khhg.pulse import QuiverTrajectory, Z_HAT
from khhg.spectrum import (
    Spectrum,
    band_power,
    longpulse_amplitude,
    longpulse_spectrum,
    peak_height,
    required_l_max,
    spectrum_from_series,
    twocolor_amplitude,
    weight_tail,
)
from khhg.units import LaserParams

ALPHA0_800 = 9.250664494903152  # quiver amplitude at 800 nm, 3.16e13 W/cm^2


@pytest.fixture(scope="module")
def fig_series():
    params = LaserParams(800.0, 3.16e13, 10)
    traj = QuiverTrajectory.finite_sin2(params)
    return accel_series(traj, "exact", HydrogenTarget(), 4096)


@pytest.fixture(scope="module")
def fig_spectrum(fig_series):
    return spectrum_from_series(fig_series, normalize="max")


def test_spectrum_odd_peaks(fig_spectrum):
    # odd orders dominate their even neighbors by orders of magnitude
    for n in (3, 5, 7, 9):
        odd = peak_height(fig_spectrum, n)
        even = peak_height(fig_spectrum, n + 1)
        assert odd > 100.0 * even


def test_spectrum_normalization(fig_spectrum):
    assert fig_spectrum.normalization == "max_normalized"
    assert fig_spectrum.S.max() == pytest.approx(1.0, rel=1e-14)
    assert np.all(np.diff(fig_spectrum.omega) > 0)


def test_spectrum_pure_cosine():
    w_L = 0.06
    dt = 2.0 * math.pi / w_L / 64
    t = np.arange(0, 30 * 2 * math.pi / w_L, dt)
    series = AccelerationSeries(t=t, a=np.cos(3 * w_L * t), meta={"omega_L": w_L})
    spec = spectrum_from_series(series, normalize="max")
    top = spec.harmonic_order[np.argmax(spec.S)]
    assert top == pytest.approx(3.0, abs=0.05)


def test_spectrum_zero_series():
    w_L = 0.06
    t = np.linspace(0, 2 * math.pi / w_L, 64)
    series = AccelerationSeries(t=t, a=np.zeros_like(t), meta={"omega_L": w_L})
    spec = spectrum_from_series(series, normalize="raw")
    assert np.allclose(spec.S, 0.0)


def test_spectrum_undersampled_rejected():
    w_L = 0.06
    t = np.linspace(0, 2 * math.pi / w_L, 8)
    series = AccelerationSeries(t=t, a=np.sin(w_L * t), meta={"omega_L": w_L})
    with pytest.raises(ValidationError):
        spectrum_from_series(series)


def test_band_power_and_peak_height(fig_spectrum):
    assert band_power(fig_spectrum, [3]) > 0
    with pytest.raises(ValidationError):
        peak_height(fig_spectrum, 1e5)


def test_weight_tail_analytic_vs_numeric(hydrogen_pot, hydrogen_ff):
    from khhg.potentials import RadialFormFactor, RadialPotential
    G = weight_tail(hydrogen_pot, hydrogen_ff)
    generic_pot = RadialPotential(Vk=hydrogen_pot.Vk, Z=1.0)
    generic_ff = RadialFormFactor(F0=hydrogen_ff.F0, Z=1.0)
    Gn = weight_tail(generic_pot, generic_ff)
    y = np.array([0.01, 0.1, 1.0, 3.0, 10.0, 50.0])
    assert np.allclose(Gn(y), G(y), rtol=1e-6)


def test_longpulse_regression_value(hydrogen_pot, hydrogen_ff):
    # frozen against two independent evaluations of the same integral
    # (adaptive (k, mu) tensor quadrature and a tight 1D reference)
    amp = longpulse_amplitude(3, ALPHA0_800, hydrogen_pot, hydrogen_ff)
    assert amp.amplitude.imag == pytest.approx(0.030569480524389, rel=1e-9)
    assert amp.amplitude.real == 0.0


def test_longpulse_even_orders_vanish(hydrogen_pot, hydrogen_ff):
    for N in (2, 4, 10):
        amp = longpulse_amplitude(N, ALPHA0_800, hydrogen_pot, hydrogen_ff)
        assert amp.amplitude == 0.0


def test_longpulse_even_parity_brute_force(hydrogen_pot, hydrogen_ff):
    # independent check that the even-N (k, mu) integral really cancels:
    # symmetric Gauss-Legendre mu rule on the unreduced double integral
    c = Q_CHARGE * ALPHA0_800
    mu, wts = gauss_legendre(800)

    def radial(N, k_grid):
        vals = []
        for k in k_grid:
            ang = np.dot(wts, mu * bessel_jn_signed(N, c * k * mu))
            vals.append(k**3 * hydrogen_pot.Vk(k) * hydrogen_ff.F0(k) * ang)
        return np.trapezoid(vals, k_grid)

    k_grid = np.linspace(1e-4, 60.0, 4000)
    even = abs(radial(4, k_grid))
    odd = abs(radial(3, k_grid))
    assert even < 1e-12 * odd


def test_longpulse_zero_amplitude(hydrogen_pot, hydrogen_ff):
    for N in (1, 2, 5):
        amp = longpulse_amplitude(N, 0.0, hydrogen_pot, hydrogen_ff)
        assert amp.amplitude == 0.0
    with pytest.raises(ValidationError):
        longpulse_amplitude(0, 1.0, hydrogen_pot, hydrogen_ff)


def test_longpulse_spectrum_structure(hydrogen_pot, hydrogen_ff):
    w_L = 0.05695419125
    spec = longpulse_spectrum(9, ALPHA0_800 * Z_HAT, w_L, hydrogen_pot, hydrogen_ff)
    assert spec.S[0] > 0  # fundamental always emitted
    assert np.allclose(spec.S[1::2], 0.0)  # even orders
    assert spec.S.max() == pytest.approx(1.0)


def test_jacobi_anger_reconstruction(hydrogen_pot, hydrogen_ff):
    # summing the harmonic comb reproduces the time-domain acceleration
    # of the monochromatic drive; residual is series truncation
    w_L = 0.05695419125
    G = weight_tail(hydrogen_pot, hydrogen_ff)
    amps = {n: longpulse_amplitude(n, ALPHA0_800, hydrogen_pot, hydrogen_ff, G=G).amplitude
            for n in range(1, 102)}
    for theta in (0.3, 1.0):
        t = theta / w_L
        total = sum(a * np.exp(1j * n * w_L * t) + (-1) ** n * a * np.exp(-1j * n * w_L * t)
                    for n, a in amps.items())
        exact = accel_hydrogen_exact(ALPHA0_800 * math.sin(w_L * t), 1.0)
        assert abs(total.imag) < 1e-12
        assert total.real == pytest.approx(exact, rel=5e-3)


def test_twocolor_reduces_to_single_color(hydrogen_pot, hydrogen_ff):
    single = longpulse_amplitude(3, ALPHA0_800, hydrogen_pot, hydrogen_ff)
    two = twocolor_amplitude(3, ALPHA0_800, 0.0, 0.7, 40, hydrogen_pot, hydrogen_ff)
    assert two.amplitude == pytest.approx(single.amplitude, rel=1e-12)


@pytest.fixture(scope="module")
def twocolor_amps():
    from khhg.potentials import RadialFormFactor, RadialPotential
    pot = RadialPotential.coulomb(1.0)
    ff = RadialFormFactor.hydrogen_1s(1.0)
    G = weight_tail(pot, ff)
    a2 = 0.3 * ALPHA0_800
    l_max = required_l_max(a2)
    return {
        n: twocolor_amplitude(n, ALPHA0_800, a2, 0.0, l_max, pot, ff, G=G).amplitude
        for n in (3, 4, 5)
    }


def test_twocolor_even_orders_activated(twocolor_amps):
    even = abs(twocolor_amps[4])
    assert even > 1e-4 * abs(twocolor_amps[3])
    assert even > 1e-4 * abs(twocolor_amps[5])


def test_twocolor_phase_parity(hydrogen_pot, hydrogen_ff):
    # odd N draws only even l, so phi -> phi + pi leaves it unchanged;
    # even N draws only odd l, so the same shift flips its sign
    G = weight_tail(hydrogen_pot, hydrogen_ff)
    a2 = 0.3 * ALPHA0_800
    l_max = required_l_max(a2)
    for N, sign in ((3, 1.0), (4, -1.0)):
        amp0 = twocolor_amplitude(N, ALPHA0_800, a2, 0.0, l_max,
                                  hydrogen_pot, hydrogen_ff, G=G).amplitude
        amp_pi = twocolor_amplitude(N, ALPHA0_800, a2, math.pi, l_max,
                                    hydrogen_pot, hydrogen_ff, G=G).amplitude
        assert amp_pi == pytest.approx(sign * amp0, rel=1e-9)


def test_twocolor_l_truncation(hydrogen_pot, hydrogen_ff):
    G = weight_tail(hydrogen_pot, hydrogen_ff)
    a2 = 0.3 * ALPHA0_800
    l_max = required_l_max(a2)
    base = twocolor_amplitude(4, ALPHA0_800, a2, 0.3, l_max,
                              hydrogen_pot, hydrogen_ff, G=G).amplitude
    doubled = twocolor_amplitude(4, ALPHA0_800, a2, 0.3, 2 * l_max,
                                 hydrogen_pot, hydrogen_ff, G=G).amplitude
    # slow x^-4 weight decay leaves ~1e-5 relative truncation residue
    assert abs(doubled - base) < 1e-4 * abs(base)


def test_twocolor_l_max_validation(hydrogen_pot, hydrogen_ff):
    with pytest.raises(ValidationError):
        twocolor_amplitude(4, ALPHA0_800, 0.3 * ALPHA0_800, 0.0, 2,
                           hydrogen_pot, hydrogen_ff)


def test_principal_component_requires_z_alignment(hydrogen_pot, hydrogen_ff):
    with pytest.raises(ValidationError):
        longpulse_amplitude(3, np.array([1.0, 0.0, 1.0]), hydrogen_pot, hydrogen_ff)


def test_longpulse_matches_slow_envelope_limit(hydrogen_pot, hydrogen_ff):
    # a 40-cycle sin^2 pulse approaches the infinite-pulse comb: peak
    # positions within a bin, and the peak-amplitude comb bounds the
    # envelope-averaged finite-pulse heights from above (the averaging
    # penalty grows with order and does not vanish with pulse length)
    params = LaserParams(800.0, 3.16e13, 40)
    traj = QuiverTrajectory.finite_sin2(params)
    series = accel_series(traj, "exact", HydrogenTarget(), 8192)
    finite = spectrum_from_series(series, normalize="max")
    comb = longpulse_spectrum(15, ALPHA0_800 * Z_HAT, params.omega_L,
                              hydrogen_pot, hydrogen_ff)
    dbin = finite.omega[1] - finite.omega[0]
    for n in range(3, 15, 2):
        window = np.abs(finite.harmonic_order - n) <= 0.25
        peak_w = finite.omega[window][np.argmax(finite.S[window])]
        assert abs(peak_w - n * params.omega_L) <= dbin * (1 + 1e-9)
        ratio = comb.S[n - 1] / finite.S[window].max()
        assert ratio >= 1.0 - 1e-9


def test_spectrum_type_validation():
    with pytest.raises(ValidationError):
        Spectrum(omega=np.array([1.0, 0.5]), S=np.array([1.0, 1.0]), omega_L=1.0)
    with pytest.raises(ValidationError):
        Spectrum(omega=np.array([0.5, 1.0]), S=np.array([-1.0, 1.0]), omega_L=1.0)
