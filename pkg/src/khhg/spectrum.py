"""HHG spectra from sampled acceleration series and from the
long-pulse Bessel amplitudes, including two-color drives.

The signal convention is S(w) = |a(w)|^2 / w^2 with a(w) the Fourier
transform of the polarization-projected dipole acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from scipy.interpolate import CubicSpline

from khhg.errors import ValidationError
from khhg.dipole import AccelerationSeries, Q_CHARGE, MASS
from khhg.numerics import (
    QuadratureSpec,
    bessel_jn_signed,
    dft,
    integrate_radial,
)
from khhg.potentials import RadialFormFactor, RadialPotential


@dataclass(frozen=True)
class Spectrum:
    """Signal S on a positive frequency grid, with harmonic-order view."""

    omega: np.ndarray
    S: np.ndarray
    omega_L: float
    normalization: str = "raw"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        S = np.asarray(self.S, dtype=float)
        if omega.shape != S.shape or omega.ndim != 1:
            raise ValidationError("omega and S must be matching 1D arrays")
        if np.any(np.diff(omega) <= 0):
            raise ValidationError("omega grid must be strictly increasing")
        if np.any(S < 0):
            raise ValidationError("signal values must be non-negative")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "S", S)

    @property
    def harmonic_order(self) -> np.ndarray:
        return self.omega / self.omega_L

    def max_normalized(self) -> "Spectrum":
        peak = float(self.S.max()) if self.S.size else 0.0
        scale = peak if peak > 0 else 1.0
        return Spectrum(self.omega, self.S / scale, self.omega_L,
                        normalization="max_normalized", meta=dict(self.meta))


@dataclass(frozen=True)
class HarmonicAmplitude:
    """Complex HHG amplitude at integer harmonic order N."""

    N: int
    amplitude: complex


def spectrum_from_series(series: AccelerationSeries, normalize: str = "max") -> Spectrum:
    """Spectrum S(w) = |a(w)|^2 / w^2 from a sampled acceleration.

    Requires at least 16 samples per laser cycle (the series meta must
    carry omega_L); the w = 0 bin is dropped.
    """
    omega_L = series.meta.get("omega_L")
    if omega_L is None or omega_L <= 0:
        raise ValidationError("series meta must carry a positive omega_L")
    if normalize not in ("max", "raw"):
        raise ValidationError(f"normalize must be 'max' or 'raw', got {normalize!r}")
    cycle = 2.0 * math.pi / omega_L
    if cycle / series.dt < 16.0:
        raise ValidationError(
            f"undersampled series: {cycle / series.dt:.1f} samples per cycle, need >= 16"
        )
    w, amp = dft(series.a, series.dt)
    pos = w > 0
    w = w[pos]
    order = np.argsort(w)
    w = w[order]
    S = np.abs(amp[pos][order]) ** 2 / w**2
    spec = Spectrum(omega=w, S=S, omega_L=omega_L, normalization="raw",
                    meta=dict(series.meta))
    return spec.max_normalized() if normalize == "max" else spec


def peak_height(spec: Spectrum, order: float, half_width: float = 0.25) -> float:
    """Max of S within +-half_width*omega_L of a harmonic order."""
    mask = np.abs(spec.harmonic_order - order) <= half_width
    if not np.any(mask):
        raise ValidationError(f"order {order} outside spectrum coverage")
    return float(spec.S[mask].max())


def band_power(spec: Spectrum, orders, half_width: float = 0.25) -> float:
    """Summed S over bands around the given harmonic orders."""
    total = 0.0
    h = spec.harmonic_order
    for n in orders:
        total += float(spec.S[np.abs(h - n) <= half_width].sum())
    return total


def weight_tail(potential: RadialPotential, ff: RadialFormFactor,
                spec: QuadratureSpec = QuadratureSpec()):
    """Upper tail of the radial interaction weight,

        G(y) = integral_y^inf dk  k Vk(k) F0(k).

    Swapping integration order in the (k, mu) amplitude quadrature turns
    every harmonic amplitude into a 1D integral of x J(cx) against this
    single function, so it is worth precomputing.  For the Coulomb
    potential (charge Zv) with a hydrogenic 1s form factor (charge Zf)
    it is elementary:

        G(y) = -(Zv / 2 pi^2) [ ln(1 + 4 Zf^2/y^2)/2 - 2 Zf^2/(y^2 + 4 Zf^2) ]

    (log-divergent at y = 0, decaying like y^-4).  Other targets get a
    spline antiderivative of k^2 Vk F0 on a log grid plus a fitted
    power-law tail beyond k_max.
    """
    if potential.kind == "coulomb" and ff.kind == "hydrogen_1s":
        Zv, Zf = potential.Z, ff.Z
        pref = -Zv / (2.0 * math.pi**2)
        b2 = 4.0 * Zf * Zf

        def G(y):
            y2 = np.asarray(y, dtype=float) ** 2
            return pref * (0.5 * np.log1p(b2 / y2) - 0.5 * b2 / (y2 + b2))

        return G

    # integrate h(u) = k^2 Vk F0 du with u = ln k; h is regular even for
    # Coulomb-class Vk ~ 1/k^2 weights
    k_lo = 1e-6
    u = np.linspace(math.log(k_lo), math.log(spec.k_max), 4000)
    k = np.exp(u)
    h = k * k * potential.Vk(k) * ff.F0(k)
    anti = CubicSpline(u, h).antiderivative()
    total = float(anti(u[-1]))

    # fitted k W ~ C/k^5 tail beyond k_max, so G gains C/(4 y^4) there
    w_end = k[-1] * potential.Vk(k[-1]) * ff.F0(k[-1])
    C = float(w_end) * spec.k_max**5
    tail_at_kmax = C / (4.0 * spec.k_max**4)

    def G(y):
        y_arr = np.asarray(y, dtype=float)
        out = np.where(
            y_arr >= spec.k_max,
            C / (4.0 * np.maximum(y_arr, k_lo) ** 4),
            total - anti(np.log(np.clip(y_arr, k_lo, spec.k_max))) + tail_at_kmax,
        )
        return out if y_arr.shape else float(out)

    return G


def longpulse_amplitude(N: int, alpha0, potential: RadialPotential,
                        ff: RadialFormFactor,
                        spec: QuadratureSpec = QuadratureSpec(),
                        G=None) -> HarmonicAmplitude:
    """Single-color harmonic amplitude in the infinitely-long-pulse limit.

    z-component of -i q * integral d^3k J_N((q/m) alpha0 . k) k Vk F0.
    Substituting x = k mu and integrating k first reduces it to

        -i q 2 pi * 2 integral_0^inf dx x J_N(c x) G(x)

    with G the precomputable weight tail; even N vanish by parity of
    x J_N(c x), and odd-N amplitudes come out purely imaginary.
    """
    if N < 1:
        raise ValidationError(f"harmonic order must be >= 1, got {N}")
    a0 = _principal_component(alpha0)
    if a0 == 0.0 or N % 2 == 0:
        return HarmonicAmplitude(N=N, amplitude=0.0 + 0.0j)
    c = Q_CHARGE / MASS * a0
    if G is None:
        G = weight_tail(potential, ff, spec)

    def integrand(x):
        return 2.0 * x * bessel_jn_signed(N, c * x) * G(x)

    radial = integrate_radial(integrand, spec)
    return HarmonicAmplitude(N=N, amplitude=-1j * Q_CHARGE * 2.0 * math.pi * radial)


def longpulse_spectrum(N_max: int, alpha0, omega_L: float,
                       potential: RadialPotential, ff: RadialFormFactor,
                       spec: QuadratureSpec = QuadratureSpec(),
                       normalize: str = "max") -> Spectrum:
    """Discrete harmonic comb S(N) = |amplitude(N)|^2 / (N omega_L)^2."""
    if N_max < 1:
        raise ValidationError(f"N_max must be >= 1, got {N_max}")
    if omega_L <= 0:
        raise ValidationError(f"omega_L must be > 0, got {omega_L}")
    orders = np.arange(1, N_max + 1)
    G = weight_tail(potential, ff, spec)
    amps = [longpulse_amplitude(int(n), alpha0, potential, ff, spec, G=G)
            for n in orders]
    omega = orders * omega_L
    S = np.array([abs(a.amplitude) ** 2 for a in amps]) / omega**2
    out = Spectrum(omega=omega, S=S, omega_L=omega_L, normalization="raw",
                   meta={"kind": "longpulse", "N_max": int(N_max)})
    return out.max_normalized() if normalize == "max" else out


# Effective radial extent of the Coulomb-class weight k^3 Vk F0; used
# only to sanity-check l_max before a two-color sum.
_K_WEIGHT = 5.0


def required_l_max(alpha02) -> int:
    """Heuristic sideband truncation bound for a two-color sum."""
    a2 = _principal_component(alpha02)
    return math.ceil(1.1 * abs(a2) * _K_WEIGHT) + 10


def twocolor_amplitude(N: int, alpha01, alpha02, phi: float, l_max: int,
                       potential: RadialPotential, ff: RadialFormFactor,
                       spec: QuadratureSpec = QuadratureSpec(),
                       G=None) -> HarmonicAmplitude:
    """Harmonic amplitude for a two-color (w, 2w) drive.

    -i q sum_l e^(i l phi) * integral d^3k J_(N+2l)(c1 k.z) J_l(c2 k.z)
    k Vk F0, reduced term by term to 2 integral_0^inf dx x J J G(x); the
    parity of x J_(N+2l) J_l kills every term with N + l even.  With
    alpha02 = 0 only l = 0 survives and the single-color result is
    recovered; with alpha02 != 0 even harmonics become allowed.
    """
    if N < 1:
        raise ValidationError(f"harmonic order must be >= 1, got {N}")
    a1 = _principal_component(alpha01)
    a2 = _principal_component(alpha02)
    need = required_l_max(alpha02)
    if a2 != 0.0 and l_max < need:
        raise ValidationError(
            f"l_max={l_max} too small for |alpha02|={abs(a2):.3g}; use l_max >= {need}"
        )
    c1 = Q_CHARGE / MASS * a1
    c2 = Q_CHARGE / MASS * a2
    if G is None:
        G = weight_tail(potential, ff, spec)

    total = 0.0 + 0.0j
    l_values = [0] if a2 == 0.0 else range(-l_max, l_max + 1)
    for l in l_values:
        if (N + l) % 2 == 0:
            continue

        def integrand(x, l=l):
            return (2.0 * x * bessel_jn_signed(N + 2 * l, c1 * x)
                    * bessel_jn_signed(l, c2 * x) * G(x))

        radial = integrate_radial(integrand, spec)
        total += np.exp(1j * l * phi) * 2.0 * math.pi * radial
    return HarmonicAmplitude(N=N, amplitude=-1j * Q_CHARGE * total)


def _principal_component(alpha_vec) -> float:
    """Signed magnitude of a z-aligned amplitude vector (or scalar)."""
    a = np.asarray(alpha_vec, dtype=float)
    if a.shape == ():
        return float(a)
    if a.shape != (3,):
        raise ValidationError(f"expected scalar or 3-vector, got shape {a.shape}")
    mag = float(np.linalg.norm(a))
    if mag == 0.0:
        return 0.0
    if abs(a[2]) < mag * (1.0 - 1e-12):
        raise ValidationError("long-pulse amplitudes assume z-aligned polarization")
    return math.copysign(mag, a[2])
