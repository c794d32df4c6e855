"""Special functions, semi-infinite radial quadrature, and the DFT.

The radial quadrature is tuned for integrands with ~1/k^3 tails, which
is what the Coulomb-times-form-factor products produce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from khhg.errors import ConvergenceError, ValidationError


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and truncation for the semi-infinite radial integrals."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    k_max: float = 200.0
    max_subdivisions: int = 800

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValidationError("tolerances must be positive")
        if self.k_max <= 0:
            raise ValidationError("k_max must be positive")
        if self.max_subdivisions < 1:
            raise ValidationError("max_subdivisions must be >= 1")


def bessel_jn(n: int, x):
    """Integer-order Bessel function J_n for n >= 0.

    Negative orders are handled at call sites through
    J_(-n)(x) = (-1)^n J_n(x).
    """
    if n < 0:
        raise ValidationError(f"order must be >= 0, got {n}")
    return special.jv(n, x)


def bessel_jn_signed(n: int, x):
    """J_n for any integer order, via the reflection identity."""
    if n >= 0:
        return bessel_jn(n, x)
    return (-1) ** (-n) * bessel_jn(-n, x)


# Ascending series for |x| < 0.5 avoids the sin/cos cancellation near 0.
_J1_SERIES = (1.0 / 3.0, -1.0 / 30.0, 1.0 / 840.0, -1.0 / 45360.0, 1.0 / 3991680.0)


def spherical_j1(x):
    """Spherical Bessel function j_1(x) = sin(x)/x^2 - cos(x)/x."""
    x_arr = np.asarray(x, dtype=float)
    small = np.abs(x_arr) < 0.5
    x_safe = np.where(small, 1.0, x_arr)
    direct = np.sin(x_safe) / x_safe**2 - np.cos(x_safe) / x_safe
    x2 = x_arr * x_arr
    series = x_arr * (
        _J1_SERIES[0]
        + x2 * (_J1_SERIES[1] + x2 * (_J1_SERIES[2] + x2 * (_J1_SERIES[3] + x2 * _J1_SERIES[4])))
    )
    out = np.where(small, series, direct)
    if np.asarray(x).shape == ():
        return float(out)
    return out


def integrate_radial(f, spec: QuadratureSpec = QuadratureSpec(), full_output: bool = False):
    """Integral of ``f`` over (0, inf) for integrands with ~1/k^3 tails.

    Adaptive quadrature on (0, k_max]; the remainder is integrated on
    the transformed semi-infinite interval when possible, else bounded
    analytically from the 1/k^3 tail assumption.  With
    ``full_output=True`` returns ``(value, error_bound)``.  Raises
    :class:`ConvergenceError` (carrying the best estimate and error
    bound) if the requested tolerance cannot be met within
    ``max_subdivisions``.
    """
    core = integrate.quad(
        f, 0.0, spec.k_max,
        epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, full_output=1,
    )
    value, err = core[0], core[1]
    if len(core) > 3:
        raise ConvergenceError(
            f"radial quadrature did not converge on (0, {spec.k_max}]: {core[3]}",
            best=value, error_bound=err,
        )

    # Tail beyond k_max: evaluated when the transformed quadrature
    # converges, otherwise truncated with its analytic bound folded
    # into the reported error estimate.
    tail_val, tail_err = _tail_integral(f, spec, scale=abs(value))
    value += tail_val
    err += tail_err

    if full_output:
        return value, err
    return value


def _tail_integral(f, spec: QuadratureSpec, scale: float):
    tail = integrate.quad(
        f, spec.k_max, np.inf,
        epsabs=max(spec.abs_tol, spec.rel_tol * scale),
        epsrel=spec.rel_tol, limit=200, full_output=1,
    )
    if len(tail) <= 3 and np.isfinite(tail[0]):
        return tail[0], tail[1]
    # Oscillatory tails defeat the transformed quadrature; fall back to
    # the analytic bound for a C/k^3 envelope: |tail| <= |f(K)| K / 2.
    bound = abs(f(spec.k_max)) * spec.k_max / 2.0
    return 0.0, bound


def dft(samples, dt: float):
    """Discrete approximation of (1/2pi) * integral dt e^(-i w t) f(t).

    Zero-pads to 4x the next power of two so spectral peaks render
    smoothly.  Returns ``(omega, amplitudes)`` on the full two-sided
    FFT frequency grid omega_j = 2 pi j / (N_padded dt).
    """
    x = np.asarray(samples)
    if x.ndim != 1 or x.size < 2:
        raise ValidationError("need a 1D sample array of length >= 2")
    if dt <= 0:
        raise ValidationError(f"dt must be positive, got {dt}")
    n_pad = 4 * (1 << (x.size - 1).bit_length())
    amplitudes = np.fft.fft(x, n=n_pad) * dt / (2.0 * math.pi)
    omega = 2.0 * math.pi * np.fft.fftfreq(n_pad, d=dt)
    return omega, amplitudes


@lru_cache(maxsize=64)
def gauss_legendre(n: int):
    """Cached Gauss-Legendre nodes and weights on [-1, 1]."""
    return special.roots_legendre(n)
