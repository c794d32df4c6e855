"""Isotropic binding potentials and initial-state form factors.

Fourier convention: both the potential transform Vk and the form factor
F0 carry the symmetric (2 pi)^(-3/2) normalization, i.e.

    Vk(k) = (2 pi)^(-3/2) * integral d^3r e^(-i k.r) V(r)
    F0(k) = (2 pi)^(-3/2) * integral d^3r e^(+i k.r) rho0(r)

so the k-space acceleration integral uses them verbatim.  Mixing
conventions is the classic bug here; every consumer in this package
assumes the above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from khhg.errors import ValidationError

# (2 pi)^(-3/2), the symmetric Fourier normalization
FOURIER_NORM = (2.0 * math.pi) ** -1.5


def coulomb_Vk(Z: float, k):
    """Fourier transform of the Coulomb potential -Z/r, in a.u.

    Vk(k) = -Z * (4 pi / k^2) * (2 pi)^(-3/2).  Diverges at k = 0.
    """
    if Z <= 0:
        raise ValidationError(f"Z must be > 0, got {Z}")
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr <= 0):
        raise ValidationError("coulomb_Vk is singular at k = 0; pass k > 0")
    return -Z * 4.0 * math.pi / k_arr**2 * FOURIER_NORM


def hydrogen_F0(Z: float, k):
    """Elastic form factor of the hydrogenic 1s density (a0 = 1).

    F0(k) = 16 / (4 + (k/Z)^2)^2 * (2 pi)^(-3/2)
    """
    if Z <= 0:
        raise ValidationError(f"Z must be > 0, got {Z}")
    k_arr = np.asarray(k, dtype=float)
    return 16.0 / (4.0 + (k_arr / Z) ** 2) ** 2 * FOURIER_NORM


def hydrogen_density(Z: float, r):
    """Hydrogenic 1s probability density (Z^3/pi) e^(-2 Z r)."""
    r_arr = np.asarray(r, dtype=float)
    return Z**3 / math.pi * np.exp(-2.0 * Z * np.abs(r_arr))


@dataclass(frozen=True)
class RadialPotential:
    """Isotropic potential: k-space transform plus optional r-space form."""

    Vk: Callable
    Vr: Callable | None = None
    Z: float | None = None
    kind: str = "generic"

    @classmethod
    def coulomb(cls, Z: float = 1.0) -> "RadialPotential":
        return cls(
            Vk=lambda k: coulomb_Vk(Z, k),
            Vr=lambda r: -Z / np.asarray(r, dtype=float),
            Z=Z,
            kind="coulomb",
        )


@dataclass(frozen=True)
class RadialFormFactor:
    """Initial-state form factor plus optional r-space density."""

    F0: Callable
    rho0: Callable | None = None
    Z: float | None = None
    warnings: tuple = ()
    kind: str = "generic"

    @classmethod
    def hydrogen_1s(cls, Z: float = 1.0) -> "RadialFormFactor":
        return cls(
            F0=lambda k: hydrogen_F0(Z, k),
            rho0=lambda r: hydrogen_density(Z, r),
            Z=Z,
            kind="hydrogen_1s",
        )


def density_shifted(rho0: Callable, r, shift) -> float:
    """Radial density evaluated at the displaced point |r - shift|."""
    r_vec = np.asarray(r, dtype=float)
    s_vec = np.asarray(shift, dtype=float)
    return rho0(np.linalg.norm(r_vec - s_vec))


def tabulated_form_factor(r_grid, rho_samples, norm_warn_tol: float = 1e-3) -> RadialFormFactor:
    """Form factor from a sampled radial density via quadrature.

    F0(k) = (2 pi)^(-3/2) * (4 pi / k) * integral_0^inf r sin(kr) rho(r) dr

    The density is cubic-spline interpolated inside the table; beyond
    the last sample an exponential tail A e^(-b r) fitted to the last
    decade of nonzero samples is integrated analytically.  A density
    whose 3D norm deviates from 1 by more than ``norm_warn_tol`` is
    accepted with a warning recorded on the result.
    """
    r = np.asarray(r_grid, dtype=float)
    rho = np.asarray(rho_samples, dtype=float)
    if r.ndim != 1 or r.shape != rho.shape or r.size < 4:
        raise ValidationError("need matching 1D r and rho arrays with >= 4 samples")
    if np.any(np.diff(r) <= 0):
        raise ValidationError("r grid must be strictly increasing")
    if np.any(rho < 0):
        raise ValidationError("density samples must be non-negative")
    if r[0] > 0:
        # extend flatly to the origin so the spline covers [0, r_max]
        r = np.concatenate([[0.0], r])
        rho = np.concatenate([[rho[0]], rho])

    spline = CubicSpline(r, rho)
    r_max = r[-1]

    amp, decay = _fit_exp_tail(r, rho)

    def radial_moment(weight):
        # integral_0^r_max r^2-ish moments of the spline + analytic tail
        val, _ = quad(lambda x: weight(x) * spline(x), 0.0, r_max,
                      limit=400, epsabs=1e-12, epsrel=1e-10)
        return val

    norm = 4.0 * math.pi * radial_moment(lambda x: x * x)
    if amp > 0:
        norm += 4.0 * math.pi * amp * _tail_moment2(decay, r_max)
    warnings = ()
    if abs(norm - 1.0) > norm_warn_tol:
        warnings = (f"density norm {norm:.6g} deviates from 1 by more than {norm_warn_tol}",)

    def F0(k):
        k_arr = np.atleast_1d(np.asarray(k, dtype=float))
        out = np.empty_like(k_arr)
        for i, kv in enumerate(k_arr):
            if kv < 1e-8:
                out[i] = FOURIER_NORM * norm
                continue
            n_osc = int(kv * r_max / math.pi) + 1
            core, _ = quad(lambda x: x * np.sin(kv * x) * spline(x), 0.0, r_max,
                           limit=max(200, 4 * n_osc), epsabs=1e-13, epsrel=1e-10)
            tail = amp * _tail_sin_moment(decay, kv, r_max) if amp > 0 else 0.0
            out[i] = FOURIER_NORM * 4.0 * math.pi / kv * (core + tail)
        if np.asarray(k).shape == ():
            return out[0]
        return out

    return RadialFormFactor(F0=F0, rho0=spline, warnings=warnings)


def _fit_exp_tail(r, rho):
    """Least-squares fit rho ~ A e^(-b r) over the last decade of samples."""
    pos = rho > 0
    if not np.any(pos):
        return 0.0, 1.0
    rho_last = rho[pos][-1]
    sel = pos & (rho <= rho_last * 10.0) & (r >= r[pos][-1] * 0.5)
    if np.count_nonzero(sel) < 2:
        return 0.0, 1.0
    slope, intercept = np.polyfit(r[sel], np.log(rho[sel]), 1)
    if slope >= 0:  # non-decaying tail; truncate instead of extrapolating
        return 0.0, 1.0
    return math.exp(intercept), -slope


def _tail_moment2(b, R):
    """integral_R^inf r^2 e^(-b r) dr."""
    return math.exp(-b * R) * (R * R / b + 2.0 * R / b**2 + 2.0 / b**3)


def _tail_sin_moment(b, k, R):
    """integral_R^inf r e^(-b r) sin(k r) dr, evaluated in closed form."""
    s = b - 1j * k
    val = np.exp(-s * R) * (R / s + 1.0 / (s * s))
    return float(val.imag)
