"""Gabor time-frequency analysis of the dipole acceleration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from khhg.errors import ValidationError
from khhg.dipole import AccelerationSeries

# Default window width in a.u. (half-cycle-scale for 800 nm drives).
DEFAULT_TAU = 5.0 * math.pi

# Gaussian support truncation: exp(-(6**2)/2) ~ 1.5e-8 relative.
_WINDOW_SIGMAS = 6.0


@dataclass(frozen=True)
class GaborMap:
    """|G_tau(omega, t)|^2 on a (t, omega) grid."""

    t_grid: np.ndarray
    omega_grid: np.ndarray
    G2: np.ndarray  # shape (len(t_grid), len(omega_grid))
    tau: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        w = np.asarray(self.omega_grid, dtype=float)
        G2 = np.asarray(self.G2, dtype=float)
        if G2.shape != (t.size, w.size):
            raise ValidationError("G2 shape must be (len(t_grid), len(omega_grid))")
        if np.any(G2 < 0):
            raise ValidationError("G2 must be non-negative")
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "omega_grid", w)
        object.__setattr__(self, "G2", G2)


def gabor(series: AccelerationSeries, tau: float = DEFAULT_TAU,
          t_grid=None, omega_grid=None) -> GaborMap:
    """Windowed Fourier transform of the acceleration series.

    G_tau(w, t) = integral dt' e^(-i w t' - (t - t')^2 / (2 tau^2)) a(t')

    evaluated by trapezoid quadrature over the sampled series, with the
    Gaussian support truncated at 6 tau.  Default grids: 512 emission
    times over the series span and harmonic orders 1..31 in steps of
    0.25 (requires omega_L in the series meta).
    """
    if tau <= 0:
        raise ValidationError(f"tau must be positive, got {tau}")
    t_s = series.t
    if t_grid is None:
        t_grid = np.linspace(t_s[0], t_s[-1], 512)
    else:
        t_grid = np.asarray(t_grid, dtype=float)
        if t_grid.min() < t_s[0] - 1e-9 or t_grid.max() > t_s[-1] + 1e-9:
            raise ValidationError("t_grid extends beyond the series coverage")
    if omega_grid is None:
        omega_L = series.meta.get("omega_L")
        if omega_L is None:
            raise ValidationError("series meta lacks omega_L; pass omega_grid explicitly")
        omega_grid = np.arange(1.0, 31.0 + 1e-9, 0.25) * omega_L
    else:
        omega_grid = np.asarray(omega_grid, dtype=float)

    dt = series.dt
    half = _WINDOW_SIGMAS * tau
    G2 = np.empty((t_grid.size, omega_grid.size))
    phases = np.exp(-1j * np.outer(omega_grid, t_s))  # (n_w, n_s)
    for i, t0 in enumerate(t_grid):
        lo = max(0, int((t0 - half - t_s[0]) / dt))
        hi = min(t_s.size, int((t0 + half - t_s[0]) / dt) + 2)
        window = np.exp(-((t0 - t_s[lo:hi]) ** 2) / (2.0 * tau * tau)) * series.a[lo:hi]
        G = np.trapezoid(phases[:, lo:hi] * window[None, :], dx=dt, axis=1)
        G2[i] = np.abs(G) ** 2
    meta = dict(series.meta)
    return GaborMap(t_grid=t_grid, omega_grid=omega_grid, G2=G2, tau=tau, meta=meta)


def emission_times(gmap: GaborMap, order_range) -> list:
    """Times of local maxima of the band-integrated emission.

    ``order_range`` is (low, high) in harmonic orders; the map's meta
    must carry omega_L.  A flat profile (variation below 1% of its
    peak) yields no maxima; a zero map yields an empty list.
    """
    omega_L = gmap.meta.get("omega_L")
    if omega_L is None:
        raise ValidationError("map meta lacks omega_L")
    lo, hi = order_range
    band = (gmap.omega_grid >= lo * omega_L) & (gmap.omega_grid <= hi * omega_L)
    if not np.any(band):
        raise ValidationError(f"order band [{lo}, {hi}] outside omega grid coverage")
    if np.count_nonzero(band) > 1:
        profile = np.trapezoid(gmap.G2[:, band], gmap.omega_grid[band], axis=1)
    else:
        profile = gmap.G2[:, band][:, 0]
    peak = profile.max()
    if peak <= 0 or np.ptp(profile) < 0.01 * peak:
        return []
    idx, _ = find_peaks(profile, prominence=0.05 * np.ptp(profile))
    times = []
    for i in idx:
        times.append(_parabolic_peak(gmap.t_grid, profile, i))
    return sorted(times)


def _parabolic_peak(t, y, i):
    """Sub-grid peak location from a parabola through three points."""
    if i == 0 or i == t.size - 1:
        return float(t[i])
    denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
    if denom == 0:
        return float(t[i])
    shift = 0.5 * (y[i - 1] - y[i + 1]) / denom
    return float(t[i] + shift * (t[1] - t[0]))
