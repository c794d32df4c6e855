"""Quiver trajectories alpha(t) for the driving pulses.

The quiver displacement alpha(t) is the primary description of the
field.  Supported shapes:

* ``finite_sin2``: alpha0 * sin^2(pi t / T) * sin(omega_L t) on [0, T]
* ``monochromatic``: alpha0 * sin(omega_L t)
* ``two_color``: alpha01 * sin(omega_L t) + alpha02 * sin(2 omega_L t + phi)

Elliptical polarization splits the principal amplitude between the
principal axis (sin carrier) and a perpendicular axis (cos carrier):

    alpha(t) = |alpha0| f(t) [sin(wt) e1 + eps cos(wt) e2] / sqrt(1 + eps^2)

so eps = 0 recovers the linear forms above and eps = 1 gives constant
|alpha(t)| for a monochromatic drive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from khhg.errors import ValidationError
from khhg.units import LaserParams

Z_HAT = np.array([0.0, 0.0, 1.0])
X_HAT = np.array([1.0, 0.0, 0.0])

_KINDS = ("finite_sin2", "monochromatic", "two_color")


def _as_vec(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape == ():
        a = a * Z_HAT
    if a.shape != (3,):
        raise ValidationError(f"expected a scalar or 3-vector, got shape {a.shape}")
    return a


def _perpendicular(e1: np.ndarray) -> np.ndarray:
    # Gram-Schmidt against x-hat, falling back to y-hat when e1 || x-hat.
    cand = X_HAT - np.dot(X_HAT, e1) * e1
    if np.linalg.norm(cand) < 1e-8:
        cand = np.array([0.0, 1.0, 0.0]) - np.dot([0.0, 1.0, 0.0], e1) * e1
    return cand / np.linalg.norm(cand)


@dataclass(frozen=True)
class QuiverTrajectory:
    """Immutable description of the quiver displacement alpha(t)."""

    kind: str
    alpha0: np.ndarray
    omega_L: float
    duration_T: float | None = None
    alpha0_second: np.ndarray | None = None
    phi: float = 0.0
    ellipticity: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValidationError(f"unknown trajectory kind {self.kind!r}")
        object.__setattr__(self, "alpha0", _as_vec(self.alpha0))
        if self.alpha0_second is not None:
            object.__setattr__(self, "alpha0_second", _as_vec(self.alpha0_second))
        if self.omega_L <= 0:
            raise ValidationError(f"omega_L must be > 0, got {self.omega_L}")
        if not 0.0 <= self.ellipticity <= 1.0:
            raise ValidationError(f"ellipticity must lie in [0, 1], got {self.ellipticity}")
        if self.kind == "finite_sin2":
            if self.duration_T is None or self.duration_T <= 0:
                raise ValidationError("finite_sin2 requires a positive duration_T")
        if self.kind == "two_color":
            if self.alpha0_second is None:
                raise ValidationError("two_color requires alpha0_second")
            if self.ellipticity != 0.0:
                raise ValidationError("two_color trajectories are linearly polarized")

    # --- constructors -------------------------------------------------

    @classmethod
    def finite_sin2(cls, params: LaserParams, ellipticity: float = 0.0) -> "QuiverTrajectory":
        return cls(
            kind="finite_sin2",
            alpha0=params.alpha0 * Z_HAT,
            omega_L=params.omega_L,
            duration_T=params.duration_T,
            ellipticity=ellipticity,
        )

    @classmethod
    def monochromatic(cls, alpha0, omega_L: float, n_cycles: int = 1,
                      ellipticity: float = 0.0) -> "QuiverTrajectory":
        return cls(
            kind="monochromatic",
            alpha0=alpha0,
            omega_L=omega_L,
            duration_T=n_cycles * 2.0 * math.pi / omega_L,
            ellipticity=ellipticity,
        )

    @classmethod
    def two_color(cls, alpha01, alpha02, omega_L: float, phi: float = 0.0,
                  n_cycles: int = 1) -> "QuiverTrajectory":
        return cls(
            kind="two_color",
            alpha0=alpha01,
            omega_L=omega_L,
            duration_T=n_cycles * 2.0 * math.pi / omega_L,
            alpha0_second=alpha02,
            phi=phi,
        )

    # --- evaluation ---------------------------------------------------

    @property
    def span(self) -> float:
        """Time interval covered by sample_grid."""
        if self.duration_T is not None:
            return self.duration_T
        return 2.0 * math.pi / self.omega_L


def alpha(traj: QuiverTrajectory, t) -> np.ndarray:
    """Quiver displacement at time(s) ``t`` in a.u.

    Returns shape (3,) for scalar ``t`` and (n, 3) for an array.
    For ``finite_sin2`` trajectories ``t`` must lie inside [0, T].
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    w = traj.omega_L
    if traj.kind == "finite_sin2":
        T = traj.duration_T
        if np.any(t_arr < -1e-12) or np.any(t_arr > T * (1 + 1e-12)):
            raise ValidationError(f"t outside pulse interval [0, {T}]")
        envelope = np.sin(np.pi * np.clip(t_arr, 0.0, T) / T) ** 2
        out = _elliptic(traj, t_arr, envelope)
    elif traj.kind == "monochromatic":
        out = _elliptic(traj, t_arr, np.ones_like(t_arr))
    else:  # two_color, linear along alpha0 / alpha0_second directions
        out = (np.sin(w * t_arr)[:, None] * traj.alpha0[None, :]
               + np.sin(2.0 * w * t_arr + traj.phi)[:, None] * traj.alpha0_second[None, :])
    if np.isscalar(t) or np.asarray(t).shape == ():
        return out[0]
    return out


def _elliptic(traj: QuiverTrajectory, t: np.ndarray, envelope: np.ndarray) -> np.ndarray:
    a0 = np.linalg.norm(traj.alpha0)
    if a0 == 0.0:
        return np.zeros((t.size, 3))
    e1 = traj.alpha0 / a0
    eps = traj.ellipticity
    w = traj.omega_L
    if eps == 0.0:
        return (a0 * envelope * np.sin(w * t))[:, None] * e1[None, :]
    e2 = _perpendicular(e1)
    norm = a0 / math.sqrt(1.0 + eps * eps)
    return (norm * envelope)[:, None] * (
        np.sin(w * t)[:, None] * e1[None, :]
        + eps * np.cos(w * t)[:, None] * e2[None, :]
    )


def sample_grid(traj: QuiverTrajectory, n_samples: int):
    """Uniform closed time grid over the trajectory span and alpha values.

    Returns ``(t, values)`` with ``t`` of shape (n,) including both
    endpoints and ``values`` of shape (n, 3).
    """
    if n_samples < 2:
        raise ValidationError(f"n_samples must be >= 2, got {n_samples}")
    t = np.linspace(0.0, traj.span, int(n_samples))
    return t, alpha(traj, t)
