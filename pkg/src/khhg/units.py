"""Conversions between laboratory laser parameters and Hartree atomic units.

Everything downstream works in atomic units; these helpers are the only
place where nm and W/cm^2 appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from khhg.errors import ValidationError

# CODATA-derived constants, 8 significant digits.
# omega[a.u.] * lambda[nm] = 2*pi*c / (1 nm in a0) = 45.563353
WAVELENGTH_NM_AU = 45.563353
# Atomic unit of intensity: field amplitude E0 = 1 a.u.
INTENSITY_AU_W_CM2 = 3.5094452e16


def omega_au(wavelength_nm: float) -> float:
    """Angular frequency in a.u. for a vacuum wavelength in nm."""
    if wavelength_nm <= 0:
        raise ValidationError(f"wavelength must be positive, got {wavelength_nm}")
    return WAVELENGTH_NM_AU / wavelength_nm


def wavelength_nm(omega: float) -> float:
    """Inverse of :func:`omega_au`."""
    if omega <= 0:
        raise ValidationError(f"angular frequency must be positive, got {omega}")
    return WAVELENGTH_NM_AU / omega


def field_amplitude_au(intensity_W_cm2: float) -> float:
    """Peak electric-field amplitude E0 in a.u. for an intensity in W/cm^2."""
    if intensity_W_cm2 <= 0:
        raise ValidationError(f"intensity must be positive, got {intensity_W_cm2}")
    return math.sqrt(intensity_W_cm2 / INTENSITY_AU_W_CM2)


def intensity_W_cm2(field_amplitude: float) -> float:
    """Inverse of :func:`field_amplitude_au`."""
    if field_amplitude <= 0:
        raise ValidationError(f"field amplitude must be positive, got {field_amplitude}")
    return field_amplitude**2 * INTENSITY_AU_W_CM2


@dataclass(frozen=True)
class LaserParams:
    """Driving-pulse parameters in laboratory units.

    Derived quantities (all in a.u.) are exposed as properties.
    """

    wavelength_nm: float
    intensity_W_cm2: float
    n_cycles: int

    def __post_init__(self):
        problems = []
        if self.wavelength_nm <= 0:
            problems.append(f"wavelength_nm must be > 0, got {self.wavelength_nm}")
        if self.intensity_W_cm2 <= 0:
            problems.append(f"intensity_W_cm2 must be > 0, got {self.intensity_W_cm2}")
        if int(self.n_cycles) != self.n_cycles or self.n_cycles < 1:
            problems.append(f"n_cycles must be a positive integer, got {self.n_cycles}")
        if problems:
            raise ValidationError("; ".join(problems))

    @property
    def omega_L(self) -> float:
        return omega_au(self.wavelength_nm)

    @property
    def E0(self) -> float:
        return field_amplitude_au(self.intensity_W_cm2)

    @property
    def alpha0(self) -> float:
        return quiver_amplitude_au(self)

    @property
    def duration_T(self) -> float:
        """Total pulse duration n_cycles * 2*pi/omega_L in a.u."""
        return self.n_cycles * 2.0 * math.pi / self.omega_L


def quiver_amplitude_au(params: LaserParams) -> float:
    """Peak quiver excursion alpha0 = E0 / omega_L**2 in a.u.

    This is the excursion amplitude of a free electron in a
    monochromatic field of amplitude E0.
    """
    w = params.omega_L
    return params.E0 / (w * w)
