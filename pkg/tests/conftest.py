import pytest

from khhg.potentials import RadialFormFactor, RadialPotential
from khhg.units import LaserParams


@pytest.fixture
def laser_800():
    return LaserParams(wavelength_nm=800.0, intensity_W_cm2=3.16e13, n_cycles=10)


@pytest.fixture
def hydrogen_pot():
    return RadialPotential.coulomb(1.0)


@pytest.fixture
def hydrogen_ff():
    return RadialFormFactor.hydrogen_1s(1.0)
