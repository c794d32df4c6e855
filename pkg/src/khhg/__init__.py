"""HHG spectra of atoms driven by infrared pulses, computed from the
leading-order strong-field approximation in the accelerated
Kramers-Henneberger frame.

All internal physics is done in Hartree atomic units (hbar = m = |e| =
a0 = 1) with the electron charge q = -1.
"""

from khhg.errors import ConfigError, ConvergenceError, ValidationError

__version__ = "0.1.0"

__all__ = ["ConfigError", "ConvergenceError", "ValidationError", "__version__"]
