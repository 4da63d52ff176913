"""Physical constants and unit conventions.

Field updates use exact SI values (c0, eps0, mu0).  The free-space wave
impedance is the 120*pi engineering value used throughout microwave
surface-impedance formulas; it differs from sqrt(mu0/eps0) by 0.07%.

Design-wavelength convention: geometry laid out "in wavelengths" (path
lengths, probe spacing, bar-slot counts) uses the nominal wavelength
C_NOMINAL / f0, i.e. exactly 10 mm at 30 GHz, so that wavelength-denominated
layouts land on round millimetre coordinates.  Physics (time stepping,
dispersion solutions) always uses the exact c0.
"""

import math

c0 = 299792458.0
mu0 = 4.0e-7 * math.pi
eps0 = 1.0 / (mu0 * c0 * c0)
eta0 = 120.0 * math.pi

C_NOMINAL = 3.0e8


def wavenumber(freq: float) -> float:
    """Free-space wavenumber 2*pi*f/c0 in rad/m."""
    return 2.0 * math.pi * freq / c0


def design_wavelength(freq: float) -> float:
    """Nominal layout wavelength C_NOMINAL/f in metres (10 mm at 30 GHz)."""
    return C_NOMINAL / freq
