"""Closed-form and root-finding reference solutions.

These are the independent checks the time-domain solver is validated
against, and they supply the effective index used by the 2D solver mode.

The fundamental TM surface mode of a grounded dielectric slab satisfies

    k_slab * tan(k_slab * d) = eps_r * alpha_air,

with k_slab^2 + beta^2 = eps_r * k0^2 and alpha_air^2 = beta^2 - k0^2.
A bound mode always exists (no low-frequency cutoff); beta lies strictly
between k0 and sqrt(eps_r)*k0 and is found by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import c0, eps0, eta0, mu0, wavenumber
from .errors import RswpError

BISECTION_MAX_ITER = 200
BISECTION_RTOL = 1e-12


@dataclass(frozen=True)
class DispersionSolution:
    """Bound TM0 mode of a grounded dielectric slab at one frequency.

    Attributes
    ----------
    freq : float
        Frequency in Hz.
    beta : float
        Propagation constant in rad/m.
    n_eff : float
        beta / k0.
    alpha_air : float
        Transverse decay rate above the slab, Np/m.
    k_slab : float
        Transverse wavenumber inside the slab, rad/m.
    eps_r : float
        Slab relative permittivity the solution was computed for.
    thickness : float
        Slab thickness in metres.
    """

    freq: float
    beta: float
    n_eff: float
    alpha_air: float
    k_slab: float
    eps_r: float
    thickness: float

    def residual(self) -> float:
        """Relative residual of the transcendental equation at this root."""
        lhs = self.k_slab * math.tan(self.k_slab * self.thickness)
        rhs = self.eps_r * self.alpha_air
        return abs(lhs - rhs) / (self.eps_r * wavenumber(self.freq))


def _characteristic(beta: float, eps_r: float, d: float, k0: float) -> float:
    k_slab = math.sqrt(max(eps_r * k0 * k0 - beta * beta, 0.0))
    alpha = math.sqrt(max(beta * beta - k0 * k0, 0.0))
    return k_slab * math.tan(k_slab * d) - eps_r * alpha


def tm0_grounded_slab(eps_r: float, thickness: float, freq: float) -> DispersionSolution:
    """Solve the TM0 dispersion of a grounded slab by bisection on beta.

    Parameters
    ----------
    eps_r : float
        Relative permittivity, > 1.
    thickness : float
        Slab thickness in metres, > 0.
    freq : float
        Frequency in Hz.

    Returns
    -------
    DispersionSolution
        Root with relative residual below 1e-10.
    """
    if eps_r <= 1.0:
        raise ValueError(f"eps_r must exceed 1 for a bound mode, got {eps_r}")
    if thickness <= 0.0:
        raise ValueError(f"thickness must be positive, got {thickness}")
    k0 = wavenumber(freq)
    lo = k0 * (1.0 + 1e-12)
    hi = math.sqrt(eps_r) * k0 * (1.0 - 1e-12)
    f_lo = _characteristic(lo, eps_r, thickness, k0)
    f_hi = _characteristic(hi, eps_r, thickness, k0)
    if f_lo == 0.0:
        root = lo
    elif f_lo * f_hi > 0.0:
        raise RswpError(
            "TM0 bracketing failed: characteristic has equal signs at "
            f"beta={lo:.6g} and beta={hi:.6g}"
        )
    else:
        for _ in range(BISECTION_MAX_ITER):
            mid = 0.5 * (lo + hi)
            f_mid = _characteristic(mid, eps_r, thickness, k0)
            if f_mid == 0.0:
                lo = hi = mid
                break
            if f_lo * f_mid < 0.0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
            if hi - lo <= BISECTION_RTOL * hi:
                break
        root = 0.5 * (lo + hi)
    k_slab = math.sqrt(max(eps_r * k0 * k0 - root * root, 0.0))
    alpha = math.sqrt(max(root * root - k0 * k0, 0.0))
    return DispersionSolution(
        freq=freq,
        beta=root,
        n_eff=root / k0,
        alpha_air=alpha,
        k_slab=k_slab,
        eps_r=eps_r,
        thickness=thickness,
    )


def impedance_wave_decay(xs: float, freq: float) -> float:
    """TM surface-wave decay rate over an inductive impedance plane.

    alpha = k0 * Xs / eta0 (Leontovich relation).  Np/m.
    """
    if xs < 0.0:
        raise ValueError(f"surface reactance must be >= 0, got {xs}")
    return wavenumber(freq) * xs / eta0


def surface_impedance_slab(eps_r: float, thickness: float, freq: float) -> float:
    """Inductive reactance of a thin grounded slab (shorted-line model).

    Xs = (eta0/sqrt(eps_r)) * tan(k0*sqrt(eps_r)*d), valid below the
    first tan singularity.
    """
    arg = wavenumber(freq) * math.sqrt(eps_r) * thickness
    if arg >= math.pi / 2.0:
        raise ValueError(
            f"k0*sqrt(eps_r)*d = {arg:.4f} is past the quarter-wave "
            "singularity; the thin-slab reactance model does not apply"
        )
    return eta0 / math.sqrt(eps_r) * math.tan(arg)


def skin_depth(sigma: float, freq: float) -> float:
    """Conductor skin depth 1/sqrt(pi*f*mu0*sigma) in metres."""
    if sigma <= 0.0:
        raise ValueError(f"conductivity must be positive, got {sigma}")
    return 1.0 / math.sqrt(math.pi * freq * mu0 * sigma)


def spreading_db(r1_lambda: float, r2_lambda: float) -> float:
    """Cylindrical (2D) spreading loss in dB between two radii.

    Amplitude of a 2D wave falls as 1/sqrt(r), so the field drop from
    r1 to r2 is 10*log10(r2/r1) dB.
    """
    if not 0.0 < r1_lambda <= r2_lambda:
        raise ValueError(
            f"radii must satisfy 0 < r1 <= r2, got r1={r1_lambda}, r2={r2_lambda}"
        )
    return 10.0 * math.log10(r2_lambda / r1_lambda)


def slab_mode_loss(eps_r: float, tan_delta: float, thickness: float, freq: float) -> float:
    """Attenuation of the TM0 mode from dielectric loss, Np/m.

    Perturbation result: the lossless mode profile is integrated to get
    the power dissipated per unit length in the slab relative to the
    power flow.  Field profile (transverse magnetic, H ~ cos inside the
    slab, exponential above):

        P     = (beta/2w) * [I_cos/eps1 + cos^2(k_slab d)/(2 alpha eps0)]
        P_d   = (sigma_d/2) * [ (k_slab^2 I_sin + beta^2 I_cos) / (w eps1)^2 ]
        alpha_loss = P_d / (2 P)

    with I_cos/I_sin the cos^2/sin^2 integrals over the slab and
    sigma_d = w*eps0*eps_r*tan_delta the equivalent conductivity.
    """
    if tan_delta == 0.0:
        return 0.0
    sol = tm0_grounded_slab(eps_r, thickness, freq)
    w = 2.0 * math.pi * freq
    sigma_d = w * eps0 * eps_r * tan_delta
    e1 = eps0 * eps_r
    d = thickness
    s2kd = math.sin(2.0 * sol.k_slab * d)
    i_cos = d / 2.0 + s2kd / (4.0 * sol.k_slab)
    i_sin = d / 2.0 - s2kd / (4.0 * sol.k_slab)
    cos2 = math.cos(sol.k_slab * d) ** 2
    power = 0.5 * (sol.beta / w) * (i_cos / e1 + cos2 / (2.0 * sol.alpha_air * eps0))
    dissipated = 0.5 * sigma_d * (sol.k_slab**2 * i_sin + sol.beta**2 * i_cos) / (w * e1) ** 2
    return dissipated / (2.0 * power)


def oracle_table(freq: float = 30e9, eps_r: float = 2.2, thickness: float = 1e-3,
                 surface_reactance: float = 130.0) -> dict:
    """Summary table of the oracle quantities for the validate command."""
    sol = tm0_grounded_slab(eps_r, thickness, freq)
    return {
        "freq_ghz": freq / 1e9,
        "beta_rad_per_m": sol.beta,
        "n_eff": sol.n_eff,
        "alpha_air_np_per_m": sol.alpha_air,
        "decay_height_mm": 1000.0 / sol.alpha_air,
        "alpha_reactive_np_per_m": impedance_wave_decay(surface_reactance, freq),
        "thin_slab_reactance_ohm": surface_impedance_slab(eps_r, thickness, freq),
        "skin_depth_galinstan_um": skin_depth(3.46e6, freq) * 1e6,
        "skin_depth_copper_um": skin_depth(59.6e6, freq) * 1e6,
    }
