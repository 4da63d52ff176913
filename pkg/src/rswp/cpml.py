"""Convolutional PML profiles and per-axis update coefficients.

Polynomial-graded conductivity with coordinate stretching and a
complex-frequency-shift term: within the absorber depth fraction
rho in [0, 1] (0 at the interior interface, 1 at the outer wall)

    sigma(rho) = sigma_max * rho^m
    kappa(rho) = 1 + (kappa_max - 1) * rho^m
    alpha(rho) = alpha_max * (1 - rho)

sigma_max follows the standard reflection estimate
-(m+1)*eps0*c0*ln(R0) / (2*L) for an absorber of physical depth L.
The auxiliary recursion per field sample is

    psi <- b * psi + c * d     (d: raw neighbour difference)
    b = exp(-(sigma/kappa + alpha) * dt / eps0)
    c = sigma * (b - 1) / ((sigma + kappa*alpha) * kappa) / delta

Interior samples get sigma = 0, kappa = 1, alpha = 0, hence b = 1 and
c = 0: psi stays identically zero there and the kernels need no
region branches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import c0, eps0


@dataclass(frozen=True)
class CpmlSpec:
    """Absorber grading parameters."""

    layers: int = 10
    order: int = 3
    r0: float = 1e-6
    kappa_max: float = 5.0
    alpha_max: float = 0.05

    def __post_init__(self):
        if self.layers < 6:
            raise ValueError(f"CPML needs at least 6 layers, got {self.layers}")
        if not 0.0 < self.r0 < 1.0:
            raise ValueError(f"target reflection must be in (0, 1), got {self.r0}")

    def sigma_max(self, delta: float) -> float:
        depth = self.layers * delta
        return -(self.order + 1) * eps0 * c0 * np.log(self.r0) / (2.0 * depth)

    def profiles(self, delta: float):
        """Per-layer (sigma, kappa, alpha) sampled at layer centres."""
        rho = (np.arange(self.layers) + 0.5)[::-1] / self.layers
        sigma = self.sigma_max(delta) * rho**self.order
        kappa = 1.0 + (self.kappa_max - 1.0) * rho**self.order
        alpha = self.alpha_max * (1.0 - rho)
        return sigma, kappa, alpha


def cpml_profile(layers: int, order: int = 3, r0: float = 1e-6,
                 kappa_max: float = 5.0, alpha_max: float = 0.05) -> CpmlSpec:
    """Build a graded-absorber spec (validates the layer count and R0)."""
    return CpmlSpec(layers=layers, order=order, r0=r0,
                    kappa_max=kappa_max, alpha_max=alpha_max)


@dataclass
class AxisCoeffs:
    """Per-axis 1D CPML coefficient arrays for one grid dimension.

    Suffix _e: sampled at integer (node) positions, used by the E-field
    curl terms along this axis; _h: sampled at half-offset positions for
    the H-field terms.  inv_k arrays are 1/kappa.
    """

    be: np.ndarray
    ce: np.ndarray
    inv_ke: np.ndarray
    bh: np.ndarray
    ch: np.ndarray
    inv_kh: np.ndarray


def axis_coeffs(n: int, delta: float, dt: float, spec: CpmlSpec,
                lo: bool = True, hi: bool = True,
                dtype=np.float64) -> AxisCoeffs:
    """Materialize CPML coefficients along one axis of n nodes.

    lo/hi enable the absorber on each side; a disabled side keeps the
    identity coefficients (no stretching, no psi contribution).
    """
    layers = spec.layers
    smax = spec.sigma_max(delta)

    def depth_fraction(positions):
        rho = np.zeros_like(positions)
        if lo:
            mask = positions < layers
            rho[mask] = (layers - positions[mask]) / layers
        if hi:
            edge = n - 1.0
            mask = positions > edge - layers
            rho[mask] = (positions[mask] - (edge - layers)) / layers
        return np.clip(rho, 0.0, 1.0)

    def build(positions):
        rho = depth_fraction(positions)
        sigma = smax * rho**spec.order
        kappa = 1.0 + (spec.kappa_max - 1.0) * rho**spec.order
        alpha = np.where(rho > 0.0, spec.alpha_max * (1.0 - rho), 0.0)
        b = np.exp(-(sigma / kappa + alpha) * dt / eps0)
        denom = (sigma + kappa * alpha) * kappa
        c = np.zeros_like(sigma)
        nz = sigma > 0.0
        c[nz] = sigma[nz] * (b[nz] - 1.0) / denom[nz] / delta
        return (b.astype(dtype), c.astype(dtype), (1.0 / kappa).astype(dtype))

    be, ce, inv_ke = build(np.arange(n, dtype=np.float64))
    bh, ch, inv_kh = build(np.arange(n, dtype=np.float64) + 0.5)
    return AxisCoeffs(be=be, ce=ce, inv_ke=inv_ke, bh=bh, ch=ch, inv_kh=inv_kh)
