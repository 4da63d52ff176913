"""Material definitions and lossy E-update coefficients.

Conductors are modelled with their bulk conductivity directly in the
update coefficients.  At microwave frequencies the skin depth of the
metals involved (~1.6 um for the liquid metal) is far below any sane
cell size, so filled bars behave as near-perfect conductors; dedicated
surface-impedance boundaries are out of scope.  Dielectric loss is
folded into an equivalent conductivity evaluated at the drive frequency
(narrowband runs only).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .constants import eps0
from .errors import SceneError


class MaterialKind(enum.Enum):
    VACUUM = "vacuum"
    DIELECTRIC = "dielectric"
    CONDUCTOR = "conductor"
    PEC = "pec"


@dataclass(frozen=True)
class Material:
    """One entry of the scene material table.

    PEC takes no other parameters; conductors take sigma; dielectrics
    take eps_r and optionally tan_delta.
    """

    kind: MaterialKind
    eps_r: float = 1.0
    sigma: float = 0.0
    tan_delta: float = 0.0

    def __post_init__(self):
        if self.eps_r < 1.0:
            raise SceneError("eps_r", f"must be >= 1, got {self.eps_r}")
        if self.sigma < 0.0:
            raise SceneError("sigma", f"must be >= 0, got {self.sigma}")
        if self.tan_delta < 0.0:
            raise SceneError("tan_delta", f"must be >= 0, got {self.tan_delta}")
        if self.kind is MaterialKind.PEC and (
            self.eps_r != 1.0 or self.sigma != 0.0 or self.tan_delta != 0.0
        ):
            raise SceneError("kind", "PEC takes no material parameters")

    def effective_sigma(self, freq: float | None = None) -> float:
        """Conductivity including the dielectric-loss equivalent at freq."""
        sigma = self.sigma
        if self.tan_delta > 0.0:
            if freq is None:
                raise SceneError(
                    "tan_delta", "lossy dielectric requires a frequency to "
                    "convert tan_delta to conductivity"
                )
            sigma += 2.0 * math.pi * freq * eps0 * self.eps_r * self.tan_delta
        return sigma


VACUUM = Material(MaterialKind.VACUUM)


def default_materials() -> dict[str, Material]:
    """Built-in material table: metals, laminate and ideal conductors."""
    return {
        "air": Material(MaterialKind.VACUUM),
        "rt5880": Material(MaterialKind.DIELECTRIC, eps_r=2.2, tan_delta=0.0009),
        "galinstan": Material(MaterialKind.CONDUCTOR, sigma=3.46e6),
        "copper": Material(MaterialKind.CONDUCTOR, sigma=59.6e6),
        "pec": Material(MaterialKind.PEC),
    }


@dataclass(frozen=True)
class UpdateCoeffs:
    """Per-material E-update coefficients.

    E_new = ca * E_old + cb * curl(H), with the curl taken as raw field
    differences divided by the cell size folded into cb.  PEC is encoded
    as ca = cb = 0, which pins the component to zero every step.
    """

    ca: float
    cb: float
    eps: float = eps0
    sigma: float = 0.0
    dt: float = 0.0


def lossy_coeffs(material: Material, dt: float, delta: float = 1.0,
                 freq: float | None = None) -> UpdateCoeffs:
    """Standard lossy-material update coefficients.

    Parameters
    ----------
    material : Material
    dt : float
        Time step in seconds, > 0.
    delta : float
        Cell size in metres; folded into cb so kernels use raw
        neighbour differences.
    freq : float, optional
        Drive frequency; required for lossy dielectrics so tan_delta can
        be converted to an equivalent conductivity.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if material.kind is MaterialKind.PEC:
        return UpdateCoeffs(ca=0.0, cb=0.0, eps=eps0, sigma=math.inf, dt=dt)
    eps = eps0 * material.eps_r
    sigma = material.effective_sigma(freq)
    loss = sigma * dt / (2.0 * eps)
    ca = (1.0 - loss) / (1.0 + loss)
    cb = (dt / (eps * delta)) / (1.0 + loss)
    return UpdateCoeffs(ca=ca, cb=cb, eps=eps, sigma=sigma, dt=dt)
