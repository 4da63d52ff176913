"""Drive waveform and spatial source profiles.

The transducer is a soft (additive) volumetric source: a uniform
surface-normal E drive over the aperture rectangle standing on the slab
top.  Soft injection avoids the spurious reflections a hard source
would create at the aperture.  For validation runs a mode launcher
drives the analytic transverse profile of the slab's bound TM0 mode so
a clean guided wave can be excited directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SceneError
from .oracles import DispersionSolution


@dataclass(frozen=True)
class SourceSpec:
    """Resolved drive: which Ez samples to push, with what weights."""

    f0: float
    ramp_periods: int
    amplitude: float
    indices: tuple          # per-axis index arrays into the Ez array
    weights: np.ndarray     # same length as the index arrays

    def __post_init__(self):
        if self.ramp_periods < 1:
            raise SceneError("source.ramp_periods", "must be >= 1")
        if len(self.weights) == 0:
            raise SceneError("source.footprint", "source footprint is empty")


def aperture_waveform(t: float, spec: SourceSpec) -> float:
    """Ramped CW drive A*g(t)*sin(2*pi*f0*t).

    g is a raised-cosine ramp over ramp_periods periods (g(0) = 0,
    g'(ramp end) = 0, g = 1 after), so the waveform is C1-smooth at the
    ramp end and has no step discontinuities.
    """
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    t_ramp = spec.ramp_periods / spec.f0
    if t < t_ramp:
        g = 0.5 * (1.0 - math.cos(math.pi * t / t_ramp))
    else:
        g = 1.0
    return spec.amplitude * g * math.sin(2.0 * math.pi * spec.f0 * t)


def waveform_samples(spec: SourceSpec, dt: float, n_steps: int) -> np.ndarray:
    """Vectorised waveform at t = dt, 2*dt, ..., n_steps*dt."""
    t = dt * np.arange(1, n_steps + 1)
    t_ramp = spec.ramp_periods / spec.f0
    g = np.where(t < t_ramp, 0.5 * (1.0 - np.cos(np.pi * t / t_ramp)), 1.0)
    return spec.amplitude * g * np.sin(2.0 * np.pi * spec.f0 * t)


def mode_profile(dispersion: DispersionSolution, z: float) -> float:
    """Relative TM0 transverse amplitude at height z above the slab top.

    exp(-alpha_air * z) above the slab (z >= 0), cosine inside the slab
    (-thickness <= z < 0), normalized to 1.0 at the slab top.
    """
    if dispersion.alpha_air <= 0.0:
        raise ValueError("dispersion solution has no bound mode (alpha_air <= 0)")
    if z >= 0.0:
        return math.exp(-dispersion.alpha_air * z)
    if z < -dispersion.thickness:
        return 0.0
    kd = dispersion.k_slab * dispersion.thickness
    return math.cos(dispersion.k_slab * (dispersion.thickness + z)) / math.cos(kd)


def aperture_source(scene, grid) -> SourceSpec:
    """Resolve the scene's transducer onto Ez sample indices.

    2D: a transverse line of Ez nodes spanning the aperture width at the
    source x position.  3D: the aperture rectangle (width across y,
    height up from the slab top) in the plane x = source x.
    """
    src = scene.source
    delta = grid.delta
    x0, y0, z0 = grid.origin
    cx, cy, cz = src.center
    i0 = int(round((cx - x0) / delta))
    half_w = src.aperture_width / 2.0
    ny = grid.shape[1]
    js = np.arange(ny)
    ys = y0 + delta * js
    js = js[(ys >= cy - half_w - 1e-12) & (ys <= cy + half_w + 1e-12)]
    if grid.mode == "2d":
        idx = (np.full(len(js), i0), js)
        weights = np.ones(len(js))
    else:
        nz = grid.shape[2]
        ks = np.arange(nz)
        zs = z0 + delta * (ks + 0.5)
        z_lo = cz - src.aperture_height / 2.0
        z_hi = cz + src.aperture_height / 2.0
        ks = ks[(zs >= z_lo - 1e-12) & (zs <= z_hi + 1e-12)]
        jj, kk = np.meshgrid(js, ks, indexing="ij")
        idx = (np.full(jj.size, i0), jj.ravel(), kk.ravel())
        weights = np.ones(jj.size)
    return SourceSpec(f0=src.f0, ramp_periods=src.ramp_periods,
                      amplitude=src.amplitude, indices=idx, weights=weights)


def mode_launch_source(scene, grid, dispersion: DispersionSolution,
                       x: float | None = None) -> SourceSpec:
    """Plane launcher for a clean TM0 wave in 3D validation runs.

    Drives Ez across the full transverse extent at one x position, with
    the analytic vertical mode profile as weights.
    """
    if grid.mode != "3d":
        raise ValueError("mode launcher applies to 3d grids")
    src = scene.source
    delta = grid.delta
    x0, _y0, z0 = grid.origin
    if x is None:
        x = src.center[0]
    i0 = int(round((x - x0) / delta))
    _nx, ny, nz = grid.shape
    slab_top = scene.slab.thickness
    js = np.arange(ny)
    ks = np.arange(nz)
    zs = z0 + delta * (ks + 0.5)
    profile = np.array([mode_profile(dispersion, z - slab_top) for z in zs])
    keep = profile > 1e-6
    ks, profile = ks[keep], profile[keep]
    jj, kk = np.meshgrid(js, ks, indexing="ij")
    ww = np.broadcast_to(profile[None, :], jj.shape)
    return SourceSpec(f0=src.f0, ramp_periods=src.ramp_periods,
                      amplitude=src.amplitude,
                      indices=(np.full(jj.size, i0), jj.ravel(), kk.ravel()),
                      weights=ww.ravel().copy())
