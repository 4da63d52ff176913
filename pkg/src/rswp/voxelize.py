"""Voxelization of a scene onto the staggered solver grid.

Materials are point-sampled at each E-component's own staggered
position (priority: bars/walls over slab over background), cylinders
staircased by a centre-in-circle test.  Tangential components lying
exactly on the slab top plane get the arithmetic mean of the two
permittivities, which keeps the slab interface second-order accurate.

In 2D mode the vertical structure is replaced by the guided mode's
effective index: the background carries eps_r = n_eff^2 plus an
equivalent conductivity reproducing the modal dielectric loss, and the
bars become full-height conductor disks.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .constants import c0, eps0
from .errors import ResolutionError, SceneError
from .lattice import WallMode
from .materials import MaterialKind
from .oracles import slab_mode_loss, tm0_grounded_slab
from .scene import RswpScene

MIN_CELLS_PER_WAVELENGTH = 15
MIN_CELLS_PER_RADIUS = 2


@dataclass
class MaterialGrid:
    """Voxelized material assignment plus per-material update inputs.

    id arrays index into the names/eps_r/sigma/is_pec tables.  cell_ids
    samples cell centres (used for reporting and partition checks); the
    per-component arrays sample each E component's staggered position.
    """

    mode: str
    delta: float
    origin: tuple[float, float, float]
    dims: tuple[int, int, int]
    names: list[str]
    eps_r: np.ndarray
    sigma: np.ndarray
    is_pec: np.ndarray
    cell_ids: np.ndarray
    comp_ids: dict[str, np.ndarray]
    freq: float
    n_eff: float = 1.0
    bar_report: list = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, ...]:
        nx, ny, nz = self.dims
        return (nx, ny) if self.mode == "2d" else (nx, ny, nz)

    @property
    def cell_count(self) -> int:
        out = 1
        for n in self.shape:
            out *= n
        return out

    def material_id(self, name: str) -> int:
        return self.names.index(name)

    def coeff_tables(self, dt: float):
        """Per-material (ca, cb, cb/delta) lookup tables for the E update."""
        loss = self.sigma * dt / (2.0 * eps0 * self.eps_r)
        ca = (1.0 - loss) / (1.0 + loss)
        cb = (dt / (eps0 * self.eps_r)) / (1.0 + loss)
        ca[self.is_pec] = 0.0
        cb[self.is_pec] = 0.0
        return ca, cb, cb / self.delta

    def checksum(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.mode, self.dims, self.delta, self.origin,
                       tuple(self.names))).encode())
        h.update(self.eps_r.tobytes())
        h.update(self.sigma.tobytes())
        h.update(self.cell_ids.tobytes())
        for key in sorted(self.comp_ids):
            h.update(self.comp_ids[key].tobytes())
        return h.hexdigest()


def apply_pec(grid: MaterialGrid, mask: np.ndarray) -> None:
    """Force the cells under a boolean mask to ideal conductor.

    Every E component sampled inside the mask gets the PEC material id,
    so its tangential field is pinned to zero on every step.  An empty
    mask is a no-op.
    """
    if mask.shape != grid.shape:
        raise SceneError("mask", f"mask shape {mask.shape} does not match "
                         f"grid {grid.shape}")
    if not mask.any():
        return
    try:
        pec_id = next(i for i, p in enumerate(grid.is_pec) if p)
    except StopIteration:
        grid.names.append("_pec")
        grid.eps_r = np.append(grid.eps_r, 1.0)
        grid.sigma = np.append(grid.sigma, 0.0)
        grid.is_pec = np.append(grid.is_pec, True)
        pec_id = len(grid.names) - 1
    for ids in grid.comp_ids.values():
        ids[mask] = pec_id
    grid.cell_ids[mask[tuple(slice(0, n) for n in grid.cell_ids.shape)]] = pec_id


def _axis_nodes(lo: float, hi: float, delta: float) -> int:
    n = round((hi - lo) / delta)
    if n < 2:
        raise SceneError("domain", "domain too small for the grid spacing")
    return n + 1


def _paint_disks(ids, xs, ys, bars, radius, name_to_id, counts=None):
    r2 = radius * radius
    for idx, (cx, cy, mat) in enumerate(bars):
        i0 = np.searchsorted(xs, cx - radius - 1e-12)
        i1 = np.searchsorted(xs, cx + radius + 1e-12)
        j0 = np.searchsorted(ys, cy - radius - 1e-12)
        j1 = np.searchsorted(ys, cy + radius + 1e-12)
        if i0 >= i1 or j0 >= j1:
            continue
        dx = xs[i0:i1, None] - cx
        dy = ys[None, j0:j1] - cy
        mask = dx * dx + dy * dy <= r2
        region = ids[i0:i1, j0:j1]
        region[mask] = name_to_id[mat]
        if counts is not None:
            counts[idx] += int(mask.sum())


def _paint_strips(ids, xs, ys, strips, radius, name_to_id):
    for (sx, sy), (ex, ey), mat in strips:
        ux, uy = ex - sx, ey - sy
        length = float(np.hypot(ux, uy))
        if length == 0.0:
            length = 1e-30
        ux, uy = ux / length, uy / length
        x0, x1 = min(sx, ex) - radius, max(sx, ex) + radius
        y0, y1 = min(sy, ey) - radius, max(sy, ey) + radius
        i0, i1 = np.searchsorted(xs, x0 - 1e-12), np.searchsorted(xs, x1 + 1e-12)
        j0, j1 = np.searchsorted(ys, y0 - 1e-12), np.searchsorted(ys, y1 + 1e-12)
        if i0 >= i1 or j0 >= j1:
            continue
        px = xs[i0:i1, None] - sx
        py = ys[None, j0:j1] - sy
        along = px * ux + py * uy
        perp = -px * uy + py * ux
        mask = (np.abs(perp) <= radius) & (along >= -radius) & (along <= length + radius)
        region = ids[i0:i1, j0:j1]
        region[mask] = name_to_id[mat]


def voxelize(scene: RswpScene, delta: float | None = None) -> MaterialGrid:
    """Voxelize a validated scene onto the Yee grid.

    Raises ResolutionError if the spacing violates the sampling criteria
    (lambda/(15*sqrt(eps_r)) in the densest dielectric, and at least two
    cells per bar radius).
    """
    if delta is None:
        delta = scene.solver.delta
    if scene.fill.sites and scene.lattice.radius < MIN_CELLS_PER_RADIUS * delta:
        raise ResolutionError(
            f"bar radius {scene.lattice.radius * 1e3:.2f} mm spans fewer than "
            f"{MIN_CELLS_PER_RADIUS} cells at delta = {delta * 1e3:.3f} mm")
    lam_phys = c0 / scene.source.f0
    eps_max = max([scene.slab.eps_r] + [m.eps_r for m in scene.materials.values()])
    if delta > lam_phys / (MIN_CELLS_PER_WAVELENGTH * np.sqrt(eps_max)):
        raise ResolutionError(
            f"delta = {delta * 1e3:.3f} mm exceeds lambda/(15*sqrt(eps_r)) = "
            f"{lam_phys / (15 * np.sqrt(eps_max)) * 1e3:.3f} mm")

    (x0, x1), (y0, y1), (z0, z1) = scene.domain
    nx = _axis_nodes(x0, x1, delta)
    ny = _axis_nodes(y0, y1, delta)
    nz = _axis_nodes(z0, z1, delta) if scene.solver.mode == "3d" else 1

    discrete = scene.fill.wall_mode is WallMode.DISCRETE_BARS
    bars = scene.fill.bar_centers(scene.lattice.pitch) if discrete else []
    strips = scene.fill.wall_strips(scene.lattice.pitch)

    if scene.solver.mode == "2d":
        return _voxelize_2d(scene, delta, x0, y0, z0, nx, ny, bars, strips, discrete)
    return _voxelize_3d(scene, delta, x0, y0, z0, nx, ny, nz, bars, strips, discrete)


def _material_tables(entries):
    names = [e[0] for e in entries]
    eps = np.array([e[1] for e in entries], dtype=np.float64)
    sig = np.array([e[2] for e in entries], dtype=np.float64)
    pec = np.array([e[3] for e in entries], dtype=bool)
    return names, eps, sig, pec


def _scene_material_entries(scene):
    """(name, eps_r, sigma_at_f0, is_pec) for every named scene material."""
    out = []
    for name, mat in sorted(scene.materials.items()):
        out.append((name, mat.eps_r, 0.0 if mat.kind is MaterialKind.PEC
                    else mat.effective_sigma(scene.source.f0),
                    mat.kind is MaterialKind.PEC))
    return out


def _voxelize_2d(scene, delta, x0, y0, z0, nx, ny, bars, strips, discrete):
    sol = tm0_grounded_slab(scene.slab.eps_r, scene.slab.thickness, scene.source.f0)
    alpha_loss = slab_mode_loss(scene.slab.eps_r, scene.slab.tan_delta,
                                scene.slab.thickness, scene.source.f0)
    sigma_bg = 2.0 * alpha_loss * sol.n_eff * eps0 * c0

    entries = [("_effective_bg", sol.n_eff**2, sigma_bg, False)]
    entries += _scene_material_entries(scene)
    names, eps, sig, pec = _material_tables(entries)
    name_to_id = {nm: i for i, nm in enumerate(names)}

    xs_node = x0 + delta * np.arange(nx)
    ys_node = y0 + delta * np.arange(ny)
    xs_cell = x0 + delta * (np.arange(nx - 1) + 0.5)
    ys_cell = y0 + delta * (np.arange(ny - 1) + 0.5)

    id_ez = np.zeros((nx, ny), dtype=np.uint8)
    cell_ids = np.zeros((nx - 1, ny - 1), dtype=np.uint8)
    counts = np.zeros(len(bars), dtype=np.int64)
    _paint_disks(id_ez, xs_node, ys_node, bars, scene.lattice.radius, name_to_id)
    _paint_disks(cell_ids, xs_cell, ys_cell, bars, scene.lattice.radius,
                 name_to_id, counts)
    _paint_strips(id_ez, xs_node, ys_node, strips, scene.lattice.radius, name_to_id)
    _paint_strips(cell_ids, xs_cell, ys_cell, strips, scene.lattice.radius, name_to_id)

    report = [{"index": i, "center": (bx, by), "material": m,
               "cells": int(counts[i]), "volume": float(counts[i]) * delta**2}
              for i, (bx, by, m) in enumerate(bars)]

    return MaterialGrid(
        mode="2d", delta=delta, origin=(x0, y0, z0), dims=(nx, ny, 1),
        names=names, eps_r=eps, sigma=sig, is_pec=pec, cell_ids=cell_ids,
        comp_ids={"Ez": id_ez}, freq=scene.source.f0, n_eff=sol.n_eff,
        bar_report=report)


def _voxelize_3d(scene, delta, x0, y0, z0, nx, ny, nz, bars, strips, discrete):
    slab = scene.slab
    sigma_slab = 2.0 * np.pi * scene.source.f0 * eps0 * slab.eps_r * slab.tan_delta
    entries = [
        ("_vacuum", 1.0, 0.0, False),
        ("_slab", slab.eps_r, sigma_slab, False),
        ("_slab_top", 0.5 * (slab.eps_r + 1.0), 0.5 * sigma_slab, False),
    ]
    entries += _scene_material_entries(scene)
    names, eps, sig, pec = _material_tables(entries)
    name_to_id = {nm: i for i, nm in enumerate(names)}
    slab_id, iface_id = name_to_id["_slab"], name_to_id["_slab_top"]

    d_top = slab.thickness
    bar_lo = d_top
    bar_hi = d_top + scene.lattice.height
    radius = scene.lattice.radius
    ztol = 1e-6 * delta

    def paint_component(zoff_half: bool, xs, ys, tangential: bool):
        """Material ids on one component's (nx, ny, nz) sample grid."""
        zs = z0 + delta * (np.arange(nz) + (0.5 if zoff_half else 0.0))
        ids = np.zeros((len(xs), len(ys), nz), dtype=np.uint8)
        in_slab = zs < d_top - ztol
        on_top = np.abs(zs - d_top) <= ztol
        ids[:, :, in_slab] = slab_id
        if tangential:
            ids[:, :, on_top] = iface_id
        else:
            ids[:, :, in_slab | on_top] = slab_id
        plane = np.zeros((len(xs), len(ys)), dtype=np.uint8)
        _paint_disks(plane, xs, ys, bars, radius, name_to_id)
        _paint_strips(plane, xs, ys, strips, radius, name_to_id)
        in_bar_z = (zs >= bar_lo - ztol) & (zs <= bar_hi + ztol)
        mask2d = plane > 0
        for k in np.nonzero(in_bar_z)[0]:
            ids[:, :, k][mask2d] = plane[mask2d]
        return ids

    xs_n = x0 + delta * np.arange(nx)
    ys_n = y0 + delta * np.arange(ny)
    xs_h = xs_n + 0.5 * delta
    ys_h = ys_n + 0.5 * delta

    comp_ids = {
        "Ex": paint_component(False, xs_h, ys_n, tangential=True),
        "Ey": paint_component(False, xs_n, ys_h, tangential=True),
        "Ez": paint_component(True, xs_n, ys_n, tangential=False),
    }

    # Cell centres, for the partition map and the per-bar voxel report.
    xs_c = x0 + delta * (np.arange(nx - 1) + 0.5)
    ys_c = y0 + delta * (np.arange(ny - 1) + 0.5)
    zs_c = z0 + delta * (np.arange(nz - 1) + 0.5)
    cell_ids = np.zeros((nx - 1, ny - 1, nz - 1), dtype=np.uint8)
    cell_ids[:, :, zs_c < d_top] = slab_id
    plane = np.zeros((nx - 1, ny - 1), dtype=np.uint8)
    counts = np.zeros(len(bars), dtype=np.int64)
    _paint_disks(plane, xs_c, ys_c, bars, radius, name_to_id, counts)
    _paint_strips(plane, xs_c, ys_c, strips, radius, name_to_id)
    kz = (zs_c >= bar_lo) & (zs_c <= bar_hi)
    mask2d = plane > 0
    for k in np.nonzero(kz)[0]:
        cell_ids[:, :, k][mask2d] = plane[mask2d]
    n_layers = int(kz.sum())

    report = [{"index": i, "center": (bx, by), "material": m,
               "cells": int(counts[i]) * n_layers,
               "cross_section_cells": int(counts[i]),
               "volume": float(counts[i]) * n_layers * delta**3}
              for i, (bx, by, m) in enumerate(bars)]

    return MaterialGrid(
        mode="3d", delta=delta, origin=(x0, y0, z0), dims=(nx, ny, nz),
        names=names, eps_r=eps, sigma=sig, is_pec=pec, cell_ids=cell_ids,
        comp_ids=comp_ids, freq=scene.source.f0, bar_report=report)
