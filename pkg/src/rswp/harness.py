"""Benchmark scenario runner and headline-metric extraction.

Runs the named pathway configurations at a chosen scale and mode,
writes the probe CSV / metrics JSON per scenario, and derives the
confinement metrics: in-path drop over the path, leakage floor outside
the walls, gain against a baseline run and the L-turn corner loss.
All metrics are dB differences (magnitude ratios), so they are
independent of the dB reference used in the CSV column.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceRefusal, RswpError
from .io import atomic_write_bytes, format_float, write_probe_csv, write_slice
from .probes import to_db
from .scene import PRESET_NAMES, RswpScene, preset_scene
from .solver import BoundarySpec, RunRecord, SliceSpec, StopRule, run
from .sources import aperture_source
from .voxelize import voxelize

DB_REFERENCE_LAMBDA = 5.0
CORNER_BRACKET_LAMBDA = 2.0
DEFAULT_MAX_CELLS = 1e8


@dataclass
class ScenarioResult:
    """Probe table plus derived metrics for one scenario run."""

    name: str
    mode: str
    delta: float
    path_lambda: float
    corner_lambda: float | None
    wavelength: float
    tilt_deg: float
    probe_ids: list
    lines: np.ndarray
    dists: np.ndarray
    positions: np.ndarray
    mags: np.ndarray
    phases: np.ndarray
    db: np.ndarray
    metrics: dict = field(default_factory=dict)
    record: RunRecord | None = None
    csv_path: str | None = None

    def line_table(self, line: str):
        """(dists, mags, db) of one probe line, sorted by distance."""
        sel = self.lines == line
        order = np.argsort(self.dists[sel], kind="stable")
        return (self.dists[sel][order], self.mags[sel][order], self.db[sel][order])

    def mag_at(self, line: str, dist_lambda: float) -> float:
        dists, mags, _db = self.line_table(line)
        idx = int(np.argmin(np.abs(dists - dist_lambda)))
        if abs(dists[idx] - dist_lambda) > 0.51:
            raise RswpError(
                f"{self.name}: no {line} probe near {dist_lambda} lambda")
        return float(mags[idx])


def scenario_scene(name: str, mode: str = "2d", path_lambda: float = 50.0,
                   delta: float = 0.25e-3, **solver_overrides) -> RswpScene:
    if name not in PRESET_NAMES:
        raise RswpError(f"unknown scenario {name!r}; choose from {PRESET_NAMES}")
    return preset_scene(name, mode=mode, path_lambda=path_lambda, delta=delta,
                        **solver_overrides)


def run_scene(scene: RswpScene, threads: int = 1,
              slices: list[SliceSpec] | None = None,
              max_cells: float = DEFAULT_MAX_CELLS,
              track_energy: bool = False):
    """Voxelize and run a scene; returns (record, sim, grid)."""
    grid = voxelize(scene)
    if grid.cell_count > max_cells:
        raise ResourceRefusal(
            f"{grid.cell_count:.2e} cells exceeds the budget {max_cells:.2e}; "
            "raise max_cells to proceed")
    source = aperture_source(scene, grid)
    boundaries = BoundarySpec() if scene.solver.mode == "3d" else \
        BoundarySpec(zlo="cpml")
    stop = StopRule(max_periods=scene.solver.max_periods,
                    steady_tol_db=scene.solver.steady_tol_db,
                    window_periods=scene.solver.dft_window_periods)
    record, sim = run(grid, source, scene.probes, stop=stop, threads=threads,
                      dtype=scene.solver.dtype, boundaries=boundaries,
                      safety=scene.solver.safety, slices=slices,
                      track_energy=track_energy)
    return record, sim, grid


def _corner_of(scene: RswpScene) -> float | None:
    if scene.name == "l_turn_galinstan":
        dists = [p.dist_lambda for p in scene.probes.probes if p.line == "in_path"]
        # corner sits where the centreline bends; preset puts it at 0.7*path
        return round(0.7 * max(dists))
    return None


def build_result(scene: RswpScene, record: RunRecord, path_lambda: float,
                 corner_lambda: float | None = None) -> ScenarioResult:
    probes = scene.probes.probes
    mags = np.abs(record.phasors) if record.phasors is not None else \
        np.zeros(len(probes))
    phases = np.angle(record.phasors) if record.phasors is not None else \
        np.zeros(len(probes))
    lines = np.array([p.line for p in probes])
    dists = np.array([p.dist_lambda for p in probes])
    positions = np.array([p.position for p in probes])

    in_path = (lines == "in_path")
    ref_candidates = np.where(in_path)[0]
    if len(ref_candidates):
        ref_idx = ref_candidates[np.argmin(
            np.abs(dists[ref_candidates] - DB_REFERENCE_LAMBDA))]
        reference = float(mags[ref_idx])
    else:
        reference = float(mags.max()) if len(mags) else 1.0
    if reference <= 0.0:
        reference = 1e-300
    db = to_db(mags, reference)

    result = ScenarioResult(
        name=scene.name, mode=scene.solver.mode, delta=scene.solver.delta,
        path_lambda=path_lambda, corner_lambda=corner_lambda,
        wavelength=scene.wavelength, tilt_deg=scene.probes.tilt_deg,
        probe_ids=[p.id for p in probes], lines=lines, dists=dists,
        positions=positions, mags=mags, phases=phases, db=db, record=record)

    result.metrics["steady"] = bool(record.steady)
    result.metrics["periods_run"] = record.periods
    if in_path.any():
        result.metrics["drop_over_path_db"] = drop_over_path(result)
        lf = leakage_floor(result, scene.lattice.row_sep)
        if lf is not None:
            result.metrics["leakage_floor_db"] = lf
    if corner_lambda is not None:
        result.metrics["turn_loss_db"] = turn_loss(result)
    return result


def run_paper_scenario(name: str, mode: str = "2d", path_lambda: float = 50.0,
                       delta: float = 0.25e-3, out_dir=None, threads: int = 1,
                       write_slices: bool = False,
                       max_cells: float = DEFAULT_MAX_CELLS,
                       **solver_overrides) -> ScenarioResult:
    """Run one named benchmark scenario end to end.

    Writes <out_dir>/<name>/<mode>_<delta_mm>.csv plus metrics.json (and
    a field raster when write_slices is set) and returns the result.
    """
    scene = scenario_scene(name, mode=mode, path_lambda=path_lambda,
                           delta=delta, **solver_overrides)
    slices = None
    if write_slices:
        z_probe = scene.slab.thickness + 1e-3
        slices = [SliceSpec(axis="z", offset=z_probe, component="En")]
    record, _sim, _grid = run_scene(scene, threads=threads, slices=slices,
                                    max_cells=max_cells)
    result = build_result(scene, record, path_lambda, _corner_of(scene))

    if out_dir is not None:
        write_result(result, out_dir, scene)
    return result


def write_result(result: ScenarioResult, out_dir, scene: RswpScene) -> None:
    tag = f"{result.mode}_{result.delta * 1e3:g}mm"
    scen_dir = os.path.join(os.fspath(out_dir), result.name)
    rows = []
    for k, pid in enumerate(result.probe_ids):
        rows.append({
            "probe_id": pid, "line": str(result.lines[k]),
            "dist_lambda": float(result.dists[k]),
            "x_mm": float(result.positions[k][0] * 1e3),
            "y_mm": float(result.positions[k][1] * 1e3),
            "z_mm": float(result.positions[k][2] * 1e3),
            "mag": float(result.mags[k]),
            "phase_rad": float(result.phases[k]),
            "db": float(result.db[k]),
        })
    csv_path = os.path.join(scen_dir, f"{tag}.csv")
    write_probe_csv(csv_path, result.name, rows)
    result.csv_path = csv_path

    metrics = dict(result.metrics)
    metrics["scenario"] = result.name
    metrics["mode"] = result.mode
    metrics["delta_mm"] = result.delta * 1e3
    metrics["path_lambda"] = result.path_lambda
    payload = json.dumps(metrics, indent=2, sort_keys=True,
                         default=float).encode() + b"\n"
    atomic_write_bytes(os.path.join(scen_dir, "metrics.json"), payload)

    if result.record is not None:
        for n, slc in enumerate(result.record.slices):
            write_slice(slc, os.path.join(scen_dir, f"{tag}_slice{n}.rswp"))


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

DB_FLOOR = -400.0


def _ratio_db(a: float, b: float) -> float:
    """20 log10(a/b), floored so zero readings stay finite."""
    if a <= 0.0 and b <= 0.0:
        return 0.0
    if b <= 0.0:
        return -DB_FLOOR
    if a <= 0.0:
        return DB_FLOOR
    return max(20.0 * math.log10(a / b), DB_FLOOR)


def drop_over_path(result: ScenarioResult,
                   start_lambda: float = DB_REFERENCE_LAMBDA) -> float:
    """In-path field drop (positive dB) from start_lambda to the path end."""
    m_start = result.mag_at("in_path", start_lambda)
    m_end = result.mag_at("in_path", result.path_lambda)
    return _ratio_db(m_start, m_end)


def compare(result: ScenarioResult, baseline: ScenarioResult) -> dict:
    """Per-distance in-path dB difference (result minus baseline).

    Uses raw phasor magnitudes, so both runs must share the source
    amplitude; the probe grids must coincide.
    """
    d_a, m_a, _ = result.line_table("in_path")
    d_b, m_b, _ = baseline.line_table("in_path")
    if len(d_a) != len(d_b) or not np.allclose(d_a, d_b):
        raise RswpError("probe grids do not match between result and baseline")
    delta_db = 20.0 * np.log10(np.maximum(m_a, 1e-300) / np.maximum(m_b, 1e-300))
    out = {"dist_lambda": d_a, "delta_db": delta_db}
    for mark in (35.0, 50.0):
        if d_a.min() <= mark <= d_a.max():
            out[f"at_{mark:g}"] = float(delta_db[np.argmin(np.abs(d_a - mark))])
    return out


def turn_loss(result: ScenarioResult,
              corner_lambda: float | None = None,
              window_lambda: float = 4.0) -> float:
    """Field drop across the corner (positive = loss).

    The corner partially reflects, so probes just before the bend ride a
    standing wave; comparing single readings there aliases the ripple.
    The before/after levels are therefore averaged over short windows
    whose inner edges sit two wavelengths clear of the corner.
    """
    corner = corner_lambda if corner_lambda is not None else result.corner_lambda
    if corner is None:
        raise RswpError("turn_loss needs a scenario with a corner (or an "
                        "explicit corner_lambda)")
    dists, _mags, db = result.line_table("in_path")
    inner, outer = CORNER_BRACKET_LAMBDA, CORNER_BRACKET_LAMBDA + window_lambda
    pre = (dists >= corner - outer) & (dists <= corner - inner)
    post = (dists >= corner + inner) & (dists <= corner + outer)
    if not pre.any() or not post.any():
        raise RswpError(
            f"no in-path probes bracket the corner at {corner} lambda")
    return float(db[pre].mean() - db[post].mean())


def path_slope_db(result: ScenarioResult, start_lambda: float,
                  end_lambda: float) -> float:
    """Fitted in-path dB change across [start, end] lambda (negative =
    decaying); linear fit so lattice ripple averages out."""
    dists, _mags, db = result.line_table("in_path")
    sel = (dists >= start_lambda - 1e-9) & (dists <= end_lambda + 1e-9)
    if sel.sum() < 3:
        raise RswpError("path_slope_db needs at least 3 probes in the window")
    slope = float(np.polyfit(dists[sel], db[sel], 1)[0])
    return slope * (end_lambda - start_lambda)


def leakage_floor(result: ScenarioResult, row_sep: float = 6e-3) -> float | None:
    """Median tilted-line level relative to in-path at equal radial
    distance, over tilted probes laterally beyond the wall rows."""
    d_t, m_t, _ = result.line_table("tilted")
    if len(d_t) == 0:
        return None
    rel = []
    for dist, mag in zip(d_t, m_t):
        lateral = abs(dist * result.wavelength *
                      math.sin(math.radians(result.tilt_deg)))
        if lateral <= row_sep:
            continue
        try:
            m_ip = result.mag_at("in_path", dist)
        except RswpError:
            continue
        rel.append(_ratio_db(mag, m_ip))
    if not rel:
        return None
    return float(np.median(rel))

