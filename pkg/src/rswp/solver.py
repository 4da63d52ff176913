"""Leapfrog time-stepping engine and run orchestration.

The run loop owns the field state; each half-step is dispatched as
disjoint row blocks to a thread pool with a barrier between the H and E
halves (workers release the GIL inside the compiled kernels).  Probe
DFTs accumulate after every step once the source ramp has ended, in
windows of whole drive periods; the run stops when consecutive windows
agree within the steady tolerance on every probe, or at the period cap.

The time step is the CFL-limited value rounded down so that one drive
period is an integer number of steps; single-frequency window sums are
then exactly periodic.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constants import c0, eps0, mu0
from .cpml import AxisCoeffs, CpmlSpec, axis_coeffs
from .errors import BlowUpError, SceneError
from .io import FieldSlice
from .kernels import update_e_2d, update_e_3d, update_h_2d, update_h_3d
from .probes import ProbeRecord, ProbeSampler, finalize_phasors, steady_state_check
from .sources import SourceSpec, waveform_samples
from .voxelize import MaterialGrid

BLOWUP_FACTOR = 1e6
BLOWUP_CHECK_EVERY = 10

COMPONENT_OFFSETS_2D = {"En": (0.0, 0.0)}
COMPONENT_OFFSETS_3D = {
    "En": (0.0, 0.0, 0.5),
    "Et_long": (0.5, 0.0, 0.0),
    "Et_trans": (0.0, 0.5, 0.0),
}
COMPONENT_FIELD = {"En": "ez", "Et_long": "ex", "Et_trans": "ey"}


def cfl_dt(delta: float, safety: float = 0.99, dims: int = 3) -> float:
    """Courant-limited time step for cubic cells."""
    if delta <= 0.0:
        raise ValueError(f"delta must be > 0, got {delta}")
    if not 0.0 < safety <= 1.0:
        raise ValueError(f"safety must be in (0, 1], got {safety}")
    if dims not in (1, 2, 3):
        raise ValueError(f"dims must be 1, 2 or 3, got {dims}")
    return safety * delta / (c0 * math.sqrt(dims))


@dataclass(frozen=True)
class BoundarySpec:
    """Per-face boundary: 'cpml' (absorber), 'pec' or 'pmc'."""

    xlo: str = "cpml"
    xhi: str = "cpml"
    ylo: str = "cpml"
    yhi: str = "cpml"
    zlo: str = "pec"
    zhi: str = "cpml"

    def __post_init__(self):
        for name in ("xlo", "xhi", "ylo", "yhi", "zlo", "zhi"):
            val = getattr(self, name)
            if val not in ("cpml", "pec", "pmc"):
                raise SceneError(f"boundaries.{name}", f"unknown boundary {val!r}")


@dataclass(frozen=True)
class SliceSpec:
    axis: str = "z"
    offset: float = 0.0
    component: str = "En"


@dataclass
class StopRule:
    max_periods: int = 240
    steady_tol_db: float = 0.1
    window_periods: int = 10
    min_windows: int = 2


@dataclass
class RunRecord:
    """Outcome of one solver run."""

    steps: int = 0
    periods: float = 0.0
    wall_time_s: float = 0.0
    steady: bool = False
    dt: float = 0.0
    steps_per_period: int = 0
    probe_ids: list = field(default_factory=list)
    phasors: np.ndarray = None
    window_mags: list = field(default_factory=list)
    energy: list = field(default_factory=list)
    slices: list = field(default_factory=list)


class Simulation:
    """Owns field state, coefficients and instrumentation for one grid."""

    def __init__(self, grid: MaterialGrid, source: SourceSpec | None = None,
                 probes=None, safety: float = 0.99,
                 cpml: CpmlSpec | None = None,
                 boundaries: BoundarySpec | None = None,
                 threads: int = 1, dtype: str = "f32",
                 slices: list[SliceSpec] | None = None):
        self.grid = grid
        self.source = source
        self.threads = max(int(threads), 1)
        self.dtype = np.float32 if dtype == "f32" else np.float64
        self.mode = grid.mode
        self.cpml = cpml or CpmlSpec()
        if boundaries is None:
            boundaries = BoundarySpec()
        self.boundaries = boundaries

        dims = 2 if self.mode == "2d" else 3
        dt_limit = cfl_dt(grid.delta, safety, dims)
        if source is not None:
            period = 1.0 / source.f0
            self.steps_per_period = int(math.ceil(period / dt_limit))
            self.dt = period / self.steps_per_period
        else:
            self.steps_per_period = 0
            self.dt = dt_limit

        shape = grid.shape
        self.shape = shape
        nx = shape[0]
        ca, cb, cbd = grid.coeff_tables(self.dt)
        self.ca = ca.astype(self.dtype)
        self.cb = cb.astype(self.dtype)
        self.cbd = cbd.astype(self.dtype)
        self.dtmu = self.dtype(self.dt / mu0)
        self.dtmu_dx = self.dtype(self.dt / (mu0 * grid.delta))

        bc = boundaries
        self.axes: dict[str, AxisCoeffs] = {}
        for name, n, lo, hi in (("x", shape[0], bc.xlo, bc.xhi),
                                ("y", shape[1], bc.ylo, bc.yhi)):
            self.axes[name] = axis_coeffs(n, grid.delta, self.dt, self.cpml,
                                          lo=lo == "cpml", hi=hi == "cpml",
                                          dtype=self.dtype)
        if self.mode == "3d":
            self.axes["z"] = axis_coeffs(shape[2], grid.delta, self.dt, self.cpml,
                                         lo=bc.zlo == "cpml", hi=bc.zhi == "cpml",
                                         dtype=self.dtype)

        def lo_bound(face):
            return 0 if face == "pmc" else 1

        def hi_bound(face, n):
            return n if face == "pmc" else n - 1

        self.ilo = lo_bound(bc.xlo)
        self.ihi = hi_bound(bc.xhi, shape[0])
        self.jlo = lo_bound(bc.ylo)
        self.jhi = hi_bound(bc.yhi, shape[1])
        if self.mode == "3d":
            self.klo = lo_bound(bc.zlo)
            self.khi = hi_bound(bc.zhi, shape[2])

        self.fields = {name: np.zeros(shape, dtype=self.dtype)
                       for name in (("ez", "hx", "hy") if self.mode == "2d" else
                                    ("ex", "ey", "ez", "hx", "hy", "hz"))}
        psi_names = (("psi_hx", "psi_hy", "psi_ezx", "psi_ezy")
                     if self.mode == "2d" else
                     ("psi_hx_y", "psi_hx_z", "psi_hy_z", "psi_hy_x",
                      "psi_hz_x", "psi_hz_y", "psi_ex_y", "psi_ex_z",
                      "psi_ey_z", "psi_ey_x", "psi_ez_x", "psi_ez_y"))
        self.psi = {name: np.zeros(shape, dtype=self.dtype) for name in psi_names}

        # Contiguous row blocks per worker; fixed by the thread count so
        # identical requests always produce identical partitions.
        bounds = np.linspace(0, nx, self.threads + 1).astype(int)
        self.blocks = [(int(bounds[b]), int(bounds[b + 1]))
                       for b in range(self.threads) if bounds[b] < bounds[b + 1]]
        self._pool = None

        self.probe_set = probes
        self._setup_probes(probes)
        self.slice_specs = slices or []
        self._setup_slices()

        self.step_index = 0
        self._wave_cache = None
        if source is not None:
            self._src_weights = np.asarray(source.weights, dtype=self.dtype)

    # -- instrumentation wiring ------------------------------------------

    def _setup_probes(self, probes):
        self.records: list[ProbeRecord] = []
        self.samplers = []
        if probes is None:
            return
        offsets = COMPONENT_OFFSETS_2D if self.mode == "2d" else COMPONENT_OFFSETS_3D
        groups: dict[str, list] = {}
        for idx, p in enumerate(probes.probes):
            if p.component not in offsets:
                raise SceneError(
                    "probes.component",
                    f"component {p.component!r} is not available in {self.mode} mode")
            groups.setdefault(p.component, []).append(idx)
            self.records.append(ProbeRecord(id=p.id))
        ndim = 2 if self.mode == "2d" else 3
        for comp, idxs in sorted(groups.items()):
            positions = [probes.probes[i].position[:ndim] for i in idxs]
            sampler = ProbeSampler(positions, offsets[comp][:ndim],
                                   self.grid.origin[:ndim], self.grid.delta,
                                   self.shape)
            self.samplers.append((COMPONENT_FIELD[comp], np.array(idxs), sampler))

    def _setup_slices(self):
        self._slice_acc = []
        for spec in self.slice_specs:
            if self.mode == "2d":
                if spec.axis != "z":
                    raise SceneError("slice.axis", "2d mode slices are z-planes")
                plane_shape = self.shape
            else:
                axis_idx = "xyz".index(spec.axis)
                plane_shape = tuple(n for a, n in enumerate(self.shape) if a != axis_idx)
            self._slice_acc.append({
                "spec": spec,
                "acc_i": np.zeros(plane_shape, dtype=np.float64),
                "acc_q": np.zeros(plane_shape, dtype=np.float64),
                "result": None,
            })

    def _slice_plane(self, spec: SliceSpec) -> np.ndarray:
        comp = COMPONENT_FIELD[spec.component]
        arr = self.fields[comp]
        if self.mode == "2d":
            return arr
        axis_idx = "xyz".index(spec.axis)
        offsets = COMPONENT_OFFSETS_3D[spec.component]
        frac = (spec.offset - self.grid.origin[axis_idx]) / self.grid.delta
        k = int(round(frac - offsets[axis_idx]))
        k = min(max(k, 0), self.shape[axis_idx] - 1)
        return np.take(arr, k, axis=axis_idx)

    # -- stepping ---------------------------------------------------------

    def _dispatch(self, fn, args):
        if len(self.blocks) == 1:
            i0, i1 = self.blocks[0]
            fn(i0, i1, *args)
            return
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.threads)
        futures = [self._pool.submit(fn, i0, i1, *args)
                   for (i0, i1) in self.blocks]
        for fut in futures:
            fut.result()

    def _half_step_h(self):
        f, psi, ax = self.fields, self.psi, self.axes
        if self.mode == "2d":
            args = (f["ez"], f["hx"], f["hy"], psi["psi_hx"], psi["psi_hy"],
                    ax["x"].bh, ax["x"].ch, ax["x"].inv_kh,
                    ax["y"].bh, ax["y"].ch, ax["y"].inv_kh,
                    self.dtmu_dx, self.dtmu)
            self._dispatch(update_h_2d, args)
        else:
            args = (f["ex"], f["ey"], f["ez"], f["hx"], f["hy"], f["hz"],
                    psi["psi_hx_y"], psi["psi_hx_z"], psi["psi_hy_z"],
                    psi["psi_hy_x"], psi["psi_hz_x"], psi["psi_hz_y"],
                    ax["x"].bh, ax["x"].ch, ax["x"].inv_kh,
                    ax["y"].bh, ax["y"].ch, ax["y"].inv_kh,
                    ax["z"].bh, ax["z"].ch, ax["z"].inv_kh,
                    self.dtmu_dx, self.dtmu)
            self._dispatch(update_h_3d, args)

    def _half_step_e(self):
        f, psi, ax = self.fields, self.psi, self.axes
        if self.mode == "2d":
            ids = self.grid.comp_ids["Ez"]
            args = (f["ez"], f["hx"], f["hy"], psi["psi_ezx"], psi["psi_ezy"],
                    ax["x"].be, ax["x"].ce, ax["x"].inv_ke,
                    ax["y"].be, ax["y"].ce, ax["y"].inv_ke,
                    ids, self.ca, self.cb, self.cbd, self.jlo, self.jhi)
            blocks = [(max(i0, self.ilo), min(i1, self.ihi)) for i0, i1 in self.blocks]
            if len(blocks) == 1:
                update_e_2d(blocks[0][0], blocks[0][1], *args)
            else:
                if self._pool is None:
                    self._pool = ThreadPoolExecutor(max_workers=self.threads)
                futures = [self._pool.submit(update_e_2d, i0, i1, *args)
                           for (i0, i1) in blocks if i0 < i1]
                for fut in futures:
                    fut.result()
        else:
            args = (f["ex"], f["ey"], f["ez"], f["hx"], f["hy"], f["hz"],
                    psi["psi_ex_y"], psi["psi_ex_z"], psi["psi_ey_z"],
                    psi["psi_ey_x"], psi["psi_ez_x"], psi["psi_ez_y"],
                    ax["x"].be, ax["x"].ce, ax["x"].inv_ke,
                    ax["y"].be, ax["y"].ce, ax["y"].inv_ke,
                    ax["z"].be, ax["z"].ce, ax["z"].inv_ke,
                    self.grid.comp_ids["Ex"], self.grid.comp_ids["Ey"],
                    self.grid.comp_ids["Ez"], self.ca, self.cb, self.cbd,
                    self.jlo, self.jhi, self.klo, self.khi, self.ilo, self.ihi)
            self._dispatch(update_e_3d, args)

    def step(self, check_blowup: bool = False) -> float:
        """Advance one full leapfrog step (H half then E, then soft source)."""
        self._half_step_h()
        self._half_step_e()
        self.step_index += 1
        if self.source is not None:
            wf = self._waveform_value(self.step_index)
            # Soft additive drive, scaled by dt*f0 so the injected signal
            # per period is resolution-independent.
            self.fields["ez"][self.source.indices] += (
                self.dtype(wf * self.dt * self.source.f0) * self._src_weights)
        if check_blowup:
            self.check_blowup()
        return self.step_index * self.dt

    def energy_step(self) -> float:
        """Advance one step, returning the discrete EM invariant.

        The leapfrog invariant pairs the E field between two H half
        steps with the product of those H values:
        U_n = eps/2 * E_n^2 + mu/2 * H(n-1/2) . H(n+1/2), so the energy
        is evaluated mid-step, after H advances and before E does.
        """
        h_prev = {k: self.fields[k].copy()
                  for k in self.fields if k.startswith("h")}
        self._half_step_h()
        energy = self.em_energy(h_prev)
        self._half_step_e()
        self.step_index += 1
        if self.source is not None:
            wf = self._waveform_value(self.step_index)
            self.fields["ez"][self.source.indices] += (
                self.dtype(wf * self.dt * self.source.f0) * self._src_weights)
        return energy

    def _waveform_value(self, n: int) -> float:
        if self._wave_cache is None or len(self._wave_cache) < n:
            horizon = max(n, 4096)
            self._wave_cache = waveform_samples(self.source, self.dt, horizon)
        return float(self._wave_cache[n - 1])

    def check_blowup(self):
        scale = self.source.amplitude if self.source is not None else 1.0
        threshold = BLOWUP_FACTOR * scale
        for name, arr in self.fields.items():
            peak = float(np.abs(arr).max())
            if not math.isfinite(peak) or peak > threshold:
                raise BlowUpError(self.step_index, peak, threshold)

    def em_energy(self, h_prev: dict | None = None) -> float:
        """Discrete EM energy; exact leapfrog invariant when h_prev is the
        field from the previous half step."""
        eps_tab = eps0 * self.grid.eps_r
        total = 0.0
        e_names = ("ez",) if self.mode == "2d" else ("ex", "ey", "ez")
        comp_key = {"ex": "Ex", "ey": "Ey", "ez": "Ez"}
        for name in e_names:
            ids = self.grid.comp_ids[comp_key[name]] if self.mode == "3d" else \
                self.grid.comp_ids["Ez"]
            e64 = self.fields[name].astype(np.float64)
            total += 0.5 * float((eps_tab[ids] * e64 * e64).sum())
        h_names = ("hx", "hy") if self.mode == "2d" else ("hx", "hy", "hz")
        for name in h_names:
            h_new = self.fields[name].astype(np.float64)
            h_old = h_new if h_prev is None else h_prev[name].astype(np.float64)
            total += 0.5 * mu0 * float((h_old * h_new).sum())
        cell = self.grid.delta ** (2 if self.mode == "2d" else 3)
        return total * cell

    # -- run loop ---------------------------------------------------------

    def run(self, stop: StopRule | None = None, track_energy: bool = False) -> RunRecord:
        if self.source is None:
            raise SceneError("source", "run() requires a drive source")
        stop = stop or StopRule()
        n_sp = self.steps_per_period
        ramp_steps = self.source.ramp_periods * n_sp
        window_steps = stop.window_periods * n_sp
        max_steps = stop.max_periods * n_sp
        omega = 2.0 * math.pi * self.source.f0

        self._wave_cache = waveform_samples(self.source, self.dt, max_steps + 1)
        rec = RunRecord(dt=self.dt, steps_per_period=n_sp,
                        probe_ids=[r.id for r in self.records])
        t_start = time.perf_counter()
        window_count = 0
        history: list[np.ndarray] = []
        group_acc = [[np.zeros(len(idxs)), np.zeros(len(idxs))]
                     for _f, idxs, _s in self.samplers]

        for n in range(1, max_steps + 1):
            if track_energy:
                rec.energy.append(self.energy_step())
            else:
                self.step()
            if n % BLOWUP_CHECK_EVERY == 0:
                self.check_blowup()
            if n <= ramp_steps:
                continue

            t = n * self.dt
            cw = math.cos(omega * t) * self.dt
            sw = -math.sin(omega * t) * self.dt
            for g, (field_name, _idxs, sampler) in enumerate(self.samplers):
                samples = sampler.sample(self.fields[field_name].reshape(-1))
                group_acc[g][0] += samples * cw
                group_acc[g][1] += samples * sw
            for acc in self._slice_acc:
                plane = self._slice_plane(acc["spec"]).astype(np.float64)
                acc["acc_i"] += plane * cw
                acc["acc_q"] += plane * sw

            window_count += 1
            if window_count == window_steps:
                window_count = 0
                if self.records:
                    elapsed = window_steps * self.dt
                    for g, (_f, idxs, _s) in enumerate(self.samplers):
                        acc_i, acc_q = group_acc[g]
                        for local, global_idx in enumerate(idxs):
                            r = self.records[global_idx]
                            r.acc_i = float(acc_i[local])
                            r.acc_q = float(acc_q[local])
                            r.elapsed = elapsed
                        acc_i[:] = 0.0
                        acc_q[:] = 0.0
                    phasors = finalize_phasors(self.records, stop.window_periods,
                                               self.source.f0)
                    history.append(np.abs(phasors))
                    rec.phasors = phasors
                    rec.window_mags.append(np.abs(phasors))
                self._finalize_slices(stop.window_periods)
                if (len(history) >= stop.min_windows
                        and steady_state_check(history, stop.steady_tol_db)):
                    rec.steady = True
                    rec.steps = n
                    break
        else:
            rec.steps = max_steps

        rec.periods = rec.steps / n_sp if n_sp else 0.0
        rec.wall_time_s = time.perf_counter() - t_start
        rec.slices = [acc["result"] for acc in self._slice_acc
                      if acc["result"] is not None]
        self.check_blowup()
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None
        return rec

    def _finalize_slices(self, window_periods: int):
        if not self._slice_acc or self.source is None:
            return
        window = window_periods / self.source.f0
        for acc in self._slice_acc:
            phasor = (2.0 / window) * (acc["acc_i"] + 1j * acc["acc_q"])
            spec = acc["spec"]
            acc["result"] = FieldSlice(
                axis=spec.axis, offset=spec.offset, component=spec.component,
                mags=np.abs(phasor).astype(np.float32),
                phases=np.angle(phasor).astype(np.float32),
                spacing=self.grid.delta)
            acc["acc_i"][:] = 0.0
            acc["acc_q"][:] = 0.0


def run(grid: MaterialGrid, source: SourceSpec, probes, stop: StopRule | None = None,
        threads: int = 1, dtype: str = "f32",
        boundaries: BoundarySpec | None = None,
        cpml: CpmlSpec | None = None, safety: float = 0.99,
        slices: list[SliceSpec] | None = None,
        track_energy: bool = False) -> tuple[RunRecord, Simulation]:
    """Convenience wrapper: build a Simulation and run it to the stop rule."""
    sim = Simulation(grid, source=source, probes=probes, safety=safety,
                     cpml=cpml, boundaries=boundaries, threads=threads,
                     dtype=dtype, slices=slices)
    record = sim.run(stop=stop, track_energy=track_energy)
    return record, sim
