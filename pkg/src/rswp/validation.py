"""Built-in solver validation: oracle table plus quick physics checks.

Shared by the `validate` CLI subcommand and the test suite so both
exercise the same implementations:

* oracle self-consistency (dispersion residual, closed-form values)
* 1D vacuum phase velocity against the analytic wave speed, at two
  resolutions to confirm second-order convergence
* absorber reflection at normal incidence via the standing-wave ratio
* energy conservation in a closed lossless box
* 3D slab-mode launch: measured propagation constant and vertical decay
  against the dispersion oracle (the long check; optional)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import c0, eta0, wavenumber
from .cpml import CpmlSpec
from .errors import RswpError
from .oracles import (impedance_wave_decay, skin_depth, spreading_db,
                      tm0_grounded_slab)
from .scene import Probe, ProbeSet, RswpScene, Slab, SolverSettings, Transducer
from .solver import BoundarySpec, Simulation, StopRule
from .sources import SourceSpec, mode_launch_source
from .voxelize import MaterialGrid, voxelize


@dataclass
class Check:
    name: str
    value: float
    limit: str
    passed: bool

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.value:.6g} (require {self.limit})"


def uniform_grid(mode: str, shape, delta: float, eps_r: float = 1.0,
                 sigma: float = 0.0, freq: float = 30e9) -> MaterialGrid:
    """Homogeneous grid for solver physics tests."""
    names = ["_bg"]
    nx, ny = shape[0], shape[1]
    nz = shape[2] if mode == "3d" else 1
    full = (nx, ny) if mode == "2d" else (nx, ny, nz)
    ids = np.zeros(full, dtype=np.uint8)
    comp_ids = {"Ez": ids} if mode == "2d" else {
        "Ex": ids, "Ey": ids.copy(), "Ez": ids.copy()}
    cell_shape = tuple(max(n - 1, 1) for n in full)
    return MaterialGrid(
        mode=mode, delta=delta, origin=(0.0, 0.0, 0.0), dims=(nx, ny, nz),
        names=names, eps_r=np.array([eps_r]), sigma=np.array([sigma]),
        is_pec=np.array([False]), cell_ids=np.zeros(cell_shape, dtype=np.uint8),
        comp_ids=comp_ids, freq=freq)


def check_oracles() -> list[Check]:
    sol = tm0_grounded_slab(2.2, 1e-3, 30e9)
    alpha_r = impedance_wave_decay(130.0, 30e9)
    checks = [
        Check("TM0 dispersion residual", sol.residual(), "< 1e-10",
              sol.residual() < 1e-10),
        Check("TM0 bracket k0 < beta < sqrt(eps_r) k0",
              sol.n_eff, "in (1, 1.4832)", 1.0 < sol.n_eff < math.sqrt(2.2)),
        Check("reactive-plane decay alpha(130 ohm)", alpha_r,
              "216.8 +/- 0.1 Np/m", abs(alpha_r - 216.8) <= 0.1),
        Check("skin depth galinstan", skin_depth(3.46e6, 30e9) * 1e6,
              "1.56 +/- 0.01 um", abs(skin_depth(3.46e6, 30e9) * 1e6 - 1.56) <= 0.01),
        Check("skin depth copper", skin_depth(59.6e6, 30e9) * 1e6,
              "0.38 +/- 0.01 um", abs(skin_depth(59.6e6, 30e9) * 1e6 - 0.38) <= 0.01),
        Check("cylindrical spreading 5->50 lambda", spreading_db(5, 50),
              "10.00 +/- 0.01 dB", abs(spreading_db(5, 50) - 10.0) <= 0.01),
    ]
    return checks


def _plane_wave_sim(cells_per_lambda: int, nx_lambdas: float = 26.0,
                    safety: float = 0.5, f0: float = 30e9,
                    dtype: str = "f64"):
    """Thin-strip 2D run that is exactly one-dimensional.

    The line source spans the full y extent and both y faces are
    magnetic walls, so the field stays uniform across y and propagates
    purely along x; absorbers sit on both x faces only.
    """
    lam = c0 / f0
    delta = lam / cells_per_lambda
    nx = int(round(nx_lambdas * cells_per_lambda)) + 1
    ny = 4
    grid = uniform_grid("2d", (nx, ny), delta, freq=f0)
    i_src = 3 * cells_per_lambda
    js = np.arange(ny)
    source = SourceSpec(f0=f0, ramp_periods=8, amplitude=1.0,
                        indices=(np.full(ny, i_src), js), weights=np.ones(ny))
    boundaries = BoundarySpec(xlo="cpml", xhi="cpml", ylo="pmc", yhi="pmc")
    return grid, source, boundaries, delta, i_src, lam


def measure_phase_velocity(cells_per_lambda: int, f0: float = 30e9,
                           safety: float = 0.5) -> float:
    """Relative phase-velocity error of a 1D vacuum wave."""
    grid, source, boundaries, delta, i_src, lam = _plane_wave_sim(cells_per_lambda, f0=f0)
    nx = grid.shape[0]
    # probes along the centre row from 10 to 20 lambda past the source
    xs = np.arange(i_src + 10 * cells_per_lambda,
                   i_src + 20 * cells_per_lambda + 1, 2)
    probes = ProbeSet(probes=tuple(
        Probe(id=f"p{n}", position=(x * delta, 2 * delta, 0.0), component="En")
        for n, x in enumerate(xs)), spacing_lambda=1.0)
    sim = Simulation(grid, source=source, probes=probes, safety=safety,
                     boundaries=boundaries, dtype="f64")
    rec = sim.run(StopRule(max_periods=80, steady_tol_db=0.02, window_periods=5))
    phases = np.unwrap(np.angle(rec.phasors))
    x_m = xs * delta
    slope = np.polyfit(x_m, phases, 1)[0]
    k_meas = -slope  # outgoing wave phase decreases with x
    k_exact = wavenumber(f0)
    return abs(k_exact / abs(k_meas) - 1.0)


def check_phase_velocity() -> list[Check]:
    err20 = measure_phase_velocity(20)
    err40 = measure_phase_velocity(40)
    ratio = err20 / err40 if err40 > 0 else math.inf
    return [
        Check("1D phase-velocity error @ 20 cells/lambda", err20,
              "< 0.005", err20 < 0.005),
        Check("dispersion error reduction 20 -> 40 cells", ratio,
              "in [2.8, 5.5] (2nd order ~ 4x)", 2.8 <= ratio <= 5.5),
    ]


def measure_cpml_reflection(layers: int = 10, f0: float = 30e9) -> float:
    """Normal-incidence absorber reflection (dB) via the standing-wave ratio.

    A steady 1D wave runs into the +x absorber; over the last few
    wavelengths in front of it, |E(x)| ripples with amplitude
    (1+|G|)/(1-|G|), giving the reflection magnitude |G|.
    """
    cells = 20
    grid, source, boundaries, delta, i_src, lam = _plane_wave_sim(
        cells_per_lambda=cells, nx_lambdas=20.0, f0=f0)
    nx = grid.shape[0]
    xs = np.arange(nx - layers - 4 * cells, nx - layers - 2)
    probes = ProbeSet(probes=tuple(
        Probe(id=f"p{n}", position=(x * delta, 2 * delta, 0.0), component="En")
        for n, x in enumerate(xs)), spacing_lambda=1.0)
    sim = Simulation(grid, source=source, probes=probes, safety=0.9,
                     boundaries=boundaries, dtype="f64",
                     cpml=CpmlSpec(layers=layers))
    rec = sim.run(StopRule(max_periods=70, steady_tol_db=0.02, window_periods=5))
    mags = np.abs(rec.phasors)
    swr_hi, swr_lo = mags.max(), mags.min()
    gamma = (swr_hi - swr_lo) / (swr_hi + swr_lo)
    return 20.0 * math.log10(max(gamma, 1e-12))


def check_cpml() -> list[Check]:
    refl = measure_cpml_reflection()
    return [Check("CPML normal-incidence reflection", refl, "< -50 dB",
                  refl < -50.0)]


def measure_energy_drift(steps: int = 1000, n: int = 24,
                         seed: int = 7) -> float:
    """Max relative drift of the discrete EM invariant in a closed
    lossless PEC box with the source off."""
    delta = 0.5e-3
    grid = uniform_grid("3d", (n, n, n), delta)
    boundaries = BoundarySpec(xlo="pec", xhi="pec", ylo="pec", yhi="pec",
                              zlo="pec", zhi="pec")
    sim = Simulation(grid, source=None, boundaries=boundaries, dtype="f64")
    rng = np.random.default_rng(seed)
    for name in ("ex", "ey", "ez"):
        arr = rng.standard_normal(sim.shape)
        sim.fields[name][...] = arr
    _zero_boundary_tangential(sim)
    energies = np.array([sim.energy_step() for _ in range(steps)])
    return float(np.abs(energies - energies[0]).max() / energies[0])


def _zero_boundary_tangential(sim: Simulation):
    """Pin tangential E and unused staggered entries on the box faces."""
    ex, ey, ez = sim.fields["ex"], sim.fields["ey"], sim.fields["ez"]
    ex[-1, :, :] = 0.0
    ex[:, 0, :] = 0.0
    ex[:, -1, :] = 0.0
    ex[:, :, 0] = 0.0
    ex[:, :, -1] = 0.0
    ey[:, -1, :] = 0.0
    ey[0, :, :] = 0.0
    ey[-1, :, :] = 0.0
    ey[:, :, 0] = 0.0
    ey[:, :, -1] = 0.0
    ez[:, :, -1] = 0.0
    ez[0, :, :] = 0.0
    ez[-1, :, :] = 0.0
    ez[:, 0, :] = 0.0
    ez[:, -1, :] = 0.0


def check_energy() -> list[Check]:
    drift = measure_energy_drift()
    return [Check("closed PEC box energy drift over 1000 steps", drift,
                  "< 0.001", drift < 0.001)]


def quick_suite() -> list[Check]:
    """The fast validation set used by the `validate` command."""
    return check_oracles() + check_phase_velocity() + check_cpml() + check_energy()


# ---------------------------------------------------------------------------
# 3D slab-mode validation (the long check)
# ---------------------------------------------------------------------------

def slab_mode_scene(path_lambda: float = 8.0, delta: float = 0.25e-3,
                    max_periods: int = 70) -> RswpScene:
    """Thin-strip 3D scene: bare grounded slab, magnetic side walls."""
    slab = Slab()
    f0 = 30e9
    lam_design = 1e-2
    pml = 10 * delta
    margin = lam_design
    x_hi = path_lambda * lam_design + margin + pml
    x_lo = -2 * lam_design - pml
    ny = 8
    z_hi = slab.thickness + 10e-3 + margin + pml
    probes = []
    # phase line above the slab along x
    for n, d in enumerate(np.arange(3.0, path_lambda + 1e-9, 0.25)):
        probes.append(Probe(id=f"ph_{n:03d}",
                            position=(d * lam_design, ny // 2 * delta,
                                      slab.thickness + 1e-3),
                            component="En", line="in_path", dist_lambda=d))
    # vertical decay line at 5 lambda
    for n, z in enumerate(np.arange(slab.thickness + 0.5e-3,
                                    slab.thickness + 6e-3, 0.25e-3)):
        probes.append(Probe(id=f"vz_{n:03d}",
                            position=(5 * lam_design, ny // 2 * delta, z),
                            component="En", line="vertical",
                            dist_lambda=5.0))
    scene = RswpScene(
        name="slab_mode_validation", slab=slab,
        source=Transducer(center=(0.0, ny // 2 * delta, slab.thickness),
                          f0=f0, ramp_periods=8),
        probes=ProbeSet(probes=tuple(probes)),
        domain=((x_lo, x_hi), (0.0, (ny - 1) * delta), (0.0, z_hi)),
        solver=SolverSettings(delta=delta, mode="3d", max_periods=max_periods,
                              dtype="f64"),
        guide_into_absorber=True)
    return scene


def run_slab_mode_validation(delta: float = 0.25e-3, path_lambda: float = 8.0,
                             threads: int = 1) -> dict:
    """Launch the TM0 mode on the bare slab and measure beta and the
    vertical decay rate from the steady phasors."""
    scene = slab_mode_scene(path_lambda=path_lambda, delta=delta)
    grid = voxelize(scene)
    sol = tm0_grounded_slab(scene.slab.eps_r, scene.slab.thickness, scene.source.f0)
    source = mode_launch_source(scene, grid, sol)
    boundaries = BoundarySpec(xlo="cpml", xhi="cpml", ylo="pmc", yhi="pmc",
                              zlo="pec", zhi="cpml")
    sim = Simulation(grid, source=source, probes=scene.probes,
                     boundaries=boundaries, dtype=scene.solver.dtype,
                     threads=threads)
    rec = sim.run(StopRule(max_periods=scene.solver.max_periods,
                           steady_tol_db=0.05, window_periods=10))

    lines = np.array([p.line for p in scene.probes.probes])
    phase_sel = lines == "in_path"
    phasors = rec.phasors
    xs = np.array([p.position[0] for p in scene.probes.probes])[phase_sel]
    phases = np.unwrap(np.angle(phasors[phase_sel]))
    beta_meas = -np.polyfit(xs, phases, 1)[0]

    vert_sel = lines == "vertical"
    zs = np.array([p.position[2] for p in scene.probes.probes])[vert_sel]
    mags = np.abs(phasors[vert_sel])
    # fit the exponential tail above the slab, away from the interface
    slab_top = scene.slab.thickness
    tail = zs >= slab_top + 1e-3
    alpha_meas = -np.polyfit(zs[tail], np.log(mags[tail]), 1)[0]

    return {
        "beta_measured": float(beta_meas),
        "beta_oracle": sol.beta,
        "beta_rel_err": float(abs(beta_meas - sol.beta) / sol.beta),
        "alpha_measured": float(alpha_meas),
        "alpha_oracle": sol.alpha_air,
        "alpha_rel_err": float(abs(alpha_meas - sol.alpha_air) / sol.alpha_air),
        "decay_height_measured_mm": float(1000.0 / alpha_meas),
        "steady": rec.steady,
        "periods": rec.periods,
        "zs": zs, "vertical_mags": mags,
    }
