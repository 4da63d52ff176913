"""Command-line entry point.

Subcommands: run (execute a preset or scene file), validate (oracle
table plus the quick physics suite), scenarios (list presets), estimate
(cell count / memory / projected runtime) and slice (inspect a field
raster).  Exit codes: 0 success, 1 validation or determinism failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .errors import RswpError
from .harness import build_result, run_paper_scenario, run_scene, write_result
from .io import atomic_write_bytes, read_slice
from .oracles import oracle_table
from .scene import PRESET_NAMES, load_scene
from .solver import SliceSpec
from .validation import quick_suite
from .voxelize import voxelize

SCENARIO_BLURBS = {
    "straight_galinstan": "straight pathway, liquid-metal bar rows",
    "straight_copper": "straight pathway, copper bar rows",
    "pec_walls": "straight pathway, continuous ideal-conductor walls",
    "surface_only": "bare slab, no pathway (spreading baseline)",
    "l_turn_galinstan": "right-angle turn at 70% of the path",
}

CALIBRATION_PATH = os.path.join(os.path.expanduser("~"), ".cache", "rswp",
                                "calibration.json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rswp",
        description="FDTD simulator for reconfigurable surface-wave pathways")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a benchmark scenario or scene file")
    run_p.add_argument("--scenario", help=f"preset name, one of {', '.join(PRESET_NAMES)}")
    run_p.add_argument("--scene", help="scene JSON file")
    run_p.add_argument("--mode", choices=("2d", "3d"), default="2d")
    run_p.add_argument("--delta-mm", type=float, default=0.25,
                       help="grid spacing in mm (default 0.25)")
    run_p.add_argument("--path-lambda", type=float, default=50.0,
                       help="pathway length in wavelengths (default 50)")
    run_p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    run_p.add_argument("--out", default=None,
                       help="output root (default $RSWP_OUT or ./results)")
    run_p.add_argument("--slice", dest="slice_plane", default=None,
                       metavar="PLANE", help="record a field raster, e.g. z=2.0 (mm)")
    run_p.add_argument("--baseline", default=None,
                       help="scenario to compare against (runs it if needed)")
    run_p.add_argument("--max-cells", type=float, default=1e8)
    run_p.add_argument("--check-determinism", action="store_true",
                       help="run twice with different thread counts and "
                            "compare the CSV bytes")

    sub.add_parser("validate", help="print the oracle table and run the quick physics suite")
    sub.add_parser("scenarios", help="list built-in scenarios")

    est_p = sub.add_parser("estimate", help="estimate cells, memory and runtime")
    est_p.add_argument("--scenario", default="straight_galinstan")
    est_p.add_argument("--scene")
    est_p.add_argument("--mode", choices=("2d", "3d"), default="2d")
    est_p.add_argument("--delta-mm", type=float, default=0.25)
    est_p.add_argument("--path-lambda", type=float, default=50.0)

    slc_p = sub.add_parser("slice", help="inspect a field raster file")
    slc_p.add_argument("raster")
    return parser


def out_root(arg) -> str:
    return arg or os.environ.get("RSWP_OUT") or "results"


def parse_slice(text: str) -> SliceSpec:
    try:
        axis, offset = text.split("=")
        return SliceSpec(axis=axis.strip(), offset=float(offset) * 1e-3,
                         component="En")
    except (ValueError, AttributeError):
        raise RswpError(f"bad slice spec {text!r}; expected e.g. z=2.0")


def cmd_run(args) -> int:
    if bool(args.scenario) == bool(args.scene):
        print("run: exactly one of --scenario or --scene is required",
              file=sys.stderr)
        return 2
    if args.scenario and args.scenario not in PRESET_NAMES:
        print(f"run: unknown scenario {args.scenario!r}; available: "
              f"{', '.join(PRESET_NAMES)}", file=sys.stderr)
        return 2
    out = out_root(args.out)
    slices = [parse_slice(args.slice_plane)] if args.slice_plane else None

    def one_run(threads):
        if args.scenario:
            return run_paper_scenario(
                args.scenario, mode=args.mode, path_lambda=args.path_lambda,
                delta=args.delta_mm * 1e-3, out_dir=out, threads=threads,
                write_slices=slices is not None, max_cells=args.max_cells)
        scene = load_scene(args.scene)
        record, _sim, _grid = run_scene(scene, threads=threads, slices=slices,
                                        max_cells=args.max_cells)
        dists = [p.dist_lambda for p in scene.probes.probes] or [0.0]
        result = build_result(scene, record, max(dists))
        write_result(result, out, scene)
        return result

    t0 = time.perf_counter()
    result = one_run(args.threads)
    elapsed = time.perf_counter() - t0
    print(f"{result.name}: {result.record.steps} steps "
          f"({result.record.periods:.0f} periods), steady={result.record.steady}, "
          f"{elapsed:.1f} s")
    for key, val in sorted(result.metrics.items()):
        if isinstance(val, float):
            print(f"  {key}: {val:.3f}")
    print(f"  probe table: {result.csv_path}")

    if args.baseline:
        from .harness import compare
        if args.baseline not in PRESET_NAMES:
            print(f"run: unknown baseline {args.baseline!r}", file=sys.stderr)
            return 2
        base = run_paper_scenario(
            args.baseline, mode=args.mode, path_lambda=args.path_lambda,
            delta=args.delta_mm * 1e-3, out_dir=out, threads=args.threads,
            max_cells=args.max_cells)
        deltas = compare(result, base)
        gain = {k: v for k, v in deltas.items() if k.startswith("at_")}
        print(f"  gain vs {args.baseline}: " + ", ".join(
            f"{k[3:]} lambda: {v:+.2f} dB" for k, v in sorted(gain.items())))
        metrics_path = os.path.join(out, result.name, "metrics.json")
        with open(metrics_path) as fh:
            metrics = json.load(fh)
        metrics[f"gain_vs_{args.baseline}_db"] = gain
        atomic_write_bytes(metrics_path,
                           json.dumps(metrics, indent=2, sort_keys=True,
                                      default=float).encode() + b"\n")

    if args.check_determinism:
        with open(result.csv_path, "rb") as fh:
            first = fh.read()
        alt_threads = 1 if args.threads != 1 else 4
        one_run(alt_threads)
        with open(result.csv_path, "rb") as fh:
            second = fh.read()
        if first != second:
            print(f"determinism check FAILED: CSV bytes differ between "
                  f"{args.threads} and {alt_threads} threads", file=sys.stderr)
            return 1
        print(f"determinism check passed ({args.threads} vs {alt_threads} threads)")
    return 0


def cmd_validate(_args) -> int:
    table = oracle_table()
    print("oracle table (30 GHz, eps_r=2.2, d=1 mm):")
    labels = {
        "beta_rad_per_m": ("propagation constant beta", "rad/m"),
        "n_eff": ("effective index", ""),
        "alpha_air_np_per_m": ("TM0 air decay", "Np/m"),
        "decay_height_mm": ("1/e decay height", "mm"),
        "alpha_reactive_np_per_m": ("decay over j130 ohm plane", "Np/m"),
        "thin_slab_reactance_ohm": ("thin-slab reactance", "ohm"),
        "skin_depth_galinstan_um": ("skin depth, galinstan", "um"),
        "skin_depth_copper_um": ("skin depth, copper", "um"),
    }
    for key, (label, unit) in labels.items():
        print(f"  {label:32s} {table[key]:12.4f} {unit}")
    print()
    print("physics suite (oracles, 1D dispersion, absorber, energy):")
    checks = quick_suite()
    for c in checks:
        print(f"  {c}")
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_scenarios(_args) -> int:
    for name in PRESET_NAMES:
        print(f"{name:20s} {SCENARIO_BLURBS[name]}")
    return 0


def _calibrate(mode: str) -> float:
    """cells*steps/second, measured once and cached."""
    try:
        with open(CALIBRATION_PATH) as fh:
            cache = json.load(fh)
        if mode in cache:
            return cache[mode]
    except (OSError, ValueError):
        cache = {}
    from .validation import uniform_grid
    from .solver import Simulation, StopRule
    from .sources import SourceSpec
    shape = (200, 100) if mode == "2d" else (60, 40, 40)
    grid = uniform_grid(mode, shape if mode == "3d" else (200, 100, 1), 0.25e-3)
    js = np.arange(shape[1])
    idx = (np.full(len(js), 5), js) if mode == "2d" else \
        (np.full(len(js), 5), js, np.full(len(js), shape[2] // 2))
    source = SourceSpec(f0=30e9, ramp_periods=2, amplitude=1.0, indices=idx,
                        weights=np.ones(len(js)))
    sim = Simulation(grid, source=source, dtype="f32")
    n_steps = 300
    t0 = time.perf_counter()
    for _ in range(n_steps):
        sim.step()
    rate = grid.cell_count * n_steps / (time.perf_counter() - t0)
    cache[mode] = rate
    os.makedirs(os.path.dirname(CALIBRATION_PATH), exist_ok=True)
    atomic_write_bytes(CALIBRATION_PATH, json.dumps(cache).encode())
    return rate


def cmd_estimate(args) -> int:
    from .harness import scenario_scene
    if args.scene:
        scene = load_scene(args.scene)
    else:
        if args.scenario not in PRESET_NAMES:
            print(f"estimate: unknown scenario {args.scenario!r}", file=sys.stderr)
            return 2
        scene = scenario_scene(args.scenario, mode=args.mode,
                               path_lambda=args.path_lambda,
                               delta=args.delta_mm * 1e-3)
    grid = voxelize(scene)
    cells = grid.cell_count
    dtype_bytes = 4 if scene.solver.dtype == "f32" else 8
    n_fields = 3 if scene.solver.mode == "2d" else 6
    n_psi = 4 if scene.solver.mode == "2d" else 12
    n_ids = 1 if scene.solver.mode == "2d" else 3
    mem = cells * (dtype_bytes * (n_fields + n_psi) + n_ids)
    rate = _calibrate(scene.solver.mode)
    period = 1.0 / scene.source.f0
    from .solver import cfl_dt
    dims = 2 if scene.solver.mode == "2d" else 3
    steps_per_period = int(np.ceil(period / cfl_dt(scene.solver.delta,
                                                   scene.solver.safety, dims)))
    max_steps = scene.solver.max_periods * steps_per_period
    print(f"scenario:        {scene.name}")
    print(f"grid:            {' x '.join(str(n) for n in grid.shape)} "
          f"= {cells:,} cells at {scene.solver.delta * 1e3:g} mm")
    print(f"field memory:    {mem / 1e9:.2f} GB "
          f"({n_fields} fields + {n_psi} psi, {scene.solver.dtype})")
    print(f"time steps:      up to {max_steps:,} "
          f"({scene.solver.max_periods} periods x {steps_per_period} steps)")
    print(f"throughput:      {rate / 1e6:.1f} Mcell-steps/s (calibrated)")
    print(f"projected time:  <= {cells * max_steps / rate:.0f} s "
          f"(steady-state stop usually earlier)")
    if cells > 1e8:
        print("warning: cell count exceeds 1e8; use --max-cells to confirm",
              file=sys.stderr)
    return 0


def cmd_slice(args) -> int:
    slc = read_slice(args.raster)
    mags = slc.mags
    nz = mags[mags > 0]
    peak = float(mags.max()) if mags.size else 0.0
    print(f"raster:     {args.raster}")
    print(f"dims:       {mags.shape[0]} x {mags.shape[1]}")
    print(f"spacing:    {slc.spacing * 1e3:.3f} mm")
    print(f"component:  {slc.component}")
    print(f"peak |E|:   {peak:.6g}")
    if nz.size:
        print(f"dyn range:  {20 * np.log10(nz.max() / nz.min()):.1f} dB")
        i, j = np.unravel_index(int(mags.argmax()), mags.shape)
        print(f"peak cell:  ({i}, {j}) = "
              f"({i * slc.spacing * 1e3:.2f}, {j * slc.spacing * 1e3:.2f}) mm")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": cmd_run, "validate": cmd_validate,
                "scenarios": cmd_scenarios, "estimate": cmd_estimate,
                "slice": cmd_slice}
    try:
        return handlers[args.command](args)
    except RswpError as exc:
        print(f"rswp {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
