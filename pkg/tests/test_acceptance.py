"""Acceptance criteria, one test per criterion, each printing a
PASS/FAIL line with the measured value against its tolerance.

Full-scale (50-wavelength 3D) reproduction is an opt-in overnight
target behind RSWP_FULL_SCALE=1; the desk-scale suite below runs the
scaled quantitative checks in the fast 2D mode plus the 3D slab-mode
validation.
"""

import os
from dataclasses import replace

import numpy as np
import pytest

from rswp.harness import compare, path_slope_db, run_paper_scenario, turn_loss
from rswp.io import read_probe_csv
from rswp.oracles import (impedance_wave_decay, skin_depth, spreading_db,
                          tm0_grounded_slab)
from rswp.validation import (measure_cpml_reflection, measure_energy_drift,
                             measure_phase_velocity, run_slab_mode_validation)

pytestmark = pytest.mark.filterwarnings("ignore")


def report(name, value, requirement, ok):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}: {value} (require {requirement})")
    assert ok, f"{name}: {value} violates {requirement}"


class TestOracleSuite:
    """Oracle suite: closed-form values and the dispersion residual."""

    def test_dispersion_residual(self):
        res = tm0_grounded_slab(2.2, 1e-3, 30e9).residual()
        report("TM0 bisection residual", f"{res:.2e}", "< 1e-10", res < 1e-10)

    def test_reactive_plane_decay(self):
        alpha = impedance_wave_decay(130.0, 30e9)
        report("alpha(130 ohm, 30 GHz)", f"{alpha:.2f} Np/m",
               "216.8 +/- 0.1", abs(alpha - 216.8) <= 0.1)

    def test_skin_depth_galinstan(self):
        d = skin_depth(3.46e6, 30e9) * 1e6
        report("skin depth galinstan", f"{d:.4f} um", "1.56 +/- 0.01",
               abs(d - 1.56) <= 0.01)

    def test_skin_depth_copper(self):
        d = skin_depth(59.6e6, 30e9) * 1e6
        report("skin depth copper", f"{d:.4f} um", "0.38 +/- 0.01",
               abs(d - 0.38) <= 0.01)

    def test_spreading(self):
        v = spreading_db(5, 50)
        report("spreading 5->50 lambda", f"{v:.4f} dB", "10.00 +/- 0.01",
               abs(v - 10.0) <= 0.01)


class TestSolverPhysics:
    """Solver physics: energy drift, numerical dispersion, absorber."""

    def test_energy_drift(self):
        drift = measure_energy_drift(steps=1000)
        report("closed PEC box energy drift/1000 steps", f"{drift:.2e}",
               "< 0.1%", drift < 1e-3)

    def test_phase_velocity_and_convergence(self):
        err20 = measure_phase_velocity(20)
        err40 = measure_phase_velocity(40)
        report("1D phase-velocity error @20 cells/lambda",
               f"{err20 * 100:.3f}%", "< 0.5%", err20 < 0.005)
        ratio = err20 / err40
        report("error reduction 20->40 cells", f"{ratio:.2f}x",
               "~4x (2nd order)", 2.8 <= ratio <= 5.5)

    def test_cpml_reflection(self):
        refl = measure_cpml_reflection()
        report("CPML normal-incidence reflection", f"{refl:.1f} dB",
               "< -50 dB", refl < -50.0)


class Test3dModeValidation:
    """TM0 launch on the bare slab: measured beta and vertical decay
    against the dispersion oracle."""

    @pytest.fixture(scope="class")
    def slab_run(self):
        return run_slab_mode_validation(delta=0.25e-3, path_lambda=8.0)

    def test_beta_within_one_percent(self, slab_run):
        report("3D slab-mode beta error",
               f"{slab_run['beta_rel_err'] * 100:.3f}%", "< 1%",
               slab_run["beta_rel_err"] < 0.01)

    def test_decay_height_within_five_percent(self, slab_run):
        report("3D vertical decay-rate error",
               f"{slab_run['alpha_rel_err'] * 100:.2f}%", "< 5%",
               slab_run["alpha_rel_err"] < 0.05)


class TestScaledPathLoss:
    """Scaled benchmark curves: 2D mode, 50-lambda path, 0.25 mm cells."""

    def test_galinstan_drop(self, galinstan_50):
        drop = galinstan_50.metrics["drop_over_path_db"]
        report("galinstan in-path drop 5->50 lambda", f"{drop:.2f} dB",
               "<= 2.0 dB", drop <= 2.0)

    def test_galinstan_vs_ideal_walls(self, galinstan_50, pec_walls_50):
        delta = abs(compare(galinstan_50, pec_walls_50)["at_50"])
        report("|galinstan - ideal walls| at 50 lambda", f"{delta:.2f} dB",
               "<= 2.0 dB", delta <= 2.0)

    def test_surface_only_decay_and_gain(self, galinstan_50, surface_only_50):
        decay = surface_only_50.metrics["drop_over_path_db"]
        report("surface-only decay 5->50 lambda", f"{decay:.2f} dB",
               ">= 10.0 dB", decay >= 10.0)
        gain = compare(galinstan_50, surface_only_50)["at_35"]
        report("pathway gain over bare surface at 35 lambda",
               f"{gain:.2f} dB", ">= 12 dB", gain >= 12.0)

    def test_leakage_ordering(self, galinstan_50, pec_walls_50):
        leak_gal = galinstan_50.metrics["leakage_floor_db"]
        leak_pec = pec_walls_50.metrics["leakage_floor_db"]
        report("galinstan leakage floor", f"{leak_gal:.1f} dB",
               "<= -25 dB", leak_gal <= -25.0)
        report("ideal-wall leakage below galinstan",
               f"{leak_pec:.1f} dB", f"< {leak_gal:.1f} dB",
               leak_pec < leak_gal)


class TestLTurn:
    """Right-angle turn at 35 lambda of a 50-lambda path."""

    def test_turn_loss_band(self, l_turn_50):
        loss = l_turn_50.metrics["turn_loss_db"]
        report("turn loss", f"{loss:.2f} dB", "in [1.0, 8.0] dB",
               1.0 <= loss <= 8.0)

    def test_post_turn_slope_matches_straight(self, l_turn_50, galinstan_50):
        s_turn = path_slope_db(l_turn_50, 37.0, 48.0)
        s_straight = path_slope_db(galinstan_50, 37.0, 48.0)
        diff = abs(s_turn - s_straight)
        report("post-turn leg slope vs straight",
               f"{s_turn:.2f} vs {s_straight:.2f} dB over 11 lambda",
               "within 1 dB", diff <= 1.0)

    def test_straight_control(self, galinstan_50):
        loss = turn_loss(galinstan_50, corner_lambda=25.0)
        report("straight-path control turn loss", f"{loss:.2f} dB",
               "<= 0.5 dB", abs(loss) <= 0.5)


class TestDeterminism:
    """Identical probe CSV bytes for 1, 4 and 8 worker threads."""

    def test_thread_count_invariance(self, tmp_path, galinstan_50):
        blobs = {}
        for threads in (1, 4, 8):
            out = tmp_path / f"t{threads}"
            run_paper_scenario("straight_galinstan", mode="2d",
                               path_lambda=50.0, delta=0.25e-3,
                               out_dir=out, threads=threads)
            csv = out / "straight_galinstan" / "2d_0.25mm.csv"
            blobs[threads] = csv.read_bytes()
        ok = blobs[1] == blobs[4] == blobs[8]
        report("probe CSV bytes across 1/4/8 threads",
               "identical" if ok else "DIFFER", "byte-identical", ok)


class TestLinearity:
    """Doubling the drive amplitude must leave every dB metric fixed."""

    def test_amplitude_doubling(self):
        from rswp.harness import build_result, run_scene, scenario_scene
        scene = scenario_scene("straight_galinstan", mode="2d",
                               path_lambda=10.0, delta=0.25e-3, dtype="f64")
        rec1, _s, _g = run_scene(scene)
        scene2 = replace(scene, source=replace(scene.source, amplitude=2.0))
        rec2, _s, _g = run_scene(scene2)
        m1, m2 = np.abs(rec1.phasors), np.abs(rec2.phasors)
        dev = float(np.abs(20 * np.log10(m2 / m1) - 20 * np.log10(2.0)).max())
        report("max dB-metric change under amplitude doubling",
               f"{dev:.2e} dB", "<= 1e-9 dB", dev <= 1e-9)


@pytest.mark.skipif(not os.environ.get("RSWP_FULL_SCALE"),
                    reason="overnight full-scale 3D target; set RSWP_FULL_SCALE=1")
class TestFullScale3d:
    """Opt-in overnight reproduction at full 3D scale.

    Reports the four headline numbers next to the published full-scale
    values (0.8 / 25 / -40 / 3.5 dB) with +/-50% bands; an independent
    solver with different absorber and mesh choices cannot be held
    tighter.  RSWP_FULL_SCALE_DELTA_MM (default 0.33) controls the cell
    size so the run can be matched to available memory.
    """

    def test_full_scale_headline_numbers(self, tmp_path):
        delta = float(os.environ.get("RSWP_FULL_SCALE_DELTA_MM", "0.33")) * 1e-3
        common = dict(mode="3d", path_lambda=50.0, delta=delta,
                      out_dir=tmp_path, max_cells=2e8, max_periods=400)
        gal = run_paper_scenario("straight_galinstan", **common)
        srf = run_paper_scenario("surface_only", **common)
        turn = run_paper_scenario("l_turn_galinstan", **common)
        drop = gal.metrics["drop_over_path_db"]
        gain = compare(gal, srf)["at_35"]
        leak = gal.metrics["leakage_floor_db"]
        loss = turn.metrics["turn_loss_db"]
        report("full-scale drop at 50 lambda", f"{drop:.2f} dB",
               "0.8 +/- 50%", 0.4 <= drop <= 1.2)
        report("full-scale gain at 35 lambda", f"{gain:.1f} dB",
               "25 +/- 50%", 12.5 <= gain <= 37.5)
        report("full-scale leakage floor", f"{leak:.1f} dB",
               "-40 +/- 50%", -60.0 <= leak <= -20.0)
        report("full-scale turn loss", f"{loss:.2f} dB",
               "3.5 +/- 50%", 1.75 <= loss <= 5.25)
