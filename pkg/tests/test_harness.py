"""Scenario harness at reduced scale: metric extraction, comparisons,
output files and the absorber padding-invariance property."""

import json
import math
import os
from dataclasses import replace

import numpy as np
import pytest

from rswp.errors import ResourceRefusal, RswpError
from rswp.harness import (build_result, compare, leakage_floor, path_slope_db,
                          run_paper_scenario, run_scene, scenario_scene,
                          turn_loss)
from rswp.io import read_probe_csv, read_slice
from rswp.oracles import spreading_db
from rswp.scene import preset_scene

PATH = 12.0
DELTA = 0.25e-3


@pytest.fixture(scope="module")
def surface_small(tmp_path_factory):
    out = tmp_path_factory.mktemp("surface_small")
    return run_paper_scenario("surface_only", mode="2d", path_lambda=PATH,
                              delta=DELTA, out_dir=out, write_slices=True), out


@pytest.fixture(scope="module")
def galinstan_small(tmp_path_factory):
    out = tmp_path_factory.mktemp("galinstan_small")
    return run_paper_scenario("straight_galinstan", mode="2d",
                              path_lambda=PATH, delta=DELTA, out_dir=out,
                              write_slices=True), out


class TestSurfaceOnlyPhysics:
    def test_monotone_decay_beyond_3_lambda(self, surface_small):
        res, _out = surface_small
        dists, mags, _db = res.line_table("in_path")
        sel = dists >= 3.0
        assert np.all(np.diff(mags[sel]) < 0)

    def test_decay_matches_cylindrical_spreading(self, surface_small):
        res, _out = surface_small
        # dB drop from 5 lambda to 12 lambda: spreading oracle is a tight
        # lower bound (dielectric loss adds a few hundredths of a dB)
        drop = res.metrics["drop_over_path_db"]
        oracle = spreading_db(5.0, PATH)
        assert oracle <= drop <= oracle + 0.5

    def test_leakage_floor_isotropic(self, surface_small):
        res, _out = surface_small
        assert abs(res.metrics["leakage_floor_db"]) < 2.0

    def test_steady_reached(self, surface_small):
        res, _out = surface_small
        assert res.metrics["steady"] is True


class TestConfinement:
    def test_walled_beats_baseline_in_path(self, galinstan_small, surface_small):
        gal, _ = galinstan_small
        srf, _ = surface_small
        deltas = compare(gal, srf)
        sel = deltas["dist_lambda"] >= 5.0
        assert np.all(deltas["delta_db"][sel] >= 0.0)

    def test_leakage_floor_below_baseline(self, galinstan_small, surface_small):
        gal, _ = galinstan_small
        srf, _ = surface_small
        assert gal.metrics["leakage_floor_db"] < \
            srf.metrics["leakage_floor_db"] - 10.0

    def test_slice_peak_inside_channel(self, galinstan_small):
        res, out = galinstan_small
        raster = next(p for p in os.listdir(os.path.join(out, res.name))
                      if p.endswith(".rswp"))
        slc = read_slice(os.path.join(out, res.name, raster))
        # strongest column of the steady field map sits between the rows
        mags = slc.mags
        i, j = np.unravel_index(int(mags.argmax()), mags.shape)
        y = j * slc.spacing - 0.0  # origin offset checked below via width
        # map j back to metres using the scene domain
        scene = scenario_scene("straight_galinstan", path_lambda=PATH)
        y0 = scene.domain[1][0]
        y_m = y0 + j * slc.spacing
        assert abs(y_m) < scene.lattice.row_sep / 2.0

    def test_compare_identity_is_zero(self, galinstan_small):
        res, _ = galinstan_small
        deltas = compare(res, res)
        assert np.all(deltas["delta_db"] == 0.0)

    def test_compare_rejects_mismatched_grids(self, galinstan_small):
        res, _ = galinstan_small
        other = run_paper_scenario("surface_only", mode="2d", path_lambda=8,
                                   delta=DELTA)
        with pytest.raises(RswpError, match="grid"):
            compare(res, other)


class TestTurnLossExtractor:
    def test_straight_control_near_zero(self, galinstan_small):
        res, _ = galinstan_small
        loss = turn_loss(res, corner_lambda=PATH / 2.0)
        assert abs(loss) <= 0.5

    def test_missing_corner_probes_rejected(self, galinstan_small):
        res, _ = galinstan_small
        with pytest.raises(RswpError):
            turn_loss(res)  # no corner in a straight scenario
        with pytest.raises(RswpError):
            turn_loss(res, corner_lambda=PATH + 30)


class TestOutputs:
    def test_csv_schema_and_rows(self, galinstan_small):
        res, out = galinstan_small
        rows = read_probe_csv(res.csv_path)
        assert len(rows) == 2 * PATH  # in-path + tilted, 1 per lambda
        lines = {r["line"] for r in rows}
        assert lines == {"in_path", "tilted"}
        ref = next(r for r in rows if r["line"] == "in_path"
                   and r["dist_lambda"] == 5.0)
        assert ref["db"] == pytest.approx(0.0, abs=1e-9)

    def test_metrics_json_written(self, galinstan_small):
        res, out = galinstan_small
        with open(os.path.join(out, res.name, "metrics.json")) as fh:
            metrics = json.load(fh)
        assert metrics["scenario"] == "straight_galinstan"
        assert "drop_over_path_db" in metrics
        assert metrics["mode"] == "2d"

    def test_output_paths_follow_layout(self, galinstan_small):
        res, out = galinstan_small
        assert res.csv_path.endswith(
            os.path.join("straight_galinstan", "2d_0.25mm.csv"))


class TestResourceGuard:
    def test_cell_budget_refusal(self):
        scene = scenario_scene("straight_galinstan", path_lambda=PATH)
        with pytest.raises(ResourceRefusal):
            run_scene(scene, max_cells=1000)


class TestPaddingInvariance:
    def test_absorber_quality_padding_independent(self):
        """Growing the domain beyond the minimum margin moves the
        absorbers; in-path readings must stay put within 0.3 dB."""
        base = run_paper_scenario("straight_galinstan", mode="2d",
                                  path_lambda=PATH, delta=DELTA)
        scene = scenario_scene("straight_galinstan", path_lambda=PATH,
                               delta=DELTA)
        (x0, x1), (y0, y1), z = scene.domain
        pad = 12 * DELTA + 2e-3
        grown = replace(scene, domain=((x0 - pad, x1 + pad),
                                       (y0 - pad, y1 + pad), z))
        rec, _sim, _grid = run_scene(grown)
        res2 = build_result(grown, rec, PATH)
        d1, _m1, db1 = base.line_table("in_path")
        d2, _m2, db2 = res2.line_table("in_path")
        sel = d1 >= 2.0
        assert np.abs(db1[sel] - db2[sel]).max() < 0.3


class TestSlopeHelper:
    def test_slope_window(self, surface_small):
        res, _ = surface_small
        drop = path_slope_db(res, 6.0, 12.0)
        # cylindrical spreading over 6..12 lambda is ~ -3 dB
        assert drop == pytest.approx(-10 * math.log10(12 / 6), abs=0.5)
