"""Command-line interface: exit codes, outputs and inspection tools."""

import json
import os

import numpy as np
import pytest

from rswp.cli import main
from rswp.io import FieldSlice, write_slice


class TestUsageErrors:
    def test_unknown_scenario_exits_2(self, capsys):
        rc = main(["run", "--scenario", "bogus"])
        assert rc == 2
        err = capsys.readouterr().err
        assert "straight_galinstan" in err  # lists the available names

    def test_run_requires_exactly_one_input(self):
        assert main(["run"]) == 2
        assert main(["run", "--scenario", "surface_only",
                     "--scene", "x.json"]) == 2

    def test_unknown_flag_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--scenario", "surface_only", "--frobnicate"])
        assert exc.value.code == 2


class TestScenarios:
    def test_lists_all_presets(self, capsys):
        assert main(["scenarios"]) == 0
        out = capsys.readouterr().out
        for name in ("straight_galinstan", "straight_copper", "pec_walls",
                     "surface_only", "l_turn_galinstan"):
            assert name in out


class TestRun:
    def test_small_run_writes_outputs(self, tmp_path, capsys):
        rc = main(["run", "--scenario", "surface_only", "--mode", "2d",
                   "--path-lambda", "8", "--threads", "1",
                   "--out", str(tmp_path)])
        assert rc == 0
        csv = tmp_path / "surface_only" / "2d_0.25mm.csv"
        assert csv.exists()
        assert (tmp_path / "surface_only" / "metrics.json").exists()

    def test_determinism_flag(self, tmp_path, capsys):
        rc = main(["run", "--scenario", "surface_only", "--mode", "2d",
                   "--path-lambda", "6", "--threads", "2",
                   "--out", str(tmp_path), "--check-determinism"])
        assert rc == 0
        assert "determinism check passed" in capsys.readouterr().out

    def test_rswp_out_env_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("RSWP_OUT", str(tmp_path / "envroot"))
        monkeypatch.chdir(tmp_path)
        rc = main(["run", "--scenario", "surface_only", "--mode", "2d",
                   "--path-lambda", "6", "--threads", "1"])
        assert rc == 0
        assert (tmp_path / "envroot" / "surface_only").is_dir()

    def test_scene_file_run(self, tmp_path):
        scene_file = tmp_path / "scene.json"
        scene_file.write_text(json.dumps({
            "scenario": "surface_only", "path_lambda": 6}))
        rc = main(["run", "--scene", str(scene_file),
                   "--out", str(tmp_path / "out")])
        assert rc == 0
        assert (tmp_path / "out" / "surface_only").is_dir()


class TestEstimate:
    def test_prints_cells_and_memory(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("HOME", str(tmp_path))  # isolate calibration cache
        import rswp.cli as cli
        monkeypatch.setattr(cli, "CALIBRATION_PATH",
                            str(tmp_path / "calib.json"))
        rc = main(["estimate", "--scenario", "surface_only",
                   "--path-lambda", "10"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "cells" in out
        assert "field memory" in out
        assert "projected time" in out
        # calibration constant cached for the next call
        assert (tmp_path / "calib.json").exists()

    def test_unknown_scenario(self, capsys):
        assert main(["estimate", "--scenario", "nope"]) == 2


class TestSliceInspect:
    def test_reports_header(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        slc = FieldSlice(axis="z", offset=0.0, component="En",
                         mags=rng.random((6, 4)).astype(np.float32) + 0.1,
                         phases=np.zeros((6, 4), dtype=np.float32),
                         spacing=0.25e-3)
        path = tmp_path / "s.rswp"
        write_slice(slc, path)
        assert main(["slice", str(path)]) == 0
        out = capsys.readouterr().out
        assert "6 x 4" in out
        assert "0.250 mm" in out

    def test_bad_file_exit_2(self, tmp_path):
        path = tmp_path / "junk.rswp"
        path.write_bytes(b"garbage")
        assert main(["slice", str(path)]) == 2
