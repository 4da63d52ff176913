"""Voxelization: staircasing accuracy, partition property, determinism."""

import math

import numpy as np
import pytest

from rswp.errors import ResolutionError
from rswp.oracles import tm0_grounded_slab
from rswp.scene import preset_scene
from rswp.voxelize import apply_pec, voxelize


@pytest.fixture(scope="module")
def gal_scene():
    return preset_scene("straight_galinstan", path_lambda=10)


@pytest.fixture(scope="module")
def gal_grid(gal_scene):
    return voxelize(gal_scene)


class TestDiskStaircase:
    def test_cross_section_cell_count(self, gal_grid):
        # r = 1 mm at 0.25 mm cells, centre on a grid node: 52 cells,
        # within 10% of pi r^2 / delta^2 = 50.27
        interior = [b for b in gal_grid.bar_report if 0.004 < b["center"][0] < 0.09]
        counts = {b["cells"] for b in interior}
        assert counts == {52}
        area_exact = math.pi * 1e-3**2
        for b in interior:
            assert abs(b["volume"] - area_exact) / area_exact < 0.10

    def test_convergence_order(self, gal_scene):
        # staircase area error shrinks roughly linearly with delta
        errs = []
        for delta in (0.4e-3, 0.2e-3, 0.1e-3):
            grid = voxelize(gal_scene, delta=delta)
            bar = grid.bar_report[len(grid.bar_report) // 2]
            errs.append(abs(bar["volume"] - math.pi * 1e-6) / (math.pi * 1e-6))
        assert errs[2] < errs[0]
        assert errs[2] < 0.05

    def test_radius_resolution_guard(self, gal_scene):
        with pytest.raises(ResolutionError, match="radius"):
            voxelize(gal_scene, delta=0.6e-3)

    def test_wavelength_resolution_guard(self, gal_scene):
        with pytest.raises(ResolutionError, match="lambda"):
            voxelize(gal_scene, delta=0.5e-3)


class TestPartition:
    def test_every_cell_has_one_id(self, gal_grid):
        assert gal_grid.cell_ids.min() >= 0
        assert gal_grid.cell_ids.max() < len(gal_grid.names)

    def test_empty_fill_is_background_only(self):
        scene = preset_scene("surface_only", path_lambda=10)
        grid = voxelize(scene)
        assert set(np.unique(grid.cell_ids)) == {grid.material_id("_effective_bg")}

    def test_2d_background_effective_index(self, gal_grid, gal_scene):
        sol = tm0_grounded_slab(2.2, 1e-3, 30e9)
        bg = gal_grid.material_id("_effective_bg")
        assert gal_grid.eps_r[bg] == pytest.approx(sol.n_eff**2, rel=1e-9)
        assert gal_grid.n_eff == pytest.approx(sol.n_eff)
        # modal dielectric loss mapped to a background conductivity
        assert gal_grid.sigma[bg] == pytest.approx(4.25e-4, rel=0.01)

    def test_bars_override_background(self, gal_grid):
        gal = gal_grid.material_id("galinstan")
        assert (gal_grid.comp_ids["Ez"] == gal).sum() > 0


class TestDeterminism:
    def test_checksum_stable(self, gal_scene):
        a = voxelize(gal_scene).checksum()
        b = voxelize(gal_scene).checksum()
        assert a == b

    def test_checksum_sensitive_to_geometry(self, gal_scene):
        a = voxelize(gal_scene).checksum()
        b = voxelize(preset_scene("straight_copper", path_lambda=10)).checksum()
        assert a != b


@pytest.fixture(scope="module")
def grid3():
    scene = preset_scene("straight_galinstan", mode="3d", path_lambda=3,
                         delta=1e-3 / 3)
    return voxelize(scene), scene


class Test3dVoxelization:
    def test_slab_layers(self, grid3):
        grid, scene = grid3
        slab_id = grid.material_id("_slab")
        ez = grid.comp_ids["Ez"]
        # Ez samples at (k+1/2) delta; slab occupies z < 1 mm
        k_inside = int(scene.slab.thickness / grid.delta) - 1
        assert np.all(ez[:, :, k_inside] == slab_id) or \
            (ez[:, :, k_inside] == slab_id).mean() > 0.9

    def test_interface_averaging(self, grid3):
        grid, scene = grid3
        iface = grid.material_id("_slab_top")
        ex = grid.comp_ids["Ex"]
        k_top = int(round(scene.slab.thickness / grid.delta))
        vals = set(np.unique(ex[:, :, k_top]))
        assert iface in vals
        assert grid.eps_r[iface] == pytest.approx((2.2 + 1.0) / 2.0)

    def test_bar_volume_report(self, grid3):
        grid, scene = grid3
        bars = [b for b in grid.bar_report if b["cells"] > 0]
        assert bars
        layers = round(scene.lattice.height / grid.delta)
        for b in bars:
            assert b["cells"] == b["cross_section_cells"] * layers

    def test_bars_span_height(self, grid3):
        grid, scene = grid3
        gal = grid.material_id("galinstan")
        ez = grid.comp_ids["Ez"]
        zs = np.nonzero((ez == gal).any(axis=(0, 1)))[0]
        # Ez samples live at (k + 1/2) * delta
        z_lo = (zs.min() + 0.5) * grid.delta + grid.origin[2]
        z_hi = (zs.max() + 0.5) * grid.delta + grid.origin[2]
        assert z_lo >= scene.slab.thickness - grid.delta
        top = scene.slab.thickness + scene.lattice.height
        assert abs(z_hi - top) <= grid.delta


class TestApplyPec:
    def test_mask_pins_components(self, gal_scene):
        grid = voxelize(gal_scene)
        mask = np.zeros(grid.shape, dtype=bool)
        mask[10:20, 5:9] = True
        apply_pec(grid, mask)
        pec_ids = np.nonzero(grid.is_pec)[0]
        assert np.isin(grid.comp_ids["Ez"][mask], pec_ids).all()

    def test_empty_mask_noop(self, gal_scene):
        grid = voxelize(gal_scene)
        before = grid.checksum()
        apply_pec(grid, np.zeros(grid.shape, dtype=bool))
        assert grid.checksum() == before

    def test_shape_mismatch(self, gal_scene):
        grid = voxelize(gal_scene)
        with pytest.raises(Exception):
            apply_pec(grid, np.zeros((3, 3), dtype=bool))
