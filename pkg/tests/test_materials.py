"""Material table, lossy update coefficients and CPML profiles."""

import math

import numpy as np
import pytest

from rswp.constants import eps0
from rswp.cpml import CpmlSpec, axis_coeffs, cpml_profile
from rswp.errors import SceneError
from rswp.materials import (Material, MaterialKind, default_materials,
                            lossy_coeffs)

DT = 4.81e-13
DELTA = 0.25e-3


class TestMaterial:
    def test_defaults_table(self):
        table = default_materials()
        assert table["galinstan"].sigma == 3.46e6
        assert table["copper"].sigma == 59.6e6
        assert table["rt5880"].eps_r == 2.2
        assert table["pec"].kind is MaterialKind.PEC

    def test_invariants(self):
        with pytest.raises(SceneError, match="eps_r"):
            Material(MaterialKind.DIELECTRIC, eps_r=0.5)
        with pytest.raises(SceneError, match="sigma"):
            Material(MaterialKind.CONDUCTOR, sigma=-1.0)
        with pytest.raises(SceneError, match="kind"):
            Material(MaterialKind.PEC, sigma=100.0)

    def test_dielectric_equivalent_sigma(self):
        mat = Material(MaterialKind.DIELECTRIC, eps_r=2.2, tan_delta=0.0009)
        sigma = mat.effective_sigma(30e9)
        assert sigma == pytest.approx(3.3e-3, rel=0.01)

    def test_tan_delta_needs_frequency(self):
        mat = Material(MaterialKind.DIELECTRIC, eps_r=2.2, tan_delta=0.0009)
        with pytest.raises(SceneError, match="tan_delta"):
            mat.effective_sigma(None)


class TestLossyCoeffs:
    def test_vacuum_limits(self):
        c = lossy_coeffs(Material(MaterialKind.VACUUM), DT, DELTA)
        assert c.ca == 1.0
        assert c.cb == pytest.approx(DT / (eps0 * DELTA), rel=1e-12)

    def test_galinstan_overdamped(self):
        c = lossy_coeffs(Material(MaterialKind.CONDUCTOR, sigma=3.46e6), DT, DELTA)
        loss = 3.46e6 * DT / (2 * eps0)
        expected = (1 - loss) / (1 + loss)
        assert c.ca == pytest.approx(expected, rel=1e-12)
        assert -1.0 < c.ca < 0.0

    def test_sigma_to_infinity_approaches_pec_reflection(self):
        c = lossy_coeffs(Material(MaterialKind.CONDUCTOR, sigma=1e12), DT, DELTA)
        assert c.ca == pytest.approx(-1.0, abs=1e-6)

    def test_pec_pins_field(self):
        c = lossy_coeffs(Material(MaterialKind.PEC), DT, DELTA)
        assert c.ca == 0.0 and c.cb == 0.0

    def test_lossy_dielectric_at_f0(self):
        mat = Material(MaterialKind.DIELECTRIC, eps_r=2.2, tan_delta=0.0009)
        c = lossy_coeffs(mat, DT, DELTA, freq=30e9)
        assert c.sigma == pytest.approx(3.3045e-3, rel=1e-3)
        assert c.ca < 1.0

    def test_rejects_bad_dt(self):
        with pytest.raises(ValueError):
            lossy_coeffs(Material(MaterialKind.VACUUM), 0.0, DELTA)


class TestCpml:
    def test_profile_monotone(self):
        spec = cpml_profile(10, order=3, r0=1e-6)
        sigma, kappa, alpha = spec.profiles(DELTA)
        assert len(sigma) == 10
        assert np.all(np.diff(sigma) < 0)  # outermost layer first
        assert sigma.max() == pytest.approx(spec.sigma_max(DELTA), rel=0.2)
        assert kappa.min() >= 1.0
        assert kappa.max() <= spec.kappa_max
        assert np.all(alpha >= 0.0)

    def test_layer_minimum(self):
        with pytest.raises(ValueError):
            cpml_profile(2)
        with pytest.raises(ValueError):
            cpml_profile(10, r0=2.0)

    def test_axis_coeffs_identity_interior(self):
        spec = CpmlSpec(layers=8)
        ax = axis_coeffs(64, DELTA, DT, spec)
        mid = slice(12, 52)
        assert np.all(ax.ce[mid] == 0.0)
        assert np.all(ax.be[mid] == 1.0)
        assert np.all(ax.inv_ke[mid] == 1.0)
        # absorber region has damping and stretching
        assert ax.ce[1] != 0.0
        assert ax.inv_ke[1] < 1.0

    def test_axis_coeffs_sides_disable(self):
        spec = CpmlSpec(layers=8)
        ax = axis_coeffs(64, DELTA, DT, spec, lo=False, hi=True)
        assert np.all(ax.ce[:10] == 0.0)
        assert ax.ce[-2] != 0.0

    def test_vacuum_reduction(self):
        # sigma=0, eps_r=1 coefficients must reduce to the vacuum values
        c = lossy_coeffs(Material(MaterialKind.VACUUM), DT, DELTA)
        spec = CpmlSpec(layers=8)
        ax = axis_coeffs(64, DELTA, DT, spec)
        assert c.ca == 1.0
        assert np.all(ax.inv_kh[20:40] == 1.0)
