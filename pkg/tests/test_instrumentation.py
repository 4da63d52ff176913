"""Probe DFT accumulation, dB conversion, steady detection and the
serialization formats."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rswp.errors import RswpError
from rswp.io import (CSV_HEADER, FieldSlice, read_probe_csv, read_slice,
                     write_probe_csv, write_slice)
from rswp.probes import (ProbeRecord, dft_accumulate, finalize_phasors,
                         steady_state_check, to_db)

F0 = 30e9


def accumulate_signal(fn, n_periods=10, steps_per_period=60):
    rec = ProbeRecord(id="p")
    dt = 1.0 / (F0 * steps_per_period)
    for n in range(1, n_periods * steps_per_period + 1):
        t = n * dt
        dft_accumulate(rec, fn(t), t, F0, dt)
    return rec


class TestDft:
    def test_pure_sine_unit_amplitude(self):
        rec = accumulate_signal(lambda t: math.sin(2 * math.pi * F0 * t))
        phasor = finalize_phasors([rec], 10, F0)[0]
        assert abs(phasor) == pytest.approx(1.0, rel=1e-12)

    def test_zero_signal(self):
        rec = accumulate_signal(lambda t: 0.0)
        assert finalize_phasors([rec], 10, F0)[0] == 0.0

    def test_harmonic_orthogonality(self):
        rec = accumulate_signal(lambda t: math.sin(2 * math.pi * 2 * F0 * t))
        phasor = finalize_phasors([rec], 10, F0)[0]
        assert abs(phasor) < 1e-10

    def test_linearity(self):
        rec1 = accumulate_signal(lambda t: math.sin(2 * math.pi * F0 * t))
        rec3 = accumulate_signal(lambda t: 3 * math.sin(2 * math.pi * F0 * t))
        p1 = finalize_phasors([rec1], 10, F0)[0]
        p3 = finalize_phasors([rec3], 10, F0)[0]
        assert p3 == pytest.approx(3 * p1, rel=1e-12)

    def test_partial_window_rejected(self):
        rec = accumulate_signal(lambda t: 1.0, n_periods=9)
        with pytest.raises(ValueError, match="whole periods"):
            finalize_phasors([rec], 10, F0)

    @given(amp=st.floats(min_value=1e-6, max_value=1e6),
           phase=st.floats(min_value=0.0, max_value=2 * math.pi))
    @settings(max_examples=20, deadline=None)
    def test_amplitude_recovery_property(self, amp, phase):
        rec = accumulate_signal(
            lambda t: amp * math.sin(2 * math.pi * F0 * t + phase),
            n_periods=5)
        phasor = finalize_phasors([rec], 5, F0)[0]
        assert abs(phasor) == pytest.approx(amp, rel=1e-9)


class TestToDb:
    def test_reference_is_zero_db(self):
        assert to_db([2.0], 2.0)[0] == 0.0

    def test_half_is_minus_six(self):
        assert to_db([1.0], 2.0)[0] == pytest.approx(-6.0206, abs=1e-3)

    def test_zero_reference_rejected(self):
        with pytest.raises(ValueError):
            to_db([1.0], 0.0)

    @given(ref1=st.floats(min_value=1e-6, max_value=1e3),
           ref2=st.floats(min_value=1e-6, max_value=1e3))
    @settings(max_examples=20, deadline=None)
    def test_differences_reference_independent(self, ref1, ref2):
        mags = np.array([0.1, 1.0, 10.0])
        d1 = np.diff(to_db(mags, ref1))
        d2 = np.diff(to_db(mags, ref2))
        assert d1 == pytest.approx(d2, rel=1e-9, abs=1e-9)


class TestSteadyCheck:
    def test_identical_windows(self):
        h = [np.array([1.0, 0.5]), np.array([1.0, 0.5])]
        assert steady_state_check(h, 0.1)

    def test_moving_magnitudes(self):
        h = [np.array([1.0]), np.array([1.2])]  # 1.58 dB change
        assert not steady_state_check(h, 0.1)

    def test_needs_two_windows(self):
        assert not steady_state_check([np.array([1.0])], 0.1)

    def test_noise_floor_probes_skipped(self):
        h = [np.array([1.0, 1e-15]), np.array([1.0, 3e-15])]
        assert steady_state_check(h, 0.1)


class TestProbeCsv:
    def rows(self):
        return [{"probe_id": "ip_001", "line": "in_path", "dist_lambda": 1.0,
                 "x_mm": 10.0, "y_mm": 0.0, "z_mm": 2.0, "mag": 0.5,
                 "phase_rad": -1.25, "db": -3.0}]

    def test_round_trip(self, tmp_path):
        path = tmp_path / "probes.csv"
        write_probe_csv(path, "test_scenario", self.rows())
        text = path.read_text()
        assert text.splitlines()[0] == CSV_HEADER
        assert "\r" not in text
        back = read_probe_csv(path)
        assert back[0]["scenario"] == "test_scenario"
        assert back[0]["mag"] == 0.5
        assert back[0]["db"] == -3.0

    def test_atomic_overwrite(self, tmp_path):
        path = tmp_path / "probes.csv"
        write_probe_csv(path, "a", self.rows())
        write_probe_csv(path, "b", self.rows())
        assert read_probe_csv(path)[0]["scenario"] == "b"
        assert len(list(tmp_path.iterdir())) == 1  # no temp litter


class TestRaster:
    def test_header_and_payload_sizes(self, tmp_path):
        slc = FieldSlice(axis="z", offset=0.0, component="En",
                         mags=np.zeros((2, 2), dtype=np.float32),
                         phases=np.zeros((2, 2), dtype=np.float32),
                         spacing=0.25e-3)
        path = tmp_path / "zeros.rswp"
        write_slice(slc, path)
        blob = path.read_bytes()
        assert blob[:4] == b"RSWP"
        # 24-byte header, then nx*ny float32 magnitudes + phases
        assert len(blob) == 24 + 2 * 4 * 4
        assert blob[24:] == b"\x00" * 32

    def test_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(1)
        mags = rng.random((5, 7)).astype(np.float32)
        phases = (rng.random((5, 7)) * 2 - 1).astype(np.float32)
        slc = FieldSlice(axis="z", offset=1e-3, component="Et_long",
                         mags=mags, phases=phases, spacing=0.5e-3)
        path = tmp_path / "rt.rswp"
        write_slice(slc, path)
        back = read_slice(path)
        assert back.mags.shape == (5, 7)
        assert np.array_equal(back.mags, mags)
        assert np.array_equal(back.phases, phases)
        assert back.component == "Et_long"
        assert back.spacing == pytest.approx(0.5e-3)

    def test_truncated_rejected(self, tmp_path):
        slc = FieldSlice(axis="z", offset=0.0, component="En",
                         mags=np.zeros((4, 4), dtype=np.float32),
                         phases=np.zeros((4, 4), dtype=np.float32),
                         spacing=0.25e-3)
        path = tmp_path / "t.rswp"
        write_slice(slc, path)
        path.write_bytes(path.read_bytes()[:-10])
        with pytest.raises(RswpError, match="truncated"):
            read_slice(path)

    def test_bad_magic_rejected(self, tmp_path):
        path = tmp_path / "bad.rswp"
        path.write_bytes(b"NOPE" + b"\x00" * 60)
        with pytest.raises(RswpError, match="magic"):
            read_slice(path)
