import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqcrabi.duffing import DuffingParams, asymptotic_frequency, population_frequency, solve_duffing
from mqcrabi.errors import ContractViolation, DomainError, InsufficientData, ScanPointError
from mqcrabi.model import ModelParams, TimeSeries, uniform_grid
from mqcrabi.quantum import propagate_quantum
from mqcrabi.spectral import dominant_frequency_scan, find_peaks, rabi_spectrum

T200 = uniform_grid(200.0, 0.01)


def cosine_series(omega, t=T200, offset=0.5, amp=0.5):
    return TimeSeries(t, {"P_e": offset + amp * np.cos(omega * t)})


def test_pure_cosine_peak():
    sp = rabi_spectrum(cosine_series(2.0))
    assert sp.dominant_frequency == pytest.approx(2.0, rel=0.005)
    assert sp.magnitude.max() == pytest.approx(1.0)
    assert sp.omega[0] == 0.0


@given(omega=st.floats(0.5, 10.0))
@settings(max_examples=60, deadline=None)
def test_peak_location_accuracy(omega):
    assert rabi_spectrum(cosine_series(omega)).dominant_frequency == pytest.approx(omega, rel=0.005)


def test_quantum_population_peak_at_2g():
    s = propagate_quantum(ModelParams(), "excited", T200)
    assert rabi_spectrum(s).dominant_frequency == pytest.approx(2.0, rel=0.005)


def test_duffing_large_occupancy_spectrum():
    p = DuffingParams(20.0)
    sp = rabi_spectrum(solve_duffing(p, T200))
    w = sp.dominant_frequency
    assert w == pytest.approx(asymptotic_frequency(20.0), rel=0.02)
    assert w == pytest.approx(population_frequency(p), rel=0.005)
    minors = sp.minor_peaks()
    assert minors, "expected weak harmonics of the anharmonic motion"
    for wm, mag in minors:
        assert mag < 0.2
        # P_e = c^2 only contains even harmonics of the amplitude, i.e. integer multiples of w
        assert wm / w == pytest.approx(round(wm / w), abs=0.02)


def test_linearity_of_normalised_shape():
    s = solve_duffing(DuffingParams(0.59), T200)
    a = rabi_spectrum(s)
    for alpha in (0.1, 3.0):
        scaled = TimeSeries(T200, {"P_e": alpha * (s["P_e"] - 0.5) + 0.5})
        b = rabi_spectrum(scaled)
        np.testing.assert_allclose(b.magnitude, a.magnitude, atol=1e-12)


def test_window_invariance():
    s = solve_duffing(DuffingParams(0.59), T200)
    w20 = rabi_spectrum(s, window_tau=20.0).dominant_frequency
    w40 = rabi_spectrum(s, window_tau=40.0).dominant_frequency
    assert abs(w40 - w20) / w20 < 0.01


def test_constant_signal_has_no_peak():
    sp = rabi_spectrum(TimeSeries(T200, {"P_e": np.ones_like(T200)}))
    assert sp.dominant_peak is None and math.isnan(sp.dominant_frequency)
    sp = rabi_spectrum(TimeSeries(T200, {"P_e": np.full_like(T200, 0.5)}))
    assert sp.dominant_peak is None and not sp.magnitude.any()


def test_only_duration_is_analysed():
    t = uniform_grid(300.0, 0.01)
    p = np.where(t <= 200.0, 0.5 + 0.5 * np.cos(2 * t), 0.5 + 0.5 * np.cos(7 * t))
    assert rabi_spectrum(TimeSeries(t, {"P_e": p})).dominant_frequency == pytest.approx(2.0, rel=0.005)


def test_errors():
    with pytest.raises(InsufficientData):
        rabi_spectrum(cosine_series(2.0, t=uniform_grid(100.0, 0.01)))
    with pytest.raises(DomainError):
        rabi_spectrum(cosine_series(2.0), window_tau=0.0)
    # a grid that slipped past construction with a jitter is still refused
    ok = cosine_series(2.0)
    jitter = ok.t.copy()
    jitter[5] += 1e-6
    bad = object.__new__(TimeSeries)
    object.__setattr__(bad, "t", jitter)
    object.__setattr__(bad, "channels", ok.channels)
    object.__setattr__(bad, "meta", {})
    with pytest.raises(ContractViolation):
        rabi_spectrum(bad)


def test_find_peaks_refines_between_bins():
    omega = np.arange(10.0)
    mag = np.array([0, 0.1, 0.5, 1.0, 0.5, 0.1, 0.3, 0.1, 0, 0])
    peaks = find_peaks(omega, mag)
    assert peaks[0] == pytest.approx((3.0, 1.0))
    assert peaks[1][0] == pytest.approx(6.0, abs=0.5)


def test_scan_table():
    rows = dominant_frequency_scan([0.59, 2.0, 20.0])
    assert rows.shape == (3, 3)
    assert rows[0, 1] == pytest.approx(2.0, rel=0.02)
    assert rows[2, 1] == pytest.approx(rows[2, 2], rel=0.02)
    assert rows[2, 2] == pytest.approx(2 * math.sqrt(20.5))


def test_scan_monotone_over_default_axis():
    rows = dominant_frequency_scan(np.round(np.arange(1, 61) * 0.05, 10))
    assert np.all(np.diff(rows[:, 1]) > 0)


def test_scan_undershoots_at_small_occupancy():
    rows = dominant_frequency_scan([1e-5, 0.01])
    assert rows[0, 1] < 0.5
    assert rows[1, 1] < 0.9 * rows[1, 2]


def test_scan_zero_occupancy_has_no_peak():
    rows = dominant_frequency_scan([0.0])
    assert math.isnan(rows[0, 1])


def test_scan_rejects_bad_grid():
    with pytest.raises(DomainError):
        dominant_frequency_scan([1.0, 0.5])
    with pytest.raises(DomainError):
        dominant_frequency_scan([0.5], solver="mqc-focused")


def test_scan_annotates_failing_point():
    with pytest.raises(ScanPointError) as info:
        dominant_frequency_scan([0.5], duration=200.0, dt=0.3)
    assert info.value.n0 == 0.5
