"""Windowed Fourier analysis of population traces.

The recipe: keep ``duration`` of the trace, subtract a constant ``baseline``,
multiply by ``exp(-t / window_tau)``, zero-pad to at least eight times the
length, take the magnitude of the real FFT and normalise its maximum to one.
Peaks are interior local maxima refined by three-point parabolic
interpolation; those under 1% of the maximum are dropped as padding ripple.
The zero-frequency bin is never reported as a peak, since it carries the
residual mean of the trace rather than an oscillation.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import fft as sfft

from .errors import (
    ContractViolation,
    DomainError,
    InsufficientData,
    IntegrationDiverged,
    RabiError,
    ScanPointError,
)
from .duffing import DuffingParams, asymptotic_frequency, solve_duffing_many
from .model import MqcState, TimeSeries, uniform_grid
from .mqc import focused_initial, integrate_trajectory

PAD_FACTOR = 8
PEAK_FLOOR = 0.01


@dataclass(frozen=True)
class Spectrum:
    omega: np.ndarray
    magnitude: np.ndarray
    dominant_peak: tuple[float, float] | None
    peaks: tuple[tuple[float, float], ...] = field(default=())

    @property
    def dominant_frequency(self) -> float:
        return math.nan if self.dominant_peak is None else self.dominant_peak[0]

    def minor_peaks(self) -> tuple[tuple[float, float], ...]:
        return tuple(p for p in self.peaks if p != self.dominant_peak)


def _parabolic(mag, k, d_omega):
    a, b, c = mag[k - 1], mag[k], mag[k + 1]
    denom = a - 2.0 * b + c
    shift = 0.0 if denom == 0 else 0.5 * (a - c) / denom
    return (k + shift) * d_omega, b - 0.25 * (a - c) * shift


def find_peaks(omega, magnitude, floor: float = PEAK_FLOOR):
    """Interpolated ``(omega, magnitude)`` of interior local maxima above ``floor * max``, strongest first."""
    mag = np.asarray(magnitude)
    top = mag.max() if mag.size else 0.0
    if top <= 0 or mag.size < 3:
        return ()
    inner = mag[1:-1]
    is_max = (inner > mag[:-2]) & (inner >= mag[2:]) & (inner >= floor * top)
    d_omega = omega[1] - omega[0]
    peaks = [_parabolic(mag, k, d_omega) for k in np.flatnonzero(is_max) + 1]
    peaks.sort(key=lambda p: -p[1])
    return tuple((float(w), float(m)) for w, m in peaks)


def rabi_spectrum(
    series: TimeSeries,
    window_tau: float = 20.0,
    baseline: float = 0.5,
    duration: float = 200.0,
    *,
    channel: str = "P_e",
    pad_factor: int = PAD_FACTOR,
) -> Spectrum:
    """Normalised windowed spectrum of ``series[channel]`` over ``[t0, t0 + duration]``."""
    if not window_tau > 0:
        raise DomainError("window_tau must be positive")
    if series.t.size < 2:
        raise InsufficientData("series has fewer than two samples")
    t0 = series.t[0]
    span = series.t[-1] - t0
    if span < duration * (1.0 - 1e-9):
        raise InsufficientData(f"series spans {span:g}, analysis needs {duration:g}")
    dt = series.dt
    steps = np.diff(series.t)
    if np.max(np.abs(steps - dt)) > 1e-9 * dt:
        raise ContractViolation("series must be uniformly sampled")
    cut = series.window(t0, t0 + duration)
    tau = cut.t - t0
    signal = (cut[channel] - baseline) * np.exp(-tau / window_tau)
    nfft = sfft.next_fast_len(pad_factor * signal.size, real=True)
    mag = np.abs(sfft.rfft(signal, nfft)) * dt
    omega = 2.0 * math.pi * np.fft.rfftfreq(nfft, dt)
    top = mag.max()
    if top == 0:
        return Spectrum(omega, np.zeros_like(mag), None, ())
    mag = mag / top
    peaks = find_peaks(omega, mag)
    return Spectrum(omega, mag, peaks[0] if peaks else None, peaks)


def _scan_point(args):
    n0, solver, params, duration, dt, window_tau = args
    try:
        if solver == "mqc-focused":
            state = MqcState.excited(focused_initial(n0, params).z)
            series = integrate_trajectory(state, params, dt, duration)
        else:
            raise DomainError(f"unknown solver {solver!r}")
        return rabi_spectrum(series, window_tau=window_tau, duration=duration).dominant_frequency
    except RabiError as err:
        raise ScanPointError(n0, err) from err


def _duffing_peaks(grid, g, duration, dt, window_tau):
    """Duffing scan points are cheap enough to step together in one batch."""
    n0 = float(grid[0]) if len(grid) else math.nan
    try:
        t = uniform_grid(duration, dt)
        batch = solve_duffing_many([DuffingParams(float(x), g=g) for x in grid], t)
        peaks = []
        for n0, series in zip(grid, batch):
            peaks.append(rabi_spectrum(series, window_tau=window_tau, duration=duration).dominant_frequency)
        return peaks
    except IntegrationDiverged as err:
        if err.trajectory is not None:
            n0 = float(grid[err.trajectory])
        raise ScanPointError(n0, err) from err
    except RabiError as err:
        raise ScanPointError(float(n0), err) from err


def dominant_frequency_scan(
    n0_grid,
    solver: str = "duffing",
    params=None,
    *,
    duration: float = 200.0,
    dt: float | None = None,
    window_tau: float = 20.0,
    workers: int = 1,
) -> np.ndarray:
    """Rows ``(n0, omega_peak, 2 g sqrt(n0 + 1/2))``; ``omega_peak`` is NaN without a peak.

    ``params`` is a :class:`~mqcrabi.model.ModelParams`; it is required for
    the ``mqc-focused`` solver and only supplies ``g`` for ``duffing``.
    Duffing points are integrated together as one array batch; ``workers``
    parallelises the MQC points.
    """
    grid = np.asarray(n0_grid, dtype=float)
    if grid.ndim != 1 or np.any(grid < 0) or np.any(np.diff(grid) <= 0):
        raise DomainError("n0_grid must be non-negative and strictly ascending")
    if solver == "mqc-focused" and params is None:
        raise DomainError("the mqc-focused solver needs ModelParams")
    g = 1.0 if params is None else params.g
    if solver == "duffing":
        peaks = _duffing_peaks(grid, g, duration, dt or 0.01, window_tau)
        asym = [asymptotic_frequency(n0, g) for n0 in grid]
        return np.column_stack([grid, peaks, asym])
    jobs = [(float(n0), solver, params, duration, dt, window_tau) for n0 in grid]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            peaks = list(pool.map(_scan_point, jobs))
    else:
        peaks = [_scan_point(j) for j in jobs]
    asym = [asymptotic_frequency(n0, g) for n0 in grid]
    return np.column_stack([grid, peaks, asym])
