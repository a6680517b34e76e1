"""Figure-level experiments as plain functions returning arrays and summaries.

The command-line front end writes these results to disk; tests call them
directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .duffing import DuffingParams, asymptotic_frequency, solve_duffing, solve_duffing_many
from .model import EnsembleSpec, ModelParams, MqcState, TimeSeries, uniform_grid
from .mqc import focused_initial, integrate_trajectory, run_ensemble
from .quantum import contrast_minimum, propagate_quantum
from .spectral import Spectrum, rabi_spectrum

SCAN_DURATION = 200.0
COMPARE_T_FINAL = 25.0
FOCUSED_N0 = 0.59
GROUND_N0 = 1.59
WIGNER_TRAJECTORIES = 100_000


def default_n0_grid() -> np.ndarray:
    return np.round(np.arange(61) * 0.05, 10)


def default_ratio_grid() -> np.ndarray:
    return np.linspace(0.9, 1.1, 21)


@dataclass
class ScanResult:
    n0: np.ndarray
    series: list[TimeSeries]
    spectra: list[Spectrum]
    peaks: np.ndarray
    asymptote: np.ndarray


def scan(n0_grid=None, *, g: float = 1.0, duration: float = SCAN_DURATION, dt: float = 0.01) -> ScanResult:
    """Duffing populations and spectra across initial occupancies."""
    grid = default_n0_grid() if n0_grid is None else np.asarray(n0_grid, dtype=float)
    t = uniform_grid(duration, dt)
    series = solve_duffing_many([DuffingParams(float(n0), g=g) for n0 in grid], t)
    spectra = [rabi_spectrum(s, duration=duration) for s in series]
    peaks = np.array([sp.dominant_frequency for sp in spectra])
    asym = np.array([asymptotic_frequency(float(n0), g) for n0 in grid])
    return ScanResult(grid, series, spectra, peaks, asym)


@dataclass
class CompareResult:
    t: np.ndarray
    curves: dict[str, np.ndarray]
    trajectory: TimeSeries
    ensemble: TimeSeries | None
    summary: dict = field(default_factory=dict)


def _max_pairwise(curves: dict[str, np.ndarray]) -> dict[str, float]:
    names = list(curves)
    out = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            out[f"{a}_vs_{b}"] = float(np.max(np.abs(curves[a] - curves[b])))
    return out


def compare(
    params: ModelParams | None = None,
    *,
    initial_tls: str = "excited",
    n0: float | None = None,
    dt: float | None = None,
    t_final: float = COMPARE_T_FINAL,
    duration: float = SCAN_DURATION,
    trajectories: int | None = WIGNER_TRAJECTORIES,
    seed: int = 0,
    workers: int = 1,
) -> CompareResult:
    """Quantum, Duffing, focused MQC and (optionally) Wigner MQC populations on one grid.

    Dominant frequencies use ``duration``; curves and deviations cover
    ``[0, t_final]``.  ``trajectories=None`` skips the Wigner ensemble.
    """
    params = params or ModelParams()
    if n0 is None:
        n0 = FOCUSED_N0 if initial_tls == "excited" else GROUND_N0
    mode = "excited" if initial_tls == "excited" else "ground"

    c_e, c_g = (1.0, 0.0) if initial_tls == "excited" else (0.0, 1.0)
    state = MqcState(c_e, c_g, focused_initial(n0, params).z)
    traj = integrate_trajectory(state, params, dt, max(duration, t_final))
    t_all = traj.t
    quantum = propagate_quantum(params, initial_tls, t_all)
    duffing = solve_duffing(DuffingParams(n0, g=params.g, init_mode=mode), t_all)

    freqs = {
        "quantum": rabi_spectrum(quantum, duration=duration).dominant_frequency,
        "duffing": rabi_spectrum(duffing, duration=duration).dominant_frequency,
        "mqc_focused": rabi_spectrum(traj, duration=duration).dominant_frequency,
    }
    cut = t_all <= t_final + 1e-9
    curves = {
        "quantum": quantum["P_e"][cut],
        "duffing": duffing["P_e"][cut],
        "mqc_focused": traj["P_e"][cut],
    }
    ensemble = None
    summary = {
        "n0": n0,
        "initial_tls": initial_tls,
        "dominant_frequency": freqs,
        "duffing_vs_mqc_focused_over_2g": abs(freqs["duffing"] - freqs["mqc_focused"]) / (2 * params.g),
        "duffing_vs_quantum_over_2g": abs(freqs["duffing"] - freqs["quantum"]) / (2 * params.g),
    }
    if trajectories:
        spec = EnsembleSpec(
            sampler="wigner",
            trajectory_count=trajectories,
            initial_tls=initial_tls,
            rng_seed=seed,
            dt=traj.meta["dt"],
            t_final=t_final,
        )
        ensemble = run_ensemble(spec, params, workers=workers)
        curves["mqc_wigner"] = ensemble["P_e"]
        late = ensemble.t >= 15.0 - 1e-9
        summary["wigner_trajectories"] = trajectories
        summary["wigner_time_average_15_to_25"] = float(np.mean(ensemble["P_e"][late]))
        summary["wigner_max_after_10"] = float(np.max(ensemble["P_e"][ensemble.t >= 10.0 - 1e-9]))
    summary["max_pairwise_deviation"] = _max_pairwise(curves)
    return CompareResult(t_all[cut], curves, traj.window(0.0, t_final), ensemble, summary)


@dataclass
class OffResonantResult:
    ratios: np.ndarray
    t: np.ndarray
    mqc: np.ndarray
    quantum: np.ndarray
    omega_mqc: np.ndarray
    omega_quantum: np.ndarray
    quantum_minimum: np.ndarray

    @property
    def relative_difference(self) -> np.ndarray:
        return np.abs(self.omega_mqc - self.omega_quantum) / self.omega_quantum


def offresonant(
    ratios=None,
    *,
    omega_gamma: float = 50.0,
    g: float = 1.0,
    n0: float = FOCUSED_N0,
    dt: float | None = None,
    t_final: float = COMPARE_T_FINAL,
    duration: float = SCAN_DURATION,
) -> OffResonantResult:
    """Focused MQC against exact quantum populations while detuning the emitter.

    ``ratios`` are values of ``omega_e / omega_gamma``; the maps cover
    ``[0, t_final]`` and the frequencies use ``duration``.
    """
    ratios = default_ratio_grid() if ratios is None else np.asarray(ratios, dtype=float)
    mqc_rows, q_rows, w_mqc, w_q, q_min = [], [], [], [], []
    t_map = None
    for r in ratios:
        params = ModelParams(omega_e=float(r) * omega_gamma, omega_gamma=omega_gamma, g=g)
        traj = integrate_trajectory(
            MqcState.excited(focused_initial(n0, params).z), params, dt, max(duration, t_final)
        )
        quantum = propagate_quantum(params, "excited", traj.t)
        w_mqc.append(rabi_spectrum(traj, duration=duration).dominant_frequency)
        w_q.append(rabi_spectrum(quantum, duration=duration).dominant_frequency)
        q_min.append(contrast_minimum(params))
        cut = traj.t <= t_final + 1e-9
        t_map = traj.t[cut]
        mqc_rows.append(traj["P_e"][cut])
        q_rows.append(quantum["P_e"][cut])
    return OffResonantResult(
        ratios, t_map, np.array(mqc_rows), np.array(q_rows),
        np.array(w_mqc), np.array(w_q), np.array(q_min),
    )
