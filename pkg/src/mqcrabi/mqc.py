"""Self-consistent Ehrenfest trajectories of the Rabi model without the RWA.

The emitter amplitudes evolve under the mode-dependent Hamiltonian::

    H(z) = omega_gamma * n + omega_e |e><e| + g (z* + z) (|e><g| + |g><e|)

with ``n = z* z``, and the mode follows ``dz/dt = -i dH/dz*`` where ``H`` is the
expectation value in the current emitter state.

The c-number ``omega_gamma * n`` (plus any constant ``diagonal_shift``) acts on
both amplitudes alike, i.e. as a global phase.  By default the integrator moves
it out of the amplitudes into a separately integrated phase angle ``theta`` so
that the stepped amplitudes only carry the relative rotation; laboratory-frame
amplitudes are ``c * exp(-i theta)``.  No observable depends on ``theta``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._rk4 import rk4_step
from .errors import ContractViolation, DomainError, IntegrationDiverged
from .model import (
    RECORD_SPACING,
    EnsembleSpec,
    ModelParams,
    MqcState,
    TimeSeries,
    default_dt,
    from_mode_coordinates,
)

NORM_TOLERANCE = 1e-6
TRAJECTORY_CHANNELS = ("P_e", "n", "energy", "re_z", "im_z", "norm")


@dataclass(frozen=True)
class MqcDerivative:
    c_e: complex
    c_g: complex
    z: complex


@dataclass(frozen=True)
class SamplerDraw:
    z: complex
    index: int = 0
    seed: int | None = None


def _flow(params: ModelParams, diagonal_shift=0.0, global_phase=False):
    """Right-hand side on ``(c_e, c_g, z, theta)``.

    With ``global_phase`` the shared diagonal term sits in the amplitudes and
    ``theta`` stays constant; otherwise it drives ``theta`` instead.
    """
    we = params.omega_e
    wg = params.omega_gamma
    g = params.g
    shift = float(diagonal_shift)

    def f(y):
        ce, cg, z, _ = y
        x = g * (z + z.conjugate())
        coh = (ce.conjugate() * cg).real
        common = wg * (z.real * z.real + z.imag * z.imag) + shift
        dz = -1j * (wg * z + 2.0 * g * coh)
        if global_phase:
            return (
                -1j * ((common + we) * ce + x * cg),
                -1j * (common * cg + x * ce),
                dz,
                0.0 * common,
            )
        return -1j * (we * ce + x * cg), -1j * x * ce, dz, common

    return f


def _check_norm(state: MqcState):
    if abs(state.norm - 1.0) > NORM_TOLERANCE:
        raise ContractViolation(f"emitter state is not normalised (|c|^2 = {state.norm!r})")


def mqc_rhs(
    state: MqcState,
    params: ModelParams,
    *,
    global_phase: bool = True,
    diagonal_shift: float = 0.0,
) -> MqcDerivative:
    """Time derivatives of ``(c_e, c_g, z)``.

    ``global_phase=False`` drops the shared diagonal term, giving the
    derivative in the frame used by :func:`integrate_trajectory`.
    """
    _check_norm(state)
    f = _flow(params, diagonal_shift, global_phase)
    dce, dcg, dz, _ = f((state.c_e, state.c_g, state.z, 0.0))
    return MqcDerivative(complex(dce), complex(dcg), complex(dz))


def total_energy(state, params: ModelParams, diagonal_shift: float = 0.0):
    """Ehrenfest energy ``<Psi|H(z)|Psi>``; accepts an :class:`MqcState` or ``(c_e, c_g, z)``."""
    if isinstance(state, MqcState):
        ce, cg, z = state.c_e, state.c_g, state.z
    else:
        ce, cg, z = state
    pe = ce.real * ce.real + ce.imag * ce.imag
    pg = cg.real * cg.real + cg.imag * cg.imag
    n = z.real * z.real + z.imag * z.imag
    coupling = params.g * 2.0 * z.real * 2.0 * (ce.conjugate() * cg).real
    return params.omega_gamma * n + params.omega_e * pe + coupling + diagonal_shift * (pe + pg)


def _observables(y, params, diagonal_shift):
    ce, cg, z, _ = y
    pe = ce.real * ce.real + ce.imag * ce.imag
    pg = cg.real * cg.real + cg.imag * cg.imag
    return (
        pe,
        z.real * z.real + z.imag * z.imag,
        total_energy((ce, cg, z), params, diagonal_shift),
        z.real,
        z.imag,
        pe + pg,
    )


def _record_stride(dt: float, record_spacing: float) -> int:
    return max(1, int(math.floor(record_spacing / dt + 1e-9)))


def _n_steps(dt: float, t_final: float) -> int:
    n = int(round(t_final / dt))
    if n < 1 or abs(n * dt - t_final) > 1e-9 * max(t_final, dt):
        raise DomainError(f"t_final={t_final} is not a whole number of steps dt={dt}")
    return n


def _integrate(y, f, params, dt, n_steps, stride, diagonal_shift, on_diverge):
    """Step ``y`` and record observables every ``stride`` steps.

    Returns the recorded arrays (first axis = record) and the final state.
    """
    records = []
    for step in range(n_steps + 1):
        if step % stride == 0:
            obs = _observables(y, params, diagonal_shift)
            if not np.all(np.isfinite(obs[0])) or not np.all(np.isfinite(obs[1])):
                on_diverge(step, obs)
            records.append(obs)
        if step < n_steps:
            y = rk4_step(f, y, dt)
    out = np.array(records, dtype=float)  # (record, channel[, batch])
    return out, y


def _raise_scalar(step, _obs):
    raise IntegrationDiverged(step)


def integrate_trajectory(
    initial: MqcState,
    params: ModelParams,
    dt: float | None = None,
    t_final: float = 25.0,
    *,
    record_spacing: float = RECORD_SPACING,
    diagonal_shift: float = 0.0,
    global_phase: bool = False,
) -> TimeSeries:
    """Fixed-step fourth-order Runge-Kutta trajectory.

    Channels ``P_e, n, energy, re_z, im_z, norm`` are recorded every
    ``floor(record_spacing / dt)`` steps.  The norm is monitored, never
    restored.  ``meta['final_state']`` holds the laboratory-frame end state.
    """
    _check_norm(initial)
    dt = default_dt(params, record_spacing) if dt is None else float(dt)
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    n_steps = _n_steps(dt, t_final)
    stride = _record_stride(dt, record_spacing)
    f = _flow(params, diagonal_shift, global_phase)
    y0 = (initial.c_e, initial.c_g, initial.z, 0.0)
    out, (ce, cg, z, theta) = _integrate(
        y0, f, params, dt, n_steps, stride, diagonal_shift, _raise_scalar
    )
    phase = complex(math.cos(theta), -math.sin(theta))
    t = dt * stride * np.arange(out.shape[0])
    meta = {
        "dt": dt,
        "stride": stride,
        "final_state": MqcState(ce * phase, cg * phase, z),
        "params": params,
    }
    return TimeSeries(t, dict(zip(TRAJECTORY_CHANNELS, out.T)), meta)


def focused_initial(n0: float, params: ModelParams | None = None, phase: float = 0.0) -> SamplerDraw:
    """Deterministic mode coordinate with occupancy exactly ``n0`` (``p = 0, q >= 0`` by default)."""
    if not n0 >= 0:
        raise DomainError(f"n0 must be non-negative, got {n0!r}")
    r = math.sqrt(n0)
    if phase == 0.0:
        return SamplerDraw(complex(r, 0.0))
    return SamplerDraw(complex(r * math.cos(phase), r * math.sin(phase)))


def trajectory_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream for one trajectory, keyed by ``(seed, index)`` only."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))


def wigner_sample(rng: np.random.Generator, params: ModelParams, index: int = 0, seed=None) -> SamplerDraw:
    """Draw ``(q, p)`` from the vacuum Wigner distribution ``exp(-p^2/W - W q^2) / pi``."""
    w = params.omega_gamma
    q = rng.normal(0.0, math.sqrt(1.0 / (2.0 * w)))
    p = rng.normal(0.0, math.sqrt(w / 2.0))
    return SamplerDraw(complex(from_mode_coordinates(q, p, params)), index, seed)


def wigner_draws(seed: int, count: int, params: ModelParams, start: int = 0) -> np.ndarray:
    """Initial ``z`` for trajectories ``start .. start+count-1`` of a seeded ensemble."""
    return np.array(
        [wigner_sample(trajectory_rng(seed, i), params).z for i in range(start, start + count)],
        dtype=complex,
    )


def _initial_amplitudes(initial_tls: str, size=None):
    one = 1.0 + 0j if size is None else np.ones(size, dtype=complex)
    zero = 0j if size is None else np.zeros(size, dtype=complex)
    return (one, zero) if initial_tls == "excited" else (zero, one)


def _chunk_sums(args):
    """Integrate one fixed block of Wigner trajectories; return sums of P_e and n."""
    spec, params, dt, stride, start, count = args
    z0 = wigner_draws(spec.rng_seed, count, params, start)
    ce, cg = _initial_amplitudes(spec.initial_tls, count)
    f = _flow(params)

    def on_diverge(step, obs):
        bad = ~(np.isfinite(obs[0]) & np.isfinite(obs[1]))
        k = start + int(np.flatnonzero(bad)[0])
        raise IntegrationDiverged(step, trajectory=k, seed=spec.rng_seed)

    # overflow is reported through on_diverge, not as numpy warnings
    with np.errstate(over="ignore", invalid="ignore"):
        out, _ = _integrate(
            (ce, cg, z0, np.zeros(count)), f, params, dt, _n_steps(dt, spec.t_final), stride, 0.0, on_diverge
        )
    return out[:, 0, :].sum(axis=1), out[:, 1, :].sum(axis=1)


def run_ensemble(
    spec: EnsembleSpec,
    params: ModelParams,
    *,
    workers: int = 1,
    chunk_size: int = 1024,
    record_spacing: float = RECORD_SPACING,
) -> TimeSeries:
    """Trajectory-averaged ``P_e`` and ``n``.

    Trajectories are split into fixed blocks of ``chunk_size`` by index; block
    sums are combined in block order, so the result does not depend on
    ``workers``.
    """
    dt = spec.resolved_dt(params)
    stride = _record_stride(dt, record_spacing)
    meta = {"spec": spec, "params": params, "dt": dt, "stride": stride}
    if spec.sampler == "focused":
        ce, cg = _initial_amplitudes(spec.initial_tls)
        state = MqcState(ce, cg, focused_initial(spec.n0, params).z)
        traj = integrate_trajectory(state, params, dt, spec.t_final, record_spacing=record_spacing)
        return TimeSeries(traj.t, {"P_e": traj["P_e"], "n": traj["n"]}, meta)

    blocks = [
        (spec, params, dt, stride, start, min(chunk_size, spec.trajectory_count - start))
        for start in range(0, spec.trajectory_count, chunk_size)
    ]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_chunk_sums, blocks))
    else:
        partials = [_chunk_sums(b) for b in blocks]
    pe_sum, n_sum = partials[0]
    for pe_part, n_part in partials[1:]:
        pe_sum = pe_sum + pe_part
        n_sum = n_sum + n_part
    count = spec.trajectory_count
    t = dt * stride * np.arange(pe_sum.size)
    return TimeSeries(t, {"P_e": pe_sum / count, "n": n_sum / count}, meta)
