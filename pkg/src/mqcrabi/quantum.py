"""Exact Jaynes-Cummings dynamics in the single-excitation subspace.

The basis is ``{|e,0>, |g,1>}``: the emitter excited with the mode in vacuum,
and the emitter in its ground state with one photon.  The Hamiltonian is the
real symmetric 2x2 matrix::

    [[omega_e + omega_gamma/2, g              ],
     [g,                       3*omega_gamma/2]]

The zero-point offset ``omega_gamma/2`` appears on both diagonal entries, so
energies match ``3/2 * omega`` at resonance while populations are unaffected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import TLS_STATES, ModelParams, TimeSeries
from .errors import DomainError


def jc_population_resonant(g: float, t):
    """Excited-state population ``1/2 + cos(2 g t)/2`` for the resonant model."""
    return 0.5 + 0.5 * np.cos(2.0 * g * np.asarray(t, dtype=float))


def jc_hamiltonian(params: ModelParams) -> np.ndarray:
    w = params.omega_gamma
    return np.array(
        [[params.omega_e + 0.5 * w, params.g], [params.g, 1.5 * w]], dtype=float
    )


@dataclass(frozen=True)
class JcEigensystem:
    """Eigenpairs of the single-excitation Hamiltonian, sorted by descending energy.

    ``vectors[:, k]`` holds the amplitudes on ``(|e,0>, |g,1>)`` of the state with
    energy ``energies[k]``.  Each vector's sign is fixed so its ``|e,0>`` weight
    is non-negative.
    """

    mean_energy: float
    energies: np.ndarray
    vectors: np.ndarray

    @property
    def splitting(self) -> float:
        return float(self.energies[0] - self.energies[1])


def jc_eigensystem(params: ModelParams) -> JcEigensystem:
    h = jc_hamiltonian(params)
    mean = 0.5 * (h[0, 0] + h[1, 1])
    half_gap = 0.5 * (h[0, 0] - h[1, 1])  # detuning
    g = h[0, 1]
    r = math.hypot(half_gap, g)
    energies = np.array([mean + r, mean - r])
    # half-angle form stays accurate in both the resonant and the decoupled limit
    if r == 0.0:
        cos_t, sin_t = 1.0, 0.0
    else:
        cos_2t, sin_2t = half_gap / r, g / r
        cos_t = math.sqrt(0.5 * (1.0 + cos_2t))
        sin_t = math.sqrt(0.5 * (1.0 - cos_2t))
        if sin_2t < 0:
            sin_t = -sin_t
    vectors = np.array([[cos_t, sin_t], [sin_t, -cos_t]])
    if vectors[0, 1] < 0 or (vectors[0, 1] == 0 and vectors[1, 1] < 0):
        vectors[:, 1] *= -1
    return JcEigensystem(mean, energies, vectors)


def _initial_vector(initial_tls: str) -> np.ndarray:
    if initial_tls == "excited":
        return np.array([1.0, 0.0])
    if initial_tls == "ground":
        return np.array([0.0, 1.0])
    raise DomainError(f"initial_tls must be one of {TLS_STATES}, got {initial_tls!r}")


def propagate_amplitudes(params: ModelParams, initial_tls: str, t) -> np.ndarray:
    """Complex amplitudes on ``(|e,0>, |g,1>)`` at times ``t``; shape ``(len(t), 2)``."""
    eig = jc_eigensystem(params)
    v = eig.vectors
    overlaps = v.T @ _initial_vector(initial_tls)
    # energies measured from the mean, so the global phase stays slowly varying
    phases = np.exp(-1j * np.outer(np.asarray(t, dtype=float), eig.energies - eig.mean_energy))
    amps = (phases * overlaps) @ v.T
    return amps * np.exp(-1j * eig.mean_energy * np.asarray(t, dtype=float))[:, None]


def propagate_quantum(params: ModelParams, initial_tls: str, t) -> TimeSeries:
    """Exact populations by eigendecomposition; channels ``P_e`` and ``P_gamma``.

    ``P_e`` is assembled from the two-eigenstate interference formula so that the
    resonant excited start reproduces :func:`jc_population_resonant` to round-off.
    """
    t = np.asarray(t, dtype=float)
    eig = jc_eigensystem(params)
    v = eig.vectors
    w = v.T @ _initial_vector(initial_tls)  # overlaps <psi_k|psi(0)>
    a_plus, a_minus = v[0, 0] * w[0], v[0, 1] * w[1]
    beat = np.cos(eig.splitting * t)
    p_e = a_plus**2 + a_minus**2 + 2.0 * a_plus * a_minus * beat
    b_plus, b_minus = v[1, 0] * w[0], v[1, 1] * w[1]
    p_gamma = b_plus**2 + b_minus**2 + 2.0 * b_plus * b_minus * beat
    meta = {"model": "jaynes-cummings", "initial_tls": initial_tls}
    return TimeSeries(t, {"P_e": p_e, "P_gamma": p_gamma}, meta)


def contrast_minimum(params: ModelParams, initial_tls: str = "excited") -> float:
    """Smallest excited population reached during the beat, from the eigenvectors alone."""
    eig = jc_eigensystem(params)
    w = eig.vectors.T @ _initial_vector(initial_tls)
    a_plus, a_minus = eig.vectors[0, 0] * w[0], eig.vectors[0, 1] * w[1]
    return float((abs(a_plus) - abs(a_minus)) ** 2)


def generalized_rabi_frequency(params: ModelParams) -> float:
    """Population beat frequency ``2 sqrt(g^2 + detuning^2)``."""
    return 2.0 * math.hypot(params.g, params.detuning)
