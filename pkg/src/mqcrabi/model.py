"""Physical parameters, unit conventions and shared containers.

Units: hbar = 1 and energies are measured in units of the coupling ``g``, so
times are reported as ``g*t`` and frequencies as ``omega/g``.  The optical mode
is stored as the complex coordinate ``z = sqrt(W/2) * (q + i p / W)`` where ``W``
is the mode frequency; ``(q, p)`` is a derived view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import ContractViolation, DomainError

DEFAULT_OMEGA = 50.0
RECORD_SPACING = 0.01
STEPS_PER_PERIOD = 500
MIN_STEPS_PER_PERIOD = 20


def effective_coupling(mu: float, lam: float, omega: float) -> float:
    """Return the light-matter coupling ``g = mu * lam * sqrt(omega / 2)``."""
    for name, value in (("mu", mu), ("lam", lam), ("omega", omega)):
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value!r}")
    return mu * lam * math.sqrt(omega / 2.0)


@dataclass(frozen=True)
class ModelParams:
    """One instance of the Rabi model.

    ``omega_e`` is the two-level transition energy, ``omega_gamma`` the optical
    mode frequency and ``g`` the coupling.  ``mu`` and ``lam`` are optional and
    only checked for consistency with ``g``; only their product enters.
    """

    omega_e: float = DEFAULT_OMEGA
    omega_gamma: float = DEFAULT_OMEGA
    g: float = 1.0
    mu: float | None = None
    lam: float | None = None

    def __post_init__(self):
        for name in ("omega_e", "omega_gamma", "g"):
            value = getattr(self, name)
            # g = 0 is the decoupled limit and stays legal
            floor_ok = value >= 0 if name == "g" else value > 0
            if not (isinstance(value, (int, float)) and math.isfinite(value) and floor_ok):
                kind = "non-negative" if name == "g" else "positive"
                raise DomainError(f"{name} must be a {kind} finite number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if (self.mu is None) != (self.lam is None):
            raise DomainError("mu and lam must be given together")
        if self.mu is not None:
            expected = effective_coupling(self.mu, self.lam, self.omega_gamma)
            if abs(expected - self.g) > 1e-12 * abs(expected):
                raise DomainError(
                    f"g={self.g} inconsistent with mu*lam*sqrt(omega_gamma/2)={expected}"
                )

    @classmethod
    def resonant(cls, omega: float = DEFAULT_OMEGA, g: float = 1.0) -> "ModelParams":
        return cls(omega_e=omega, omega_gamma=omega, g=g)

    @property
    def is_resonant(self) -> bool:
        return self.omega_e == self.omega_gamma

    @property
    def detuning(self) -> float:
        """Half the energy mismatch, ``(omega_e - omega_gamma) / 2``."""
        return 0.5 * (self.omega_e - self.omega_gamma)


def mode_coordinates(z: complex, params: ModelParams) -> tuple[float, float]:
    """Position and momentum ``(q, p)`` of the classical mode coordinate ``z``."""
    w = params.omega_gamma
    return math.sqrt(2.0 / w) * z.real, math.sqrt(2.0 * w) * z.imag


def from_mode_coordinates(q, p, params: ModelParams):
    """Inverse of :func:`mode_coordinates`; accepts scalars or arrays."""
    w = params.omega_gamma
    return math.sqrt(w / 2.0) * (q + 1j * p / w)


def occupancy_from_coordinates(q, p, params: ModelParams):
    w = params.omega_gamma
    return 0.5 * w * q * q + p * p / (2.0 * w)


@dataclass(frozen=True)
class MqcState:
    """Two-level amplitudes ``(c_e, c_g)`` and the classical mode coordinate ``z``."""

    c_e: complex
    c_g: complex
    z: complex

    def __post_init__(self):
        for name in ("c_e", "c_g", "z"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def excited(cls, z: complex = 0j) -> "MqcState":
        return cls(1.0, 0.0, z)

    @classmethod
    def ground(cls, z: complex = 0j) -> "MqcState":
        return cls(0.0, 1.0, z)

    @property
    def norm(self) -> float:
        return abs(self.c_e) ** 2 + abs(self.c_g) ** 2

    @property
    def occupancy(self) -> float:
        return (self.z.conjugate() * self.z).real

    @property
    def excited_population(self) -> float:
        return abs(self.c_e) ** 2


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TimeSeries:
    """Real-valued channels sampled on a shared uniform time grid (units 1/g)."""

    t: np.ndarray
    channels: Mapping[str, np.ndarray] = field(default_factory=dict)
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        t = _frozen(self.t)
        if t.ndim != 1 or t.size == 0:
            raise ContractViolation("time grid must be a non-empty 1-D array")
        if t.size > 1:
            steps = np.diff(t)
            if not np.all(steps > 0):
                raise ContractViolation("time grid must be strictly increasing")
            h = (t[-1] - t[0]) / (t.size - 1)
            # relative to the step, with an absolute floor for float round-off in t itself
            tol = 1e-12 * h + 4 * np.finfo(float).eps * max(abs(t[0]), abs(t[-1]))
            if np.max(np.abs(steps - h)) > tol:
                raise ContractViolation("time grid must be uniform")
        chans = {}
        for name, values in self.channels.items():
            values = _frozen(values)
            if values.shape != t.shape:
                raise ContractViolation(
                    f"channel {name!r} has shape {values.shape}, grid has {t.shape}"
                )
            chans[name] = values
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "channels", MappingProxyType(chans))
        object.__setattr__(self, "meta", MappingProxyType(dict(self.meta)))

    @property
    def dt(self) -> float:
        if self.t.size < 2:
            return 0.0
        return (self.t[-1] - self.t[0]) / (self.t.size - 1)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.channels[name]

    def __len__(self) -> int:
        return self.t.size

    def window(self, t_min: float, t_max: float) -> "TimeSeries":
        """Sub-series with ``t_min <= t <= t_max`` (inclusive, with round-off slack)."""
        slack = 1e-9 * max(self.dt, 1.0)
        mask = (self.t >= t_min - slack) & (self.t <= t_max + slack)
        return TimeSeries(
            self.t[mask], {k: v[mask] for k, v in self.channels.items()}, self.meta
        )


def uniform_grid(t_final: float, dt: float, t0: float = 0.0) -> np.ndarray:
    """Grid ``t0, t0+dt, ..., t_final`` built by index so the spacing is exact."""
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    n = int(round((t_final - t0) / dt))
    if n < 0 or abs(t0 + n * dt - t_final) > 1e-9 * max(dt, abs(t_final)):
        raise DomainError(f"t_final={t_final} is not a whole number of steps dt={dt}")
    return t0 + dt * np.arange(n + 1)


def default_dt(params: ModelParams, record_spacing: float = RECORD_SPACING) -> float:
    """Default MQC step: at least 500 steps per optical period, dividing the record spacing."""
    per_record = math.ceil(record_spacing * STEPS_PER_PERIOD * params.omega_gamma / (2 * math.pi))
    return record_spacing / per_record


SAMPLERS = ("focused", "wigner")
TLS_STATES = ("excited", "ground")


@dataclass(frozen=True)
class EnsembleSpec:
    """Monte Carlo run description: sampler, size, seed and integration grid."""

    sampler: str = "focused"
    trajectory_count: int = 1
    n0: float = 0.59
    initial_tls: str = "excited"
    rng_seed: int = 0
    dt: float | None = None
    t_final: float = 25.0

    def __post_init__(self):
        if self.sampler not in SAMPLERS:
            raise DomainError(f"sampler must be one of {SAMPLERS}, got {self.sampler!r}")
        if self.initial_tls not in TLS_STATES:
            raise DomainError(f"initial_tls must be one of {TLS_STATES}, got {self.initial_tls!r}")
        if int(self.trajectory_count) != self.trajectory_count or self.trajectory_count < 1:
            raise DomainError("trajectory_count must be a positive integer")
        if self.sampler == "focused" and not self.n0 >= 0:
            raise DomainError(f"focused sampling needs n0 >= 0, got {self.n0!r}")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise DomainError("rng_seed must be an unsigned 64-bit integer")
        if not self.t_final > 0:
            raise DomainError("t_final must be positive")

    def resolved_dt(self, params: ModelParams) -> float:
        """Step size, checked against the at-least-20-steps-per-period bound."""
        dt = default_dt(params) if self.dt is None else float(self.dt)
        if not dt > 0:
            raise DomainError(f"dt must be positive, got {dt!r}")
        if dt * params.omega_gamma > 2 * math.pi / MIN_STEPS_PER_PERIOD * (1 + 1e-12):
            raise DomainError(
                f"dt={dt} resolves fewer than {MIN_STEPS_PER_PERIOD} steps per optical period"
            )
        return dt
