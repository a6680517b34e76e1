"""Reduced one-dimensional dynamics of the slow excited-state amplitude.

Under the rotating-wave approximation the slow amplitude ``c`` obeys an
undamped, unforced Duffing equation::

    c'' = -a c + b c**3,   b = 2 g**2,
    a = (2 + n0) g**2   (emitter starts excited)
    a = (1 + n0) g**2   (emitter starts in its ground state)

and the excited population is ``P_e = c**2``.  The conserved energy is
``E = v**2/2 + V(c)`` with ``V(c) = a c**2/2 - b c**4/4``.

For the ground start the amplitude leaves ``c = 0`` with rate ``g sqrt(n0)``
(the mode drives the ground amplitude into the excited one from ``t = 0``);
its overall phase is ``-i`` which does not affect ``P_e``, so the real
equation above is integrated for its magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline

from ._rk4 import rk4_step
from .errors import DomainError, InsufficientData, IntegrationDiverged, NoOscillation
from .model import TimeSeries

INIT_MODES = ("excited", "ground")
MAX_PHASE_STEP = 0.005
MIN_BATCH = 8


@dataclass(frozen=True)
class DuffingParams:
    """Initial occupancy, coupling, start protocol and initial data.

    ``c0`` and ``v0`` default to the values implied by ``init_mode``.
    ``anharmonic`` overrides the cubic coefficient ``b`` (default ``2 g**2``);
    setting it to zero gives a harmonic oscillator.
    """

    n0: float
    g: float = 1.0
    init_mode: str = "excited"
    c0: float | None = None
    v0: float | None = None
    anharmonic: float | None = None

    def __post_init__(self):
        if self.init_mode not in INIT_MODES:
            raise DomainError(f"init_mode must be one of {INIT_MODES}, got {self.init_mode!r}")
        if not self.n0 >= 0:
            raise DomainError(f"n0 must be non-negative, got {self.n0!r}")
        if not self.g > 0:
            raise DomainError(f"g must be positive, got {self.g!r}")
        excited = self.init_mode == "excited"
        if self.c0 is None:
            object.__setattr__(self, "c0", 1.0 if excited else 0.0)
        if self.v0 is None:
            object.__setattr__(self, "v0", 0.0 if excited else self.g * math.sqrt(self.n0))
        if not -1.0 <= self.c0 <= 1.0:
            raise DomainError(f"c0 must lie in [-1, 1], got {self.c0!r}")
        if self.anharmonic is None:
            object.__setattr__(self, "anharmonic", 2.0 * self.g**2)
        for name in ("n0", "g", "c0", "v0", "anharmonic"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def linear(self) -> float:
        """Harmonic coefficient ``a``."""
        offset = 2.0 if self.init_mode == "excited" else 1.0
        return (offset + self.n0) * self.g**2

    def potential(self, c):
        return 0.5 * self.linear * c * c - 0.25 * self.anharmonic * c**4

    @property
    def energy(self) -> float:
        return duffing_energy(self.c0, self.v0, self)


def duffing_accel(c, params: DuffingParams):
    """Acceleration ``-a c + b c**3``."""
    return -params.linear * c + params.anharmonic * c**3


def duffing_energy(c, v, params: DuffingParams):
    return 0.5 * v * v + params.potential(c)


def asymptotic_frequency(n0: float, g: float = 1.0) -> float:
    """Large-occupancy population frequency ``2 g sqrt(n0 + 1/2)``."""
    if not n0 >= 0:
        raise DomainError(f"n0 must be non-negative, got {n0!r}")
    return 2.0 * g * math.sqrt(n0 + 0.5)


def solve_duffing(params: DuffingParams, t) -> TimeSeries:
    """Integrate from ``(c0, v0)`` at ``t[0]`` with fixed-step RK4.

    Each grid interval is subdivided so that ``h * sqrt(a) <= 0.005``.  Returns
    real channels ``P_e``, ``c`` and ``v``.
    """
    t = np.asarray(t, dtype=float)
    grid = TimeSeries(t)  # validates uniform spacing
    h_grid = grid.dt
    substeps = max(1, math.ceil(h_grid * math.sqrt(params.linear) / MAX_PHASE_STEP)) if t.size > 1 else 1
    h = h_grid / substeps
    a, b = params.linear, params.anharmonic

    def f(y):
        c, v = y
        return v, -a * c + b * c * c * c

    c = np.empty(t.size)
    v = np.empty(t.size)
    y = (params.c0, params.v0)
    c[0], v[0] = y
    for i in range(1, t.size):
        for _ in range(substeps):
            y = rk4_step(f, y, h)
        if not (math.isfinite(y[0]) and math.isfinite(y[1])):
            raise IntegrationDiverged(i * substeps)
        c[i], v[i] = y
    meta = {"params": params, "substeps": substeps}
    return TimeSeries(t, {"P_e": c * c, "c": c, "v": v}, meta)


def solve_duffing_many(params_list, t) -> list[TimeSeries]:
    """:func:`solve_duffing` for several parameter sets stepped together as arrays.

    All members share the finest substep count needed by any of them, so
    each is at least as accurate as its individual solve.
    """
    params_list = list(params_list)
    if len(params_list) < MIN_BATCH:
        # array overhead per step outweighs the batching gain for a handful of points
        out = []
        for k, p in enumerate(params_list):
            try:
                out.append(solve_duffing(p, t))
            except IntegrationDiverged as err:
                raise IntegrationDiverged(err.step, trajectory=k) from err
        return out
    t = np.asarray(t, dtype=float)
    grid = TimeSeries(t)
    a = np.array([p.linear for p in params_list])
    b = np.array([p.anharmonic for p in params_list])
    substeps = 1
    if t.size > 1:
        substeps = max(1, math.ceil(grid.dt * math.sqrt(a.max()) / MAX_PHASE_STEP))
    h = grid.dt / substeps

    def f(y):
        c, v = y
        return v, -a * c + b * c * c * c

    c = np.empty((t.size, a.size))
    v = np.empty((t.size, a.size))
    y = (np.array([p.c0 for p in params_list]), np.array([p.v0 for p in params_list]))
    c[0], v[0] = y
    for i in range(1, t.size):
        for _ in range(substeps):
            y = rk4_step(f, y, h)
        ok = np.isfinite(y[0]) & np.isfinite(y[1])
        if not ok.all():
            raise IntegrationDiverged(i * substeps, trajectory=int(np.flatnonzero(~ok)[0]))
        c[i], v[i] = y
    return [
        TimeSeries(t, {"P_e": c[:, k] ** 2, "c": c[:, k], "v": v[:, k]}, {"params": p, "substeps": substeps})
        for k, p in enumerate(params_list)
    ]


def turning_point(params: DuffingParams) -> float:
    """Squared amplitude ``c_t**2`` of the inner turning points ``+-c_t``."""
    a, b = params.linear, params.anharmonic
    e = params.energy
    if e <= 0:
        raise NoOscillation(f"no oscillation: energy {e!r} leaves the amplitude at rest")
    disc = a * a - 4.0 * b * e
    if disc <= 0 or math.sqrt(disc) <= 1e-12 * a:
        raise NoOscillation(
            "no oscillation: energy reaches the top of the potential barrier "
            f"(n0={params.n0}, c0={params.c0}, v0={params.v0})"
        )
    x_small = 4.0 * e / (a + math.sqrt(disc))
    if params.c0**2 > x_small * (1.0 + 1e-9):
        raise NoOscillation("no oscillation: initial amplitude lies outside the potential well")
    return x_small


def exact_period(params: DuffingParams, *, rtol: float = 1e-12) -> float:
    """Amplitude period ``2 * int dc / sqrt(2 (E - V))`` between the turning points.

    With ``c = c_t sin(theta)`` the inverse-square-root endpoint singularities
    cancel and the integrand over ``theta in [0, pi/2]`` is smooth.
    """
    a, b = params.linear, params.anharmonic
    x_t = turning_point(params)

    def integrand(theta):
        s = math.sin(theta)
        return 1.0 / math.sqrt(a - 0.5 * b * x_t * (1.0 + s * s))

    value, _ = quad(integrand, 0.0, 0.5 * math.pi, epsabs=0.0, epsrel=rtol, limit=200)
    return 4.0 * value


def population_frequency(params: DuffingParams) -> float:
    """Angular frequency of ``P_e = c**2``, twice that of the amplitude."""
    return 2.0 * 2.0 * math.pi / exact_period(params)


def zero_crossing_period(series: TimeSeries) -> float:
    """Amplitude period from the zero crossings of channel ``c``.

    Crossings are located on the cubic Hermite interpolant built from ``c`` and
    its rate ``v``; successive crossings are half a period apart and the period
    is the least-squares slope through all of them.
    """
    spline = CubicHermiteSpline(series.t, series["c"], series["v"])
    roots = np.sort(np.asarray(spline.roots(extrapolate=False)))
    if roots.size:
        roots = roots[np.concatenate(([True], np.diff(roots) > 1e-9))]
    if roots.size < 3:
        raise InsufficientData(f"need at least 3 zero crossings, found {roots.size}")
    k = np.arange(roots.size)
    slope = np.polyfit(k, roots, 1)[0]
    return 2.0 * slope
