"""Quantum Rabi model in three representations: exact Jaynes-Cummings,
Ehrenfest mixed quantum-classical trajectories, and the reduced Duffing
equation, with the spectral tools to compare them."""

from .errors import (
    ConfigError,
    ContractViolation,
    DomainError,
    InsufficientData,
    IntegrationDiverged,
    NoOscillation,
    RabiError,
    ScanPointError,
)
from .model import (
    EnsembleSpec,
    ModelParams,
    MqcState,
    TimeSeries,
    default_dt,
    effective_coupling,
    from_mode_coordinates,
    mode_coordinates,
    uniform_grid,
)
from .quantum import (
    JcEigensystem,
    contrast_minimum,
    jc_eigensystem,
    jc_population_resonant,
    propagate_quantum,
)
from .mqc import (
    focused_initial,
    integrate_trajectory,
    mqc_rhs,
    run_ensemble,
    total_energy,
    wigner_sample,
)
from .duffing import (
    DuffingParams,
    asymptotic_frequency,
    duffing_accel,
    exact_period,
    population_frequency,
    solve_duffing,
    solve_duffing_many,
    zero_crossing_period,
)
from .spectral import Spectrum, dominant_frequency_scan, rabi_spectrum

__version__ = "0.1.0"

__all__ = [
    "Spectrum",
    "dominant_frequency_scan",
    "rabi_spectrum",
    "ConfigError",
    "ContractViolation",
    "DomainError",
    "InsufficientData",
    "IntegrationDiverged",
    "NoOscillation",
    "RabiError",
    "ScanPointError",
    "EnsembleSpec",
    "ModelParams",
    "MqcState",
    "TimeSeries",
    "default_dt",
    "effective_coupling",
    "from_mode_coordinates",
    "mode_coordinates",
    "uniform_grid",
    "JcEigensystem",
    "contrast_minimum",
    "jc_eigensystem",
    "jc_population_resonant",
    "propagate_quantum",
    "focused_initial",
    "integrate_trajectory",
    "mqc_rhs",
    "run_ensemble",
    "total_energy",
    "wigner_sample",
    "DuffingParams",
    "asymptotic_frequency",
    "duffing_accel",
    "exact_period",
    "population_frequency",
    "solve_duffing",
    "solve_duffing_many",
    "zero_crossing_period",
]
