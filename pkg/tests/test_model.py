import math

import numpy as np
import pytest

from mqcrabi.errors import ContractViolation, DomainError
from mqcrabi.model import (
    EnsembleSpec,
    ModelParams,
    MqcState,
    TimeSeries,
    default_dt,
    effective_coupling,
    from_mode_coordinates,
    mode_coordinates,
    occupancy_from_coordinates,
    uniform_grid,
)


@pytest.mark.parametrize(
    "mu, lam, omega, expected",
    [(1.0, 1.0, 2.0, 1.0), (2.0, 0.5, 2.0, 1.0), (1.0, 0.2, 50.0, 1.0)],
)
def test_effective_coupling_examples(mu, lam, omega, expected):
    assert effective_coupling(mu, lam, omega) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
def test_effective_coupling_rejects_non_positive(bad):
    with pytest.raises(DomainError):
        effective_coupling(*bad)


def test_mode_coordinates_examples():
    p50 = ModelParams()
    assert mode_coordinates(0j, p50) == (0.0, 0.0)
    q0 = 0.3
    q, p = mode_coordinates(complex(math.sqrt(25.0) * q0), p50)
    assert q == pytest.approx(q0, rel=1e-14) and p == 0.0
    q, p = mode_coordinates(complex(math.sqrt(0.59)), p50)
    assert q == pytest.approx(math.sqrt(2 * 0.59 / 50), rel=1e-14)
    assert q == pytest.approx(0.15362, abs=5e-6)
    assert occupancy_from_coordinates(q, p, p50) == pytest.approx(0.59, rel=1e-14)


def test_mode_coordinates_round_trip():
    rng = np.random.default_rng(3)
    params = ModelParams.resonant(7.0)
    for z in rng.normal(size=20) + 1j * rng.normal(size=20):
        q, p = mode_coordinates(z, params)
        assert from_mode_coordinates(q, p, params) == pytest.approx(z, abs=1e-14)


def test_model_params_validation():
    with pytest.raises(DomainError):
        ModelParams(omega_e=-1.0)
    with pytest.raises(DomainError):
        ModelParams(g=float("nan"))
    with pytest.raises(DomainError):
        ModelParams(mu=1.0)
    ModelParams(g=1.0, mu=1.0, lam=0.2)
    with pytest.raises(DomainError):
        ModelParams(g=1.1, mu=1.0, lam=0.2)


def test_model_params_detuning():
    p = ModelParams(omega_e=55.0, omega_gamma=50.0)
    assert p.detuning == 2.5 and not p.is_resonant
    assert ModelParams.resonant().is_resonant


def test_state_observables():
    s = MqcState(1 / math.sqrt(2), 1j / math.sqrt(2), 1 + 1j)
    assert s.norm == pytest.approx(1.0)
    assert s.occupancy == pytest.approx(2.0)
    assert s.excited_population == pytest.approx(0.5)


def test_time_series_contracts():
    t = uniform_grid(1.0, 0.1)
    assert t.size == 11 and t[-1] == pytest.approx(1.0)
    s = TimeSeries(t, {"x": t**2})
    assert s.dt == pytest.approx(0.1)
    assert len(s.window(0.2, 0.5)) == 4
    with pytest.raises(ContractViolation):
        TimeSeries([0.0, 0.1, 0.3])
    with pytest.raises(ContractViolation):
        TimeSeries(t, {"x": t[:-1]})
    with pytest.raises(ValueError):
        s["x"][0] = 1.0


def test_uniform_grid_requires_whole_steps():
    with pytest.raises(DomainError):
        uniform_grid(1.05, 0.1)


def test_default_dt_divides_record_spacing():
    dt = default_dt(ModelParams())
    assert dt == pytest.approx(2.5e-4)
    assert 0.01 / dt == pytest.approx(round(0.01 / dt), abs=1e-9)
    assert 2 * math.pi / (50 * dt) >= 500


def test_ensemble_spec_stability_bound():
    params = ModelParams()
    assert EnsembleSpec().resolved_dt(params) == default_dt(params)
    with pytest.raises(DomainError):
        EnsembleSpec(dt=0.01).resolved_dt(params)
    with pytest.raises(DomainError):
        EnsembleSpec(sampler="uniform")
