"""
Model parameters, Hamiltonian and detuning schedules
"""

import numpy as np
import pytest

from fock import two_mode_operators
from model import (
    PumpBlock,
    SystemParams,
    build_hamiltonian,
    coupling_from_mean_field,
    cycle_schedule,
    hamiltonian_terms,
    mean_field,
    mean_field_residual,
    pump_amplitude_for_detuning,
    schedule_eval,
)
from utils.errors import DomainError, ScheduleDomainError


def test_params_collect_every_violation():
    with pytest.raises(DomainError) as excinfo:
        SystemParams(delta=0.5, g=-0.1, kappa=-1.0, gamma=0.0)
    message = str(excinfo.value)
    assert "delta" in message
    assert "g must" in message
    assert "kappa" in message


def test_with_delta_keeps_other_fields():
    params = SystemParams(delta=-1.0, g=0.1, kappa=0.2, gamma=0.01, nbar_b=3.0)
    moved = params.with_delta(-0.5)
    assert moved.delta == -0.5
    assert moved.to_dict()["nbar_b"] == 3.0


def test_hamiltonian_is_hermitian_and_matches_terms():
    params = SystemParams(delta=-1.2, g=0.07, kappa=0.0, gamma=0.0)
    H = build_hamiltonian(params, 4, 5)
    assert H.hermitian_defect() == 0.0
    ops = two_mode_operators(4, 5)
    expected = 1.2 * ops.n_a + ops.n_b + 0.07 * ops.coupling
    assert np.allclose(H.toarray(), expected.toarray())


def test_hamiltonian_terms_share_pattern_across_detunings():
    terms = hamiltonian_terms(0.05, 3, 3)
    difference = terms.at(-1.0) - terms.at(-2.0)
    assert np.allclose(difference.toarray(), -terms.ops.n_a.toarray())
    assert np.allclose(terms.derivative(0.5).toarray(), -0.5 * terms.ops.n_a.toarray())


def test_uncoupled_spectrum_is_ladder():
    params = SystemParams(delta=-2.0, g=0.0, kappa=0.0, gamma=0.0)
    energies = np.sort(np.real(np.diag(build_hamiltonian(params, 2, 2).toarray())))
    assert np.allclose(energies[:4], [0.0, 1.0, 2.0, 2.0])


def test_mean_field_converges_and_holds_coupling():
    pump = PumpBlock(g0=1e-3, alpha_in=1.0, omega_c=5.0, omega_p=4.0)
    params = SystemParams(delta=-1.0, g=0.0, kappa=0.1, gamma=0.0, pump=pump)
    state = mean_field(pump.alpha_in, params)
    assert mean_field_residual(state, pump) < 1e-8
    assert state.alpha == pytest.approx(1.0, rel=1e-4)
    assert state.beta < 0
    g = coupling_from_mean_field(state, pump)
    assert g == pytest.approx(pump.g0 * state.alpha)
    assert pump_amplitude_for_detuning(-0.5, state) == pytest.approx(0.5 * state.alpha)


def test_mean_field_needs_pump():
    params = SystemParams(delta=-1.0, g=0.1, kappa=0.1, gamma=0.0)
    with pytest.raises(DomainError):
        mean_field(1.0, params)


def test_mean_field_zero_drive():
    pump = PumpBlock(g0=1e-3, alpha_in=0.0, omega_c=5.0, omega_p=4.0)
    params = SystemParams(delta=-1.0, g=0.0, kappa=0.1, gamma=0.0, pump=pump)
    state = mean_field(0.0, params)
    assert state.alpha == 0.0
    assert state.detuning == -1.0


def test_cycle_schedule_shape():
    sched = cycle_schedule(-3.0, -1.0, (2.0, 1.0, 2.0, 1.0))
    assert sched.total_duration == 6.0
    assert schedule_eval(sched, 0.0) == -3.0
    assert schedule_eval(sched, 1.0) == pytest.approx(-2.0)
    assert schedule_eval(sched, 2.5) == -1.0
    assert schedule_eval(sched, 4.0) == pytest.approx(-2.0)
    assert schedule_eval(sched, 6.0) == -3.0
    assert sched.derivative(1.0) == pytest.approx(1.0)
    assert sched.derivative(4.0) == pytest.approx(-1.0)


def test_schedule_rejects_outside_times():
    sched = cycle_schedule(-3.0, -1.0, (1.0, 1.0, 1.0, 1.0))
    with pytest.raises(ScheduleDomainError):
        schedule_eval(sched, -0.1)
    with pytest.raises(ScheduleDomainError):
        schedule_eval(sched, 4.5)


def test_schedule_rejects_bad_segments():
    with pytest.raises(ScheduleDomainError):
        cycle_schedule(-3.0, 0.5, (1.0, 1.0, 1.0, 1.0))
    with pytest.raises(ScheduleDomainError):
        cycle_schedule(-3.0, -1.0, (1.0, 0.0, 1.0, 1.0))
    with pytest.raises(ScheduleDomainError):
        cycle_schedule(-3.0, -1.0, (1.0, 1.0, 1.0))
