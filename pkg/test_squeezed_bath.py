"""
Effective squeezed bath of polariton B and its reduced master equation
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from dynamics import master_dissipators, rk4_evolve
from fock import number_distribution, product_state, thermal_state, two_mode_operators
from model import SystemParams, build_hamiltonian
from normal_modes import PolaritonBranch, bogoliubov_numeric, polariton_number_operator, stability_check
from squeezed_bath import (
    LAB,
    EffectiveBath,
    effective_bath_exact,
    evolve_effective_B,
    quadrature_variances,
    required_cutoff,
    squeezed_thermal_moments,
    squeezing_decomposition,
    steady_variances,
    thermal_deviation_chi2,
)
from squeezed_bath.evolution import _EffectiveGenerator
from utils.errors import DomainError


def _phonon_side(delta, g, kappa, gamma, nbar_b):
    """Second-order N̄_B and Γ_B with thermal photons at zero."""
    detuned = (delta * delta - 1.0) ** 2
    population = (1.0 + 4.0 * delta * g * g * kappa / (gamma * detuned)) * nbar_b + kappa / gamma * (g / (1.0 - delta)) ** 2
    rate = gamma + (gamma - kappa) * 4.0 * g * g * delta / detuned
    return population, rate


def _photon_side(delta, g, kappa, gamma, nbar_b):
    detuned = (delta * delta - 1.0) ** 2
    population = (
        2.0 * gamma * (1.0 + delta * delta) * g * g / (kappa * detuned) * nbar_b
        + gamma / kappa * (g / (1.0 - delta)) ** 2
    )
    rate = kappa + (kappa - gamma) * 4.0 * g * g * delta / detuned
    return population, rate


# =======================
# BATH PARAMETERS
# =======================

def test_uncoupled_bath_is_phonon_reservoir():
    bath = effective_bath_exact(bogoliubov_numeric(-3.0, 0.0), 0.03, 1e-3, 0.0, 10.0)
    assert bath.Gamma_B == pytest.approx(1e-3, abs=1e-15)
    assert bath.Nbar_B == pytest.approx(10.0, abs=1e-12)
    assert bath.Mbar_B == 0.0


def test_phonon_side_matches_second_order():
    bath = effective_bath_exact(bogoliubov_numeric(-3.0, 0.05), 30.0, 1.0, 0.0, 10.0)
    population, rate = _phonon_side(-3.0, 0.05, 30.0, 1.0, 10.0)
    assert population == pytest.approx(9.8640625)
    assert rate == pytest.approx(1.01359375)
    assert bath.Nbar_B == pytest.approx(population, rel=2e-3)
    assert bath.Gamma_B == pytest.approx(rate, rel=1e-3)


def test_photon_side_matches_second_order():
    bath = effective_bath_exact(bogoliubov_numeric(-0.4, 0.05), 30.0, 1.0, 0.0, 10.0)
    population, rate = _photon_side(-0.4, 0.05, 30.0, 1.0, 10.0)
    assert population == pytest.approx(0.0027825, rel=1e-4)
    assert bath.Gamma_B == pytest.approx(rate, rel=1e-4)
    assert bath.Nbar_B == pytest.approx(population, rel=2e-2)


@pytest.mark.parametrize("delta, rate, population", [(-3.0, 1e-3, 10.0), (-0.4, 0.03, 0.5)])
def test_weak_coupling_limits(delta, rate, population):
    bath = effective_bath_exact(bogoliubov_numeric(delta, 1e-6), 0.03, 1e-3, 0.5, 10.0)
    assert abs(bath.Gamma_B - rate) < 1e-8
    assert bath.Nbar_B == pytest.approx(population, abs=1e-8)


def test_population_falls_with_cavity_to_mechanical_ratio():
    bog = bogoliubov_numeric(-3.0, 0.05)
    populations = [effective_bath_exact(bog, ratio, 1.0, 0.0, 10.0).Nbar_B for ratio in (1.0, 3.0, 10.0, 30.0)]
    assert np.all(np.diff(populations) < 0)


def test_moment_is_rotated_real_nonpositive():
    bath = effective_bath_exact(bogoliubov_numeric(-0.4, 0.2), 0.03, 1e-3, 0.0, 10.0)
    assert isinstance(bath.Mbar_B, float)
    assert bath.Mbar_B < 0.0
    assert bath.to_dict()["Mbar_B_imag"] == 0.0


def test_vanishing_rates_rejected():
    with pytest.raises(DomainError):
        effective_bath_exact(bogoliubov_numeric(-3.0, 0.05), 0.0, 0.0, 0.0, 1.0)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-3.0, max_value=-0.05), st.floats(min_value=0.01, max_value=0.1))
def test_uncertainty_holds_across_stable_region(delta, g):
    assume(stability_check(delta, g) and delta < -4.0 * g * g - 1e-3)
    bath = effective_bath_exact(bogoliubov_numeric(delta, g), 0.03, 1e-3, 0.0, 10.0)
    assert bath.squeezing_margin >= -1e-10
    stats = steady_variances(bath)
    assert stats.product >= 0.25 - 1e-10
    assert stats.population == pytest.approx(bath.Nbar_B, abs=1e-12)


# =======================
# STEADY STATE & DECOMPOSITION
# =======================

@pytest.mark.parametrize("N, expected", [(0.0, 0.5), (1.0, 1.5)])
def test_unsqueezed_variances(N, expected):
    stats = steady_variances(EffectiveBath(1.0, N, 0.0))
    assert stats.var_X == pytest.approx(expected)
    assert stats.var_Y == pytest.approx(expected)


def test_complex_moment_must_be_rotated():
    with pytest.raises(DomainError):
        steady_variances(EffectiveBath(1.0, 2.0, 1.0 + 1.0j))


def test_negative_population_rejected():
    with pytest.raises(DomainError):
        EffectiveBath(1.0, -0.5, 0.0)


def test_decomposition_without_squeezing():
    decomposition = squeezing_decomposition(EffectiveBath(1.0, 3.0, 0.0))
    assert decomposition.r == 0.0
    assert decomposition.N_th == pytest.approx(3.0, abs=1e-12)


def test_maximum_squeezing_has_no_thermal_part():
    decomposition = squeezing_decomposition(EffectiveBath(1.0, 2.0, -math.sqrt(6.0)))
    assert decomposition.N_th == pytest.approx(0.0, abs=1e-10)
    assert decomposition.r > 0.0


@pytest.mark.parametrize("N_th, r", [(0.0, 0.5), (1.0, 0.3), (4.0, 0.05), (2.5, 1.2)])
def test_decomposition_inverts_forward_map(N_th, r):
    N, M = squeezed_thermal_moments(N_th, r)
    decomposition = squeezing_decomposition(EffectiveBath(1.0, N, M))
    assert abs(decomposition.N_th - N_th) < 1e-10
    assert abs(decomposition.r - r) < 1e-10


def test_positive_moment_gives_negative_squeezing():
    N, M = squeezed_thermal_moments(1.0, 0.3)
    assert squeezing_decomposition(EffectiveBath(1.0, N, -M)).r == pytest.approx(-0.3, abs=1e-10)


def test_decomposition_rejects_unphysical_moments():
    with pytest.raises(DomainError):
        squeezing_decomposition(EffectiveBath(1.0, 1.0, -2.0))


def test_required_cutoff():
    assert required_cutoff(EffectiveBath(1.0, 2.0, 0.0)) == 26
    assert required_cutoff(EffectiveBath(1.0, 0.0, 0.0)) == 10


# =======================
# REDUCED EVOLUTION
# =======================

def test_unsqueezed_bath_relaxes_to_thermal():
    bath = EffectiveBath(Gamma_B=1.0, Nbar_B=1.0, Mbar_B=0.0)
    trajectory = evolve_effective_B(bath, 0.5, thermal_state(0.0, 30), 30.0, 0.01, sample_every=1.0)
    assert trajectory.series("N_B")[-1] == pytest.approx(1.0, abs=1e-6)
    assert trajectory.max_trace_drift < 1e-10
    assert not trajectory.diagnostics


@pytest.mark.parametrize("frame", ["rotating", LAB])
def test_squeezed_steady_state_variances(frame):
    bath = EffectiveBath(Gamma_B=1.0, Nbar_B=2.0, Mbar_B=1.5)
    trajectory = evolve_effective_B(bath, 0.5, thermal_state(0.0, 70), 20.0, 4e-3, frame=frame, sample_every=1.0)
    measured = quadrature_variances(trajectory.final_state, 20.0, 0.5, frame)
    expected = steady_variances(bath)
    assert measured.var_X == pytest.approx(expected.var_X, abs=1e-4)
    assert measured.var_Y == pytest.approx(expected.var_Y, abs=1e-4)
    assert measured.population == pytest.approx(2.0, abs=1e-4)
    assert trajectory.series("X2")[-1] == pytest.approx(expected.var_X, abs=1e-4)


def test_squeezed_steady_state_is_not_thermal():
    N, M = squeezed_thermal_moments(1.0, 0.3)
    squeezed = evolve_effective_B(EffectiveBath(1.0, N, M), 0.5, thermal_state(0.0, 40), 20.0, 0.01, sample_every=5.0)
    thermal = evolve_effective_B(EffectiveBath(1.0, N, 0.0), 0.5, thermal_state(0.0, 40), 20.0, 0.01, sample_every=5.0)
    noise_floor = thermal_deviation_chi2(number_distribution(thermal.final_state), N)
    deviation = thermal_deviation_chi2(number_distribution(squeezed.final_state), N)
    assert deviation > 10.0 * max(noise_floor, 1e-12)


@pytest.mark.parametrize("frame", ["rotating", LAB])
def test_single_mode_generator_is_linear(frame):
    generator = _EffectiveGenerator(EffectiveBath(1.0, 2.0, 1.5), 0.5, 8, frame)
    rng = np.random.default_rng(13)
    A = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    B = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    combined = generator(0.7, A + 1j * B)
    assert np.max(np.abs(combined - (generator(0.7, A) + 1j * generator(0.7, B)))) < 1e-12


def test_long_squeezed_run_stays_hermitian():
    N, M = squeezed_thermal_moments(0.5, 0.3)
    defects = []
    trajectory = evolve_effective_B(
        EffectiveBath(1.0, N, M), 0.5, thermal_state(0.0, 40), 100.0, 0.01, frame=LAB, sample_every=10.0,
        on_step=lambda t, rho: defects.append(np.max(np.abs(rho - rho.conj().T))),
    )
    assert trajectory.max_trace_drift < 1e-10
    assert max(defects) < 1e-10


def test_small_cutoff_is_flagged():
    bath = EffectiveBath(Gamma_B=1.0, Nbar_B=2.0, Mbar_B=0.0)
    trajectory = evolve_effective_B(bath, 0.5, thermal_state(0.0, 5), 0.1, 0.01)
    assert any("below" in message for message in trajectory.diagnostics)


def test_evolution_rejects_bad_inputs():
    with pytest.raises(DomainError):
        evolve_effective_B(EffectiveBath(1.0, 1.0, 0.0), 0.5, thermal_state(0.0, 20), 1.0, 0.01, frame="tilted")
    with pytest.raises(DomainError):
        evolve_effective_B(EffectiveBath(0.0, 1.0, 0.0), 0.5, thermal_state(0.0, 20), 1.0, 0.01)


@pytest.mark.slow
def test_reduced_model_tracks_full_model_during_hold():
    params = SystemParams(delta=-0.4, g=0.05, kappa=0.01, gamma=0.001, nbar_a=0.0, nbar_b=2.0)
    cutoffs = (12, 6)
    ops = two_mode_operators(*cutoffs)
    bog = bogoliubov_numeric(params.delta, params.g)
    N_B = polariton_number_operator(bog, ops, PolaritonBranch.B)
    H = build_hamiltonian(params, *cutoffs)
    rho0 = product_state(thermal_state(1.5, cutoffs[0]), thermal_state(0.0, cutoffs[1]))
    full = rk4_evolve(rho0, lambda t: H, master_dissipators(params, ops), 0.0, 200.0, 0.01,
                      observables={"N_B": N_B}, sample_every=10.0)

    bath = effective_bath_exact(bog, params.kappa, params.gamma, params.nbar_a, params.nbar_b)
    start = full.series("N_B")[0]
    reduced = evolve_effective_B(bath, bog.spectrum.omega_B, thermal_state(start, 20), 200.0, 0.01, sample_every=10.0)

    assert np.allclose(full.times, reduced.times)
    np.testing.assert_allclose(reduced.series("N_B"), full.series("N_B"), rtol=0.1)
