"""
OPTOTTO QUICK VALIDATION CHECKS

Fast self-checks behind the `validate` scenario. Each check returns
(name, passed, detail) and never raises for a failed comparison.
"""

import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from dynamics.integrator import rk4_evolve
from dynamics.lindblad import lindblad_rhs, master_dissipators
from dynamics.oracle import expm_oracle
from fock.operators import two_mode_operators
from fock.states import product_state, thermal_state
from model.hamiltonian import build_hamiltonian
from model.params import SystemParams
from normal_modes.bogoliubov import bogoliubov_numeric
from normal_modes.spectrum import polariton_frequencies, stability_check
from otto.analytic import second_order_performance
from otto.sweep import sweep_map
from squeezed_bath.effective import (
    EffectiveBath,
    effective_bath_exact,
    squeezed_thermal_moments,
    squeezing_decomposition,
    steady_variances,
)
from squeezed_bath.evolution import evolve_effective_B, quadrature_variances
from utils.errors import OptomechError

logger = logging.getLogger(__name__)

CheckResult = Tuple[str, bool, str]


def _stable_grid(num: int = 50):
    for delta in np.linspace(-3.0, -0.05, num):
        for g in np.linspace(0.01, 0.1, num):
            if stability_check(delta, g):
                yield float(delta), float(g)


def check_spectrum() -> CheckResult:
    spectrum = polariton_frequencies(-1.0, 0.05)
    exact = max(abs(spectrum.omega_A - math.sqrt(1.1)), abs(spectrum.omega_B - math.sqrt(0.9)))
    worst = 0.0
    for delta, g in _stable_grid():
        closed = polariton_frequencies(delta, g)
        numeric = bogoliubov_numeric(delta, g).spectrum
        worst = max(worst, abs(closed.omega_A - numeric.omega_A), abs(closed.omega_B - numeric.omega_B))
    return "spectrum", exact < 1e-12 and worst < 1e-9, f"resonance error {exact:.2e}, grid error {worst:.2e}"


def check_bogoliubov() -> CheckResult:
    worst_constraint = 0.0
    worst_round_trip = 0.0
    for delta, g in _stable_grid():
        bog = bogoliubov_numeric(delta, g)
        worst_constraint = max(worst_constraint, *bog.constraint_residuals())
        round_trip = bog.forward() @ bog.inverse() - np.eye(4)
        worst_round_trip = max(worst_round_trip, float(np.max(np.abs(round_trip))))
    passed = worst_constraint < 1e-10 and worst_round_trip < 1e-10
    return "bogoliubov", passed, f"constraints {worst_constraint:.2e}, round trip {worst_round_trip:.2e}"


def check_truncated_gaps() -> CheckResult:
    params = SystemParams(delta=-3.0, g=0.05, kappa=0.0, gamma=0.0)
    energies = np.linalg.eigvalsh(build_hamiltonian(params, 6, 6).toarray())
    gaps = energies[1:] - energies[0]
    spectrum = polariton_frequencies(params.delta, params.g)
    error_B = abs(gaps[0] - spectrum.omega_B)
    error_A = float(np.min(np.abs(gaps - spectrum.omega_A)))
    return "truncated gaps", max(error_A, error_B) < 1e-6, f"omega_B {error_B:.2e}, omega_A {error_A:.2e}"


def check_integrator() -> CheckResult:
    params = SystemParams(delta=-1.5, g=0.1, kappa=0.1, gamma=0.05, nbar_a=0.2, nbar_b=0.5)
    ops = two_mode_operators(5, 5)
    H = build_hamiltonian(params, 5, 5)
    dissipators = master_dissipators(params, ops)
    rho0 = product_state(thermal_state(params.nbar_a, 5), thermal_state(params.nbar_b, 5))
    numeric = rk4_evolve(rho0, lambda t: H, dissipators, 0.0, 10.0, 1e-3, sample_every=10.0).final_state
    reference = expm_oracle(rho0, H, dissipators, 10.0)
    error = float(np.max(np.abs(numeric.toarray() - reference.toarray())))
    return "rk4 vs expm", error < 1e-8, f"max difference {error:.2e}"


def check_thermal_fixed_point() -> CheckResult:
    params = SystemParams(delta=-1.0, g=0.0, kappa=0.2, gamma=0.1, nbar_a=0.0, nbar_b=2.0)
    ops = two_mode_operators(2, 20)
    H = build_hamiltonian(params, 2, 20)
    dissipators = master_dissipators(params, ops)
    fixed = product_state(thermal_state(0.0, 2), thermal_state(2.0, 20))
    residual = float(np.max(np.abs(lindblad_rhs(fixed, H, dissipators).toarray())))

    excited = product_state(thermal_state(1.0, 2), thermal_state(1.0, 20))
    final = rk4_evolve(excited, lambda t: H, dissipators, 0.0, 10.0 / params.gamma, 1e-2,
                       sample_every=10.0).final_state
    populations = np.real(np.diag(final.toarray()))
    target = np.real(np.diag(fixed.toarray()))
    drift = float(np.max(np.abs(populations - target)))
    return "thermal fixed point", residual < 1e-12 and drift < 1e-4, f"rhs {residual:.2e}, relaxation {drift:.2e}"


def check_sweep() -> CheckResult:
    result = sweep_map(-3.0, np.linspace(-0.99, -0.01, 50), np.linspace(0.01, 0.5, 50), 0.0, 10.0)
    monotone = True
    for row in range(result.shape[0]):
        values = result.efficiency[row][result.stability_mask[row]]
        if values.size > 1 and np.any(np.diff(values) <= 0):
            monotone = False
    expected_mask = result.delta_f[None, :] < -4.0 * result.g[:, None] ** 2
    mask_ok = bool(np.array_equal(result.stability_mask, expected_mask))
    corner = result.argmax_abs_work()
    corner_ok = corner == (0, result.shape[1] - 1)
    return ("sweep surfaces", monotone and mask_ok and corner_ok,
            f"monotone {monotone}, mask {mask_ok}, max |W| at {tuple(int(i) for i in corner)}")


def check_performance_bounds() -> CheckResult:
    bound_ok = True
    for nbar_b in (5.0, 10.0, 50.0):
        for delta_f in np.linspace(-0.49, -0.015, 20):
            perf = second_order_performance(float(delta_f), 0.05, nbar_b)
            bound_ok = bound_ok and perf.eta_P < perf.ca_bound
    delta_f, nbar_b = -0.4, 10.0
    g2 = np.linspace(0.0, 0.2, 20001)
    omega_bf = -delta_f - 2.0 * g2
    work = (omega_bf - 1.0) * ((1.0 - 2.0 * g2) * nbar_b - g2)
    scanned = g2[np.argmin(work)]
    optimum = second_order_performance(delta_f, 0.05, nbar_b).g2_opt
    optimum_ok = abs(scanned - optimum) <= g2[1] - g2[0]
    return "performance bounds", bound_ok and optimum_ok, f"g2_opt {optimum:.6f} vs scan {scanned:.6f}"


def check_squeezed_bath() -> CheckResult:
    worst_product = math.inf
    worst_margin = math.inf
    for delta, g in _stable_grid(20):
        bath = effective_bath_exact(bogoliubov_numeric(delta, g), 0.03, 1e-3, 0.0, 10.0)
        worst_product = min(worst_product, steady_variances(bath).product - 0.25)
        worst_margin = min(worst_margin, bath.squeezing_margin)
    round_trip = 0.0
    for N_th, r in ((0.0, 0.5), (1.0, 0.3), (4.0, 0.05)):
        N, M = squeezed_thermal_moments(N_th, r)
        decomposition = squeezing_decomposition(EffectiveBath(1.0, N, M))
        round_trip = max(round_trip, abs(decomposition.N_th - N_th), abs(decomposition.r - r))
    passed = worst_product >= -1e-10 and worst_margin >= -1e-10 and round_trip < 1e-10
    return "squeezed bath", passed, f"uncertainty margin {worst_product:.2e}, round trip {round_trip:.2e}"


def check_effective_steady_state() -> CheckResult:
    bath = EffectiveBath(Gamma_B=1.0, Nbar_B=2.0, Mbar_B=1.5)
    final = evolve_effective_B(bath, 0.5, thermal_state(0.0, 70), 20.0, 4e-3, sample_every=1.0).final_state
    measured = quadrature_variances(final, 20.0, 0.5)
    expected = steady_variances(bath)
    error = max(abs(measured.var_X - expected.var_X), abs(measured.var_Y - expected.var_Y))
    return "effective steady state", error < 1e-4, f"variance error {error:.2e}"


ALL_CHECKS: List[Callable[[], CheckResult]] = [
    check_spectrum,
    check_bogoliubov,
    check_truncated_gaps,
    check_integrator,
    check_thermal_fixed_point,
    check_sweep,
    check_performance_bounds,
    check_squeezed_bath,
    check_effective_steady_state,
]


def run_checks() -> List[CheckResult]:
    """Run every check; an exception inside a check counts as a failure."""
    results = []
    for check in ALL_CHECKS:
        try:
            results.append(check())
        except OptomechError as exc:
            logger.error("Check %s raised: %s", check.__name__, exc)
            results.append((check.__name__.replace("check_", "").replace("_", " "), False, str(exc)))
    return results
