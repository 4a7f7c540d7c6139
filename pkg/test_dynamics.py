"""
Lindblad generator, RK4 integrator and the matrix-exponential reference
"""

import numpy as np
import pytest

from dynamics import (
    Dissipator,
    LindbladGenerator,
    Trajectory,
    expm_oracle,
    lindblad_rhs,
    liouvillian_superoperator,
    master_dissipators,
    rk4_evolve,
    rk4_integrate,
    spectral_radius,
)
from fock import DensityMatrix, expectation, product_state, thermal_state, two_mode_operators
from model import SystemParams, build_hamiltonian
from utils.errors import DomainError, IntegratorError

PARAMS = SystemParams(delta=-1.5, g=0.1, kappa=0.1, gamma=0.05, nbar_a=0.2, nbar_b=0.5)


@pytest.fixture(scope="module")
def small_model():
    ops = two_mode_operators(5, 5)
    H = build_hamiltonian(PARAMS, 5, 5)
    dissipators = master_dissipators(PARAMS, ops)
    rho0 = product_state(thermal_state(1.0, 5), thermal_state(0.0, 5))
    return ops, H, dissipators, rho0


def test_rk4_core_on_exponential_decay():
    y = rk4_integrate(lambda t, y: -y, np.array([1.0]), 0.0, 1.0, 0.01)
    assert y[0] == pytest.approx(np.exp(-1.0), abs=1e-9)


def test_rk4_core_hits_end_time_exactly():
    seen = []
    rk4_integrate(lambda t, y: np.zeros_like(y), np.zeros(1), 0.0, 1.0, 0.3, on_step=lambda s, t, y: seen.append(t))
    assert len(seen) == 4
    assert seen[-1] == pytest.approx(1.0, abs=1e-15)


def test_rk4_core_rejects_bad_steps():
    with pytest.raises(IntegratorError):
        rk4_integrate(lambda t, y: y, np.ones(1), 0.0, 1.0, 0.0)
    with pytest.raises(IntegratorError):
        rk4_integrate(lambda t, y: y, np.ones(1), 1.0, 0.0, 0.1)


def test_rk4_core_flags_blow_up():
    with pytest.raises(IntegratorError):
        rk4_integrate(lambda t, y: y * 1e200, np.ones(1), 0.0, 1.0, 0.5)


def test_dissipators_omit_zero_rates():
    params = SystemParams(delta=-1.0, g=0.0, kappa=0.2, gamma=0.1, nbar_a=0.0, nbar_b=2.0)
    labels = [term.label for term in master_dissipators(params, two_mode_operators(2, 2))]
    assert labels == ["cavity loss", "mechanical loss", "mechanical gain"]


def test_negative_rate_rejected():
    with pytest.raises(DomainError):
        Dissipator(two_mode_operators(1, 1).a, -0.1)


def test_thermal_product_is_stationary():
    params = SystemParams(delta=-1.0, g=0.0, kappa=0.2, gamma=0.1, nbar_a=0.0, nbar_b=2.0)
    ops = two_mode_operators(2, 20)
    fixed = product_state(thermal_state(0.0, 2), thermal_state(2.0, 20))
    rhs = lindblad_rhs(fixed, build_hamiltonian(params, 2, 20), master_dissipators(params, ops))
    assert np.max(np.abs(rhs.toarray())) < 1e-12


def test_generator_preserves_trace(small_model):
    _, H, dissipators, rho0 = small_model
    rhs = lindblad_rhs(rho0, H, dissipators)
    assert abs(rhs.trace()) < 1e-12
    assert rhs.hermitian_defect() < 1e-12


def test_liouvillian_annihilates_trace_functional(small_model):
    _, H, dissipators, _ = small_model
    generator = liouvillian_superoperator(H, dissipators)
    trace_row = np.eye(H.dim).reshape(-1)
    assert np.max(np.abs(generator.T @ trace_row)) < 1e-12


def test_rk4_matches_oracle(small_model):
    _, H, dissipators, rho0 = small_model
    trajectory = rk4_evolve(rho0, lambda t: H, dissipators, 0.0, 10.0, 1e-3, sample_every=1.0)
    reference = expm_oracle(rho0, H, dissipators, 10.0)
    assert np.max(np.abs(trajectory.final_state.toarray() - reference.toarray())) < 1e-8
    assert trajectory.max_trace_drift < 1e-10


def test_rk4_fourth_order_convergence(small_model):
    _, H, dissipators, rho0 = small_model
    reference = expm_oracle(rho0, H, dissipators, 2.0).toarray()
    errors = []
    for dt in (0.04, 0.02):
        final = rk4_evolve(rho0, lambda t: H, dissipators, 0.0, 2.0, dt, sample_every=2.0).final_state
        errors.append(np.max(np.abs(final.toarray() - reference)))
    assert np.log2(errors[0] / errors[1]) >= 3.7


def test_sampling_and_frame(small_model):
    ops, H, dissipators, rho0 = small_model
    trajectory = rk4_evolve(
        rho0, lambda t: H, dissipators, 0.0, 1.0, 0.01,
        observables={"n_a": ops.n_a, "n_b": ops.n_b}, sample_every=0.1, snapshot_times=(0.5,),
    )
    assert len(trajectory.times) == 11
    assert trajectory.series("n_a")[0] == pytest.approx(expectation(rho0, ops.n_a).real)
    assert list(trajectory.to_frame().columns) == ["t", "n_a", "n_b", "purity"]
    assert len(trajectory.snapshots) == 1
    assert trajectory.snapshots[0][0] == pytest.approx(0.5)


def test_step_size_warning_is_collected(small_model):
    _, H, dissipators, rho0 = small_model
    trajectory = rk4_evolve(rho0, lambda t: H, dissipators, 0.0, 0.5, 0.05)
    assert any("exceeds" in message for message in trajectory.diagnostics)


def test_trajectory_times_must_advance():
    trajectory = Trajectory()
    trajectory.record(1.0, {"x": 0.0})
    with pytest.raises(IntegratorError):
        trajectory.record(1.0, {"x": 1.0})


def test_oracle_limits(small_model):
    _, H, dissipators, rho0 = small_model
    assert expm_oracle(rho0, H, dissipators, 0.0) is rho0
    with pytest.raises(DomainError):
        expm_oracle(rho0, H, dissipators, -1.0)


def test_generator_is_linear_in_rho(small_model):
    _, H, dissipators, _ = small_model
    rng = np.random.default_rng(7)
    X = rng.normal(size=(H.dim, H.dim)) + 1j * rng.normal(size=(H.dim, H.dim))
    generator = LindbladGenerator(dissipators, H.dim)
    direct = generator.apply(X, generator.effective_hamiltonian(H))
    vectorized = (liouvillian_superoperator(H, dissipators) @ X.reshape(-1)).reshape(H.dim, H.dim)
    assert np.max(np.abs(direct - vectorized)) < 1e-10


def test_anti_hermitian_part_decays(small_model):
    _, H, dissipators, rho0 = small_model
    rng = np.random.default_rng(11)
    Y = rng.normal(size=(H.dim, H.dim))
    Y = Y + Y.T
    Y = Y - np.trace(Y) / H.dim * np.eye(H.dim)
    start = rho0.toarray() + 1e-9j * Y
    generator = LindbladGenerator(dissipators, H.dim)
    K = generator.effective_hamiltonian(H)
    final = rk4_integrate(lambda t, rho: generator.apply(rho, K), start, 0.0, 300.0, 0.02)

    def defect(rho):
        return np.max(np.abs(rho - rho.conj().T))

    assert defect(final) <= defect(start)
    assert abs(np.trace(final) - 1.0) < 1e-10


def test_long_run_stays_hermitian_and_normalized(small_model):
    _, H, dissipators, rho0 = small_model
    defects = []
    trajectory = rk4_evolve(
        rho0, lambda t: H, dissipators, 0.0, 400.0, 0.02, sample_every=50.0,
        on_step=lambda t, rho: defects.append(np.max(np.abs(rho - rho.conj().T))),
    )
    assert trajectory.max_trace_drift < 1e-10
    assert max(defects) < 1e-12


def test_uncoupled_modes_relax_to_their_baths():
    params = SystemParams(delta=-1.0, g=0.0, kappa=0.2, gamma=0.1, nbar_a=0.0, nbar_b=2.0)
    ops = two_mode_operators(2, 20)
    excited = product_state(thermal_state(1.0, 2), thermal_state(1.0, 20))
    H = build_hamiltonian(params, 2, 20)
    final = rk4_evolve(
        excited, lambda t: H, master_dissipators(params, ops), 0.0, 10.0 / params.gamma, 0.02, sample_every=10.0
    ).final_state
    target = product_state(thermal_state(0.0, 2), thermal_state(2.0, 20))
    assert np.max(np.abs(np.diag(final.toarray()) - np.diag(target.toarray()))) < 1e-4


def test_fock_two_decays_exponentially():
    params = SystemParams(delta=-1.0, g=0.0, kappa=0.5, gamma=0.0, nbar_a=0.0, nbar_b=0.0)
    ops = two_mode_operators(3, 1)
    start = DensityMatrix.from_array(np.kron(np.diag([0.0, 0.0, 1.0, 0.0]), np.diag([1.0, 0.0])), (4, 2))
    trajectory = rk4_evolve(
        start, lambda t: build_hamiltonian(params, 3, 1), master_dissipators(params, ops), 0.0, 4.0, 0.01,
        observables={"n_a": ops.n_a}, sample_every=0.5,
    )
    times = np.asarray(trajectory.times)
    assert np.allclose(trajectory.series("n_a"), 2.0 * np.exp(-params.kappa * times), atol=1e-8)


def test_supplied_frequency_scale_silences_warning(small_model):
    _, H, dissipators, rho0 = small_model
    trajectory = rk4_evolve(rho0, lambda t: H, dissipators, 0.0, 0.5, 0.05, omega_max=1.5)
    assert not any("exceeds" in message for message in trajectory.diagnostics)


def test_spectral_radius_sparse_path_matches_dense(small_model, monkeypatch):
    _, H, _, _ = small_model
    dense = spectral_radius(H)
    assert dense == pytest.approx(np.max(np.abs(np.linalg.eigvalsh(H.toarray()))))
    monkeypatch.setattr("dynamics.integrator.SPECTRUM_DENSE_MAX_DIM", 1)
    assert spectral_radius(H) == pytest.approx(dense, rel=1e-8)
