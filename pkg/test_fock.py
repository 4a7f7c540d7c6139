"""
Fock-space operators and states
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fock import (
    DensityMatrix,
    FockCutoff,
    ModeId,
    NumberDistribution,
    annihilation_op,
    creation_op,
    expectation,
    number_distribution,
    number_op,
    occupation_temperature,
    partial_trace,
    product_state,
    thermal_occupation,
    identity_op,
    tensor_product,
    thermal_state,
    two_mode_operators,
)
from utils.errors import DimensionMismatchError, DomainError, InvalidStateError


def test_cutoff_rejects_zero():
    with pytest.raises(ValueError):
        FockCutoff(0)


def test_commutator_is_identity_below_cutoff():
    a = annihilation_op(6)
    comm = (a @ creation_op(6) - creation_op(6) @ a).toarray()
    # the top level is distorted by truncation
    assert np.allclose(np.diag(comm)[:-1], 1.0)
    assert math.isclose(comm[-1, -1].real, -6.0)


def test_number_operator_matches_ladder_product():
    a = annihilation_op(8)
    assert np.allclose((a.dag() @ a).toarray(), number_op(8).toarray())


def test_two_mode_ordering_is_optical_first():
    ops = two_mode_operators(2, 3)
    assert ops.dims == (3, 4)
    assert ops.dim == 12
    # |n_a=1, n_b=0> sits at index 1 * dim_b + 0
    assert ops.n_a.toarray()[4, 4] == 1.0
    assert ops.n_b.toarray()[1, 1] == 1.0


def test_embedded_operators_are_kronecker_products():
    ops = two_mode_operators(2, 3)
    assert np.allclose(ops.a.toarray(), tensor_product(annihilation_op(2), identity_op(3)).toarray())
    assert np.allclose(ops.b.toarray(), tensor_product(identity_op(2), annihilation_op(3)).toarray())


def test_mismatched_dimensions_raise():
    with pytest.raises(DimensionMismatchError):
        number_op(3) + number_op(4)


@pytest.mark.parametrize("nbar", [0.0, 0.3, 1.0, 2.0, 5.0])
def test_thermal_mean_at_large_cutoff(nbar):
    rho = thermal_state(nbar, 120)
    assert number_distribution(rho).mean == pytest.approx(nbar, abs=1e-6)


def test_thermal_tail_mass_reported():
    rho = thermal_state(4.0, 5)
    assert rho.tail_mass == pytest.approx(0.8 ** 6)
    assert rho.op.trace().real == pytest.approx(1.0)


def test_thermal_rejects_negative_occupation():
    with pytest.raises(ValueError):
        thermal_state(-0.1, 5)


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(InvalidStateError):
        DensityMatrix.from_array(np.diag([0.5, 0.4]), (2,))


def test_density_matrix_rejects_non_hermitian():
    rho = np.array([[0.5, 0.1], [0.0, 0.5]])
    with pytest.raises(InvalidStateError):
        DensityMatrix.from_array(rho, (2,))


def test_positivity_check_on_demand():
    assert thermal_state(1.0, 10).check_positive() > 0.0
    negative = DensityMatrix.from_array(np.diag([1.2, -0.2]), (2,))
    with pytest.raises(InvalidStateError):
        negative.check_positive()


def test_partial_trace_recovers_factors():
    rho_a = thermal_state(0.5, 4)
    rho_b = thermal_state(1.5, 6)
    joint = product_state(rho_a, rho_b)
    assert np.allclose(partial_trace(joint, ModeId.OPTICAL).toarray(), rho_a.toarray())
    assert np.allclose(partial_trace(joint, "mechanical").toarray(), rho_b.toarray())


def test_expectation_on_product_state():
    ops = two_mode_operators(30, 30)
    rho = product_state(thermal_state(0.5, 30), thermal_state(1.0, 30))
    assert expectation(rho, ops.n_a).real == pytest.approx(0.5, abs=1e-4)
    assert expectation(rho, ops.n_b).real == pytest.approx(1.0, abs=1e-4)


def _random_state(dims, seed):
    rng = np.random.default_rng(seed)
    dim = int(np.prod(dims))
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = A @ A.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix.from_array(rho / np.trace(rho).real, dims)


def test_expectation_of_adjoint_is_conjugate():
    ops = two_mode_operators(3, 2)
    rho = _random_state((4, 3), seed=3)
    assert expectation(rho, ops.a.dag()) == pytest.approx(np.conj(expectation(rho, ops.a)), abs=1e-12)
    assert expectation(rho, ops.a @ ops.b.dag()) == pytest.approx(
        np.conj(expectation(rho, ops.b @ ops.a.dag())), abs=1e-12
    )


def test_partial_trace_of_correlated_state():
    ops = two_mode_operators(3, 2)
    rho = _random_state((4, 3), seed=5)
    reduced_a = partial_trace(rho, ModeId.OPTICAL)
    reduced_b = partial_trace(rho, ModeId.MECHANICAL)
    assert reduced_a.toarray().trace().real == pytest.approx(1.0, abs=1e-12)
    assert reduced_b.toarray().trace().real == pytest.approx(1.0, abs=1e-12)
    assert expectation(reduced_a, number_op(3)).real == pytest.approx(expectation(rho, ops.n_a).real, abs=1e-12)
    assert expectation(reduced_b, number_op(2)).real == pytest.approx(expectation(rho, ops.n_b).real, abs=1e-12)


def test_purity_of_vacuum_and_thermal():
    assert thermal_state(0.0, 5).purity() == pytest.approx(1.0)
    nbar = 1.0
    assert thermal_state(nbar, 80).purity() == pytest.approx(1.0 / (2 * nbar + 1), rel=1e-6)


def test_number_distribution_needs_single_mode():
    joint = product_state(thermal_state(0.1, 2), thermal_state(0.1, 2))
    with pytest.raises(DimensionMismatchError):
        number_distribution(joint)


def test_distribution_rejects_negative_population():
    with pytest.raises(InvalidStateError):
        NumberDistribution(np.array([1.1, -0.1]))


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.01, max_value=50.0))
def test_occupation_temperature_inverts_occupation(nbar):
    omega = 2 * math.pi * 1e6
    temperature = occupation_temperature(nbar, omega)
    assert thermal_occupation(temperature, omega) == pytest.approx(nbar, rel=1e-9)


def test_zero_temperature_is_empty():
    assert thermal_occupation(0.0, 1e6) == 0.0
    assert occupation_temperature(0.0, 1e6) == 0.0


def test_occupation_domain():
    with pytest.raises(DomainError):
        thermal_occupation(-1.0, 1e6)
    with pytest.raises(DomainError):
        thermal_occupation(1.0, 0.0)
