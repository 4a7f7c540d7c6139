"""
Vectorized Liouvillian and matrix-exponential reference solution.

Row-major vectorization: vec(AρB) = (A ⊗ Bᵀ) vec(ρ), so vec(ρ) = rho.reshape(-1).
Only for small dimensions; the generator is dim² × dim².
"""

import logging
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm
from scipy.sparse.linalg import expm_multiply

from config.settings import EXPM_DENSE_MAX_DIM, EXPM_MAX_DIM
from dynamics.lindblad import Dissipator
from fock.operators import OperatorMatrix
from fock.states import DensityMatrix
from utils.errors import DimensionMismatchError, DomainError

logger = logging.getLogger(__name__)


def liouvillian_superoperator(H: OperatorMatrix, dissipators: Sequence[Dissipator]) -> sp.csr_matrix:
    """Sparse generator ℒ with d vec(ρ)/dt = ℒ vec(ρ)."""
    dim = H.dim
    eye = sp.identity(dim, dtype=np.complex128, format="csr")
    generator = -1j * (sp.kron(H.data, eye) - sp.kron(eye, H.data.T))
    for term in dissipators:
        if term.jump_op.dim != dim:
            raise DimensionMismatchError(f"Jump operator dimension {term.jump_op.dim} does not match {dim}")
        jump = term.jump_op.data
        decay = jump.conj().T @ jump
        generator = generator + term.rate * (
            sp.kron(jump, jump.conj()) - 0.5 * sp.kron(decay, eye) - 0.5 * sp.kron(eye, decay.T)
        )
    return sp.csr_matrix(generator)


def expm_oracle(
    rho0: DensityMatrix,
    H: OperatorMatrix,
    dissipators: Sequence[Dissipator],
    t: float,
) -> DensityMatrix:
    """
    ρ(t) = exp(ℒt) ρ0 for a time-independent generator.

    Dense scaling-and-squaring up to EXPM_DENSE_MAX_DIM, truncated-Taylor
    expm_multiply above it.

    Raises:
        DomainError: If dim exceeds EXPM_MAX_DIM or t < 0.
    """
    dim = rho0.dim
    if dim > EXPM_MAX_DIM:
        raise DomainError(f"Oracle limited to dim <= {EXPM_MAX_DIM}, got {dim}")
    if t < 0:
        raise DomainError(f"Oracle time must be non-negative (got {t})")
    if H.dim != dim:
        raise DimensionMismatchError(f"State dimension {dim} does not match Hamiltonian {H.dim}")
    vec = rho0.toarray().reshape(-1)
    if t == 0:
        return rho0
    generator = liouvillian_superoperator(H, dissipators)
    if dim <= EXPM_DENSE_MAX_DIM:
        evolved = expm(generator.toarray() * t) @ vec
    else:
        logger.debug("Using expm_multiply for oracle at dim=%d", dim)
        evolved = expm_multiply(generator * t, vec)
    rho = evolved.reshape(dim, dim)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix.from_array(rho, rho0.dims)
