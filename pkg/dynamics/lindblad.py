"""
OPTOTTO LINDBLAD GENERATOR

Responsibilities:
- Dissipator terms of the two-mode master equation
- dρ/dt = −i[H, ρ] + Σ r (LρL† − ½{L†L, ρ}) on dense ρ with sparse H, L

The commutator and anticommutator are folded into K = H − (i/2)Σ r L†L,
giving −i(Kρ − ρK†). Every term is evaluated linearly in ρ; ρ need not
be exactly Hermitian.
"""

from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np
import scipy.sparse as sp

from fock.operators import OperatorMatrix, TwoModeOperators
from fock.states import DensityMatrix
from model.params import SystemParams
from utils.errors import DimensionMismatchError, DomainError


@dataclass(frozen=True, eq=False)
class Dissipator:
    jump_op: OperatorMatrix
    rate: float
    label: str = ""

    def __post_init__(self):
        if not self.rate >= 0:
            raise DomainError(f"Dissipator rate must be non-negative (got {self.rate})")


def master_dissipators(params: SystemParams, ops: TwoModeOperators) -> List[Dissipator]:
    """κ(n̄_a+1)L[â] + κn̄_a L[â†] + γ(n̄_b+1)L[b̂] + γn̄_b L[b̂†], zero rates omitted."""
    terms = [
        Dissipator(ops.a, params.kappa * (params.nbar_a + 1.0), "cavity loss"),
        Dissipator(ops.a.dag(), params.kappa * params.nbar_a, "cavity gain"),
        Dissipator(ops.b, params.gamma * (params.nbar_b + 1.0), "mechanical loss"),
        Dissipator(ops.b.dag(), params.gamma * params.nbar_b, "mechanical gain"),
    ]
    return [term for term in terms if term.rate > 0]


class LindbladGenerator:
    """Pre-assembled jump data for repeated right-hand-side evaluations."""

    def __init__(self, dissipators: Sequence[Dissipator], dim: int):
        self.dim = dim
        self.dissipators = [d for d in dissipators if d.rate > 0]
        decay = sp.csr_matrix((dim, dim), dtype=np.complex128)
        self._jumps = []
        for term in self.dissipators:
            if term.jump_op.dim != dim:
                raise DimensionMismatchError(
                    f"Jump operator '{term.label}' has dimension {term.jump_op.dim}, expected {dim}"
                )
            jump = term.jump_op.data
            self._jumps.append((term.rate, jump))
            decay = decay + term.rate * (jump.conj().T @ jump)
        self._half_decay = (0.5 * decay).tocsr()

    def effective_hamiltonian(self, H: Union[OperatorMatrix, sp.csr_matrix]) -> sp.csr_matrix:
        data = H.data if isinstance(H, OperatorMatrix) else H
        if data.shape[0] != self.dim:
            raise DimensionMismatchError(f"Hamiltonian dimension {data.shape[0]} does not match {self.dim}")
        return (data - 1j * self._half_decay).tocsr()

    def apply(self, rho: np.ndarray, K: sp.csr_matrix) -> np.ndarray:
        """dρ/dt on dense ρ given K from effective_hamiltonian; linear in ρ, Hermitian or not."""
        rho_dag = rho.conj().T
        # ρK† = (Kρ†)†, LρL† = L(Lρ†)†
        out = -1j * (K @ rho - (K @ rho_dag).conj().T)
        for rate, jump in self._jumps:
            out += rate * (jump @ (jump @ rho_dag).conj().T)
        return out

    def __call__(self, rho: np.ndarray, H: Union[OperatorMatrix, sp.csr_matrix]) -> np.ndarray:
        return self.apply(rho, self.effective_hamiltonian(H))


def lindblad_rhs(rho: DensityMatrix, H: OperatorMatrix, dissipators: Sequence[Dissipator]) -> OperatorMatrix:
    """
    Master-equation right-hand side as a sparse operator.

    Raises:
        DimensionMismatchError: If ρ, H or any jump operator disagree in size.
    """
    if rho.dim != H.dim:
        raise DimensionMismatchError(f"State dimension {rho.dim} does not match Hamiltonian {H.dim}")
    generator = LindbladGenerator(dissipators, rho.dim)
    return OperatorMatrix(sp.csr_matrix(generator(rho.toarray(), H)))
