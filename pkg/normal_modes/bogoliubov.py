"""
OPTOTTO BOGOLIUBOV TRANSFORMATION

Responsibilities:
- Numerical symplectic diagonalization of the 4×4 dynamical matrix
- Gauge fixing and branch labelling by eigenvector continuity
- Polariton operators and exact thermal populations

Conventions: α = (â, b̂, â†, b̂†) = T·(Â, B̂, Â†, B̂†) with
T = [[U, V*], [V, U*]]; U[j, k] couples bare mode j to polariton k.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import cholesky, eigh, solve_triangular

from config.settings import CONSTRAINT_TOLERANCE, MIN_COUPLING_THROUGH_CROSSING
from fock.operators import OperatorMatrix, TwoModeOperators, two_mode_operators
from normal_modes.spectrum import PolaritonSpectrum, stability_check
from utils.errors import ConstraintError, DomainError

logger = logging.getLogger(__name__)

# Commutator metric diag(1, 1, −1, −1)
ETA = np.diag([1.0, 1.0, -1.0, -1.0])
GAUGE_FLOOR = 1e-12


class PolaritonBranch(str, Enum):
    A = "A"
    B = "B"

    @property
    def column(self) -> int:
        return 0 if self is PolaritonBranch.A else 1


@dataclass(frozen=True, eq=False)
class BogoliubovMatrices:
    """U, V blocks of the transformation at one (δ, g) point."""

    U: np.ndarray
    V: np.ndarray
    spectrum: PolaritonSpectrum
    delta: float
    g: float

    def inverse(self) -> np.ndarray:
        """T, mapping polariton operators to bare ones."""
        return np.block([[self.U, self.V.conj()], [self.V, self.U.conj()]])

    def forward(self) -> np.ndarray:
        """ηT†η = [[U†, −V†], [−Vᵀ, Uᵀ]], mapping bare operators to polaritons."""
        return ETA @ self.inverse().conj().T @ ETA

    def constraint_residuals(self) -> Tuple[float, float]:
        """max|U†U − V†V − I| and max|UᵀV − VᵀU|."""
        U, V = self.U, self.V
        first = np.max(np.abs(U.conj().T @ U - V.conj().T @ V - np.eye(2)))
        second = np.max(np.abs(U.T @ V - V.T @ U))
        return float(first), float(second)

    @property
    def ground_offset(self) -> float:
        """Constant in H₀ = ω_A N̂_A + ω_B N̂_B + const for the untruncated system."""
        return 0.5 * (self.spectrum.omega_A + self.spectrum.omega_B + self.delta - 1.0)

    def frequency(self, branch: Union[PolaritonBranch, str]) -> float:
        branch = PolaritonBranch(branch)
        return self.spectrum.omega_A if branch is PolaritonBranch.A else self.spectrum.omega_B

    def mode_vector(self, branch: Union[PolaritonBranch, str]) -> np.ndarray:
        """Column of T for one branch, (U[:, k], V[:, k])."""
        column = PolaritonBranch(branch).column
        return np.concatenate([self.U[:, column], self.V[:, column]])


# =======================
# NUMERICAL DIAGONALIZATION
# =======================

def dynamical_matrix(delta: float, g: float) -> np.ndarray:
    """M with H₀ = ½α†Mα − ½Tr A, blocks A = [[−δ, g], [g, 1]], B = [[0, g], [g, 0]]."""
    A = np.array([[-delta, g], [g, 1.0]], dtype=complex)
    B = np.array([[0.0, g], [g, 0.0]], dtype=complex)
    return np.block([[A, B], [B.conj(), A.conj()]])


def _colpa(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Positive frequencies and the two positive-norm columns of T for M = K†K."""
    try:
        K = cholesky(M, lower=False)
    except LinAlgError as exc:
        raise DomainError("Dynamical matrix is not positive definite") from exc
    L = K @ ETA @ K.conj().T
    L = 0.5 * (L + L.conj().T)
    energies, vectors = eigh(L)
    # ascending (−ω_A, −ω_B, ω_B, ω_A) → (ω_A, ω_B)
    order = [3, 2]
    omegas = energies[order]
    columns = solve_triangular(K, vectors[:, order], lower=False) * np.sqrt(omegas)
    return omegas, columns


def _fix_gauge(columns: np.ndarray) -> np.ndarray:
    fixed = columns.copy()
    for k in range(2):
        pivot = fixed[k, k]
        if abs(pivot) < GAUGE_FLOOR:
            pivot = fixed[np.argmax(np.abs(fixed[:2, k])), k]
        fixed[:, k] *= np.conj(pivot) / abs(pivot)
    return fixed


def _symplectic_overlap(reference: "BogoliubovMatrices", columns: np.ndarray) -> np.ndarray:
    ref = np.vstack([reference.U, reference.V])
    return np.abs(ref.conj().T @ ETA @ columns)


def bogoliubov_numeric(
    delta: float,
    g: float,
    reference: Optional[BogoliubovMatrices] = None,
) -> BogoliubovMatrices:
    """
    Diagonalize H₀ at (δ, g) by the Cholesky symplectic method.

    Args:
        delta: Effective detuning, negative.
        g: Linearized coupling.
        reference: Neighbouring solution; when given, labels follow the
            larger symplectic overlap instead of frequency ordering.

    Returns:
        Gauge-fixed BogoliubovMatrices.

    Raises:
        DomainError: Unstable parameters.
        ConstraintError: If the symplectic constraints fail.
    """
    if not stability_check(delta, g):
        raise DomainError(f"Unstable parameters: delta={delta}, g={g}")
    omegas, columns = _colpa(dynamical_matrix(delta, g))

    if reference is not None:
        overlap = _symplectic_overlap(reference, columns)
        if overlap[0, 1] + overlap[1, 0] > overlap[0, 0] + overlap[1, 1]:
            omegas = omegas[::-1]
            columns = columns[:, ::-1]

    columns = _fix_gauge(columns)
    bog = BogoliubovMatrices(
        U=columns[:2, :],
        V=columns[2:, :],
        spectrum=PolaritonSpectrum(float(omegas[0]), float(omegas[1])),
        delta=delta,
        g=g,
    )
    residual = max(bog.constraint_residuals())
    if residual > CONSTRAINT_TOLERANCE:
        raise ConstraintError(f"Bogoliubov constraint residual {residual:.3e} at delta={delta}, g={g}")
    return bog


def track_branches(deltas: Sequence[float], g: float) -> List[BogoliubovMatrices]:
    """Solve along a δ path, carrying labels from the first point by overlap."""
    deltas = list(deltas)
    if not deltas:
        return []
    if g < MIN_COUPLING_THROUGH_CROSSING and min(deltas) <= -1.0 <= max(deltas):
        raise DomainError(f"Branch labels are ill-defined through delta=-1 for g={g}")
    tracked = [bogoliubov_numeric(deltas[0], g)]
    for delta in deltas[1:]:
        tracked.append(bogoliubov_numeric(delta, g, reference=tracked[-1]))
    logger.debug("Tracked %d points at g=%.4g", len(tracked), g)
    return tracked


# =======================
# POLARITON OPERATORS
# =======================

def _resolve_ops(cutoffs: Union[TwoModeOperators, Tuple[int, int]]) -> TwoModeOperators:
    if isinstance(cutoffs, TwoModeOperators):
        return cutoffs
    cutoff_a, cutoff_b = cutoffs
    return two_mode_operators(cutoff_a, cutoff_b)


def polariton_annihilation_op(
    bog: BogoliubovMatrices,
    cutoffs: Union[TwoModeOperators, Tuple[int, int]],
    branch: Union[PolaritonBranch, str] = PolaritonBranch.B,
) -> OperatorMatrix:
    """Σ_j U*_jk â_j − V*_jk â_j† on the truncated product space."""
    ops = _resolve_ops(cutoffs)
    k = PolaritonBranch(branch).column
    result = None
    for j, bare in enumerate((ops.a, ops.b)):
        term = np.conj(bog.U[j, k]) * bare - np.conj(bog.V[j, k]) * bare.dag()
        result = term if result is None else result + term
    return result


def polariton_number_operator(
    bog: BogoliubovMatrices,
    cutoffs: Union[TwoModeOperators, Tuple[int, int]],
    branch: Union[PolaritonBranch, str] = PolaritonBranch.B,
) -> OperatorMatrix:
    """N̂_k = k̂†k̂ assembled from truncated bare operators."""
    lowering = polariton_annihilation_op(bog, cutoffs, branch)
    return lowering.dag() @ lowering


def thermal_polariton_populations(
    bog: BogoliubovMatrices, nbar_a: float, nbar_b: float
) -> Tuple[float, float]:
    """
    ⟨N̂_A⟩, ⟨N̂_B⟩ on the untruncated product of bare thermal states.

    ⟨N̂_k⟩ = Σ_j |U_jk|² n̄_j + |V_jk|² (n̄_j + 1).
    """
    nbar = np.array([nbar_a, nbar_b], dtype=float)
    weights = np.abs(bog.U) ** 2 * nbar[:, None] + np.abs(bog.V) ** 2 * (nbar[:, None] + 1.0)
    populations = weights.sum(axis=0)
    return float(populations[0]), float(populations[1])
