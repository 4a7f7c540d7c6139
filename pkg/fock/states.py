"""
OPTOTTO FOCK STATES

Responsibilities:
- Density matrices with explicit mode dimensions
- Thermal states with truncation diagnostics
- Partial traces, expectation values, number distributions
"""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.sparse as sp

from config.settings import (
    DISTRIBUTION_FLOOR,
    DISTRIBUTION_MASS_TOLERANCE,
    HERMITIAN_TOLERANCE,
    PSD_TOLERANCE,
    TAIL_MASS_WARNING,
    TRACE_TOLERANCE,
)
from fock.operators import FockCutoff, ModeId, OperatorMatrix, as_cutoff
from utils.errors import DimensionMismatchError, InvalidStateError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace state on a product of truncated Fock spaces."""

    op: OperatorMatrix
    dims: Tuple[int, ...]
    tail_mass: float = 0.0

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if int(np.prod(dims)) != self.op.dim:
            raise DimensionMismatchError(f"Mode dimensions {dims} do not match operator dimension {self.op.dim}")
        defect = self.op.hermitian_defect()
        if defect >= HERMITIAN_TOLERANCE:
            raise InvalidStateError(f"Density matrix not Hermitian (defect {defect:.3e})")
        trace = self.op.trace()
        if abs(trace - 1.0) >= TRACE_TOLERANCE:
            raise InvalidStateError(f"Density matrix trace {trace.real:.12f} differs from 1")

    @classmethod
    def from_array(cls, rho: np.ndarray, dims: Tuple[int, ...], tail_mass: float = 0.0) -> "DensityMatrix":
        return cls(OperatorMatrix(sp.csr_matrix(rho)), dims, tail_mass)

    @property
    def dim(self) -> int:
        return self.op.dim

    def toarray(self) -> np.ndarray:
        return self.op.toarray()

    def purity(self) -> float:
        rho = self.op.data
        return float(np.real(rho.multiply(rho.conj()).sum()))

    def check_positive(self, tolerance: float = PSD_TOLERANCE) -> float:
        """
        Smallest eigenvalue of the state.

        Raises:
            InvalidStateError: If it falls below the tolerance.
        """
        smallest = float(np.linalg.eigvalsh(self.toarray())[0])
        if smallest < tolerance:
            raise InvalidStateError(f"Density matrix not positive semidefinite (min eigenvalue {smallest:.3e})")
        return smallest


@dataclass(frozen=True, eq=False)
class NumberDistribution:
    """Fock-basis populations p_n, n = 0..n_max."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if np.any(probs < DISTRIBUTION_FLOOR):
            raise InvalidStateError("Negative Fock population in distribution")
        total = probs.sum()
        if total < 1.0 - DISTRIBUTION_MASS_TOLERANCE or total > 1.0 + TRACE_TOLERANCE:
            raise InvalidStateError(f"Distribution mass {total:.9f} outside [1-1e-6, 1]")
        object.__setattr__(self, "probs", probs)

    @property
    def mean(self) -> float:
        return float(np.dot(np.arange(self.probs.size), self.probs))


# =======================
# CONSTRUCTION
# =======================

def thermal_state(nbar: float, cutoff: Union[int, FockCutoff]) -> DensityMatrix:
    """
    Thermal state p_n ∝ n̄ⁿ/(n̄+1)ⁿ⁺¹ truncated and renormalized.

    Args:
        nbar: Mean occupation of the untruncated state.
        cutoff: Highest retained Fock level.

    Returns:
        DensityMatrix whose tail_mass is the probability lost above n_max.

    Raises:
        ValueError: If nbar is negative.
    """
    if nbar < 0:
        raise ValueError(f"Mean occupation must be non-negative, got {nbar}")
    cutoff = as_cutoff(cutoff)
    ratio = nbar / (nbar + 1.0)
    probs = (1.0 - ratio) * ratio ** np.arange(cutoff.dim)
    tail = float(ratio ** cutoff.dim)
    if tail > TAIL_MASS_WARNING:
        logger.warning("Thermal state nbar=%.4g at n_max=%d loses tail mass %.3e", nbar, cutoff.n_max, tail)
    probs = probs / probs.sum()
    rho = OperatorMatrix(sp.diags(probs, format="csr"))
    return DensityMatrix(rho, (cutoff.dim,), tail_mass=tail)


def product_state(rho_a: DensityMatrix, rho_b: DensityMatrix) -> DensityMatrix:
    """ρ_a ⊗ ρ_b in the optical ⊗ mechanical ordering."""
    data = sp.kron(rho_a.op.data, rho_b.op.data, format="csr")
    return DensityMatrix(OperatorMatrix(data), rho_a.dims + rho_b.dims, rho_a.tail_mass + rho_b.tail_mass)


# =======================
# REDUCTION & MEASUREMENT
# =======================

def partial_trace(rho: DensityMatrix, keep: Union[ModeId, str]) -> DensityMatrix:
    """Reduced state of one mode of a two-mode density matrix."""
    keep = ModeId(keep)
    if len(rho.dims) != 2:
        raise DimensionMismatchError(f"Partial trace needs a two-mode state, got dims {rho.dims}")
    dim_a, dim_b = rho.dims
    tensor = rho.toarray().reshape(dim_a, dim_b, dim_a, dim_b)
    if keep is ModeId.OPTICAL:
        reduced = np.einsum("ijkj->ik", tensor)
        dims = (dim_a,)
    else:
        reduced = np.einsum("ijil->jl", tensor)
        dims = (dim_b,)
    return DensityMatrix.from_array(reduced, dims)


def expectation(rho: DensityMatrix, obs: OperatorMatrix) -> complex:
    """Tr[ρ·obs]; callers decide what to do with the imaginary part."""
    if rho.dim != obs.dim:
        raise DimensionMismatchError(f"State dimension {rho.dim} does not match observable {obs.dim}")
    return obs.trace_with(rho.toarray())


def number_distribution(rho: DensityMatrix) -> NumberDistribution:
    """Diagonal of a single-mode state."""
    if len(rho.dims) != 1:
        raise DimensionMismatchError(f"Number distribution needs a single-mode state, got dims {rho.dims}")
    return NumberDistribution(np.real(rho.op.data.diagonal()))
