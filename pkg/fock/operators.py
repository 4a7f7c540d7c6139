"""
OPTOTTO FOCK OPERATORS

Responsibilities:
- Truncated Fock cutoffs and sparse operator values
- Bosonic ladder, number and identity operators
- Kronecker embedding into the optical ⊗ mechanical product space
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Tuple, Union

import numpy as np
import scipy.sparse as sp

from config.settings import DROP_TOLERANCE
from utils.errors import DimensionMismatchError


class ModeId(str, Enum):
    """Mode labels; the product space is always ordered optical ⊗ mechanical."""

    OPTICAL = "optical"
    MECHANICAL = "mechanical"


@dataclass(frozen=True)
class FockCutoff:
    """Highest retained Fock level; the local dimension is n_max + 1."""

    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"Fock cutoff must be an integer >= 1, got {self.n_max}")
        object.__setattr__(self, "n_max", int(self.n_max))

    @property
    def dim(self) -> int:
        return self.n_max + 1


def as_cutoff(value: Union[int, FockCutoff]) -> FockCutoff:
    """Accept either an integer n_max or a FockCutoff."""
    if isinstance(value, FockCutoff):
        return value
    return FockCutoff(value)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """
    Sparse complex square matrix.

    The CSR payload is copied and pruned on construction and must be treated as
    read-only afterwards; all arithmetic returns new values.
    """

    data: sp.csr_matrix

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        matrix = sp.csr_matrix(self.data, dtype=np.complex128, copy=True)
        if matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
            raise DimensionMismatchError(f"Operator must be square and non-empty, got {matrix.shape}")
        matrix.data[np.abs(matrix.data) < DROP_TOLERANCE] = 0.0
        matrix.eliminate_zeros()
        matrix.sort_indices()
        object.__setattr__(self, "data", matrix)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def nnz(self) -> int:
        return self.data.nnz

    @cached_property
    def _coo(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        coo = self.data.tocoo()
        return coo.row, coo.col, coo.data

    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.data.conj().T)

    def toarray(self) -> np.ndarray:
        return self.data.toarray()

    def trace(self) -> complex:
        return complex(self.data.diagonal().sum())

    def hermitian_defect(self) -> float:
        diff = self.data - self.data.conj().T
        return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0

    def trace_with(self, rho: np.ndarray) -> complex:
        """Tr[rho · self] for a dense rho, touching only stored entries."""
        rows, cols, vals = self._coo
        return complex(np.dot(vals, rho[cols, rows]))

    def _check(self, other: "OperatorMatrix"):
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.data + other.data)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.data - other.data)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return OperatorMatrix(self.data @ other.data)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        return OperatorMatrix(self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(-self.data)


# =======================
# SINGLE-MODE OPERATORS
# =======================

def annihilation_op(cutoff: Union[int, FockCutoff]) -> OperatorMatrix:
    """Ladder operator with √n on the superdiagonal."""
    cutoff = as_cutoff(cutoff)
    levels = np.sqrt(np.arange(1, cutoff.dim, dtype=float))
    return OperatorMatrix(sp.diags(levels, offsets=1, shape=(cutoff.dim, cutoff.dim), format="csr"))


def creation_op(cutoff: Union[int, FockCutoff]) -> OperatorMatrix:
    return annihilation_op(cutoff).dag()


def number_op(cutoff: Union[int, FockCutoff]) -> OperatorMatrix:
    cutoff = as_cutoff(cutoff)
    return OperatorMatrix(sp.diags(np.arange(cutoff.dim, dtype=float), format="csr"))


def identity_op(dim: int) -> OperatorMatrix:
    return OperatorMatrix(sp.identity(dim, dtype=np.complex128, format="csr"))


def tensor_product(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Kronecker product, first factor optical, second mechanical."""
    return OperatorMatrix(sp.kron(a.data, b.data, format="csr"))


# =======================
# TWO-MODE BUNDLE
# =======================

@dataclass(frozen=True, eq=False)
class TwoModeOperators:
    """Bare-mode operators embedded in the optical ⊗ mechanical space."""

    cutoff_a: FockCutoff
    cutoff_b: FockCutoff
    a: OperatorMatrix
    b: OperatorMatrix
    n_a: OperatorMatrix
    n_b: OperatorMatrix
    coupling: OperatorMatrix
    identity: OperatorMatrix

    @property
    def dims(self) -> Tuple[int, int]:
        return (self.cutoff_a.dim, self.cutoff_b.dim)

    @property
    def dim(self) -> int:
        return self.cutoff_a.dim * self.cutoff_b.dim


def two_mode_operators(cutoff_a: Union[int, FockCutoff], cutoff_b: Union[int, FockCutoff]) -> TwoModeOperators:
    """Build â, b̂, n̂_a, n̂_b and (â+â†)(b̂+b̂†) on the product space."""
    cutoff_a = as_cutoff(cutoff_a)
    cutoff_b = as_cutoff(cutoff_b)
    id_a = identity_op(cutoff_a.dim)
    id_b = identity_op(cutoff_b.dim)
    a_single = annihilation_op(cutoff_a)
    b_single = annihilation_op(cutoff_b)
    x_a = a_single + a_single.dag()
    x_b = b_single + b_single.dag()
    return TwoModeOperators(
        cutoff_a=cutoff_a,
        cutoff_b=cutoff_b,
        a=tensor_product(a_single, id_b),
        b=tensor_product(id_a, b_single),
        n_a=tensor_product(number_op(cutoff_a), id_b),
        n_b=tensor_product(id_a, number_op(cutoff_b)),
        coupling=tensor_product(x_a, x_b),
        identity=identity_op(cutoff_a.dim * cutoff_b.dim),
    )
