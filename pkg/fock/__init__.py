"""
Fock package for OPTOTTO application.
"""

from .operators import (
    FockCutoff,
    ModeId,
    OperatorMatrix,
    TwoModeOperators,
    annihilation_op,
    as_cutoff,
    creation_op,
    identity_op,
    number_op,
    tensor_product,
    two_mode_operators,
)
from .states import (
    DensityMatrix,
    NumberDistribution,
    expectation,
    number_distribution,
    partial_trace,
    product_state,
    thermal_state,
)
from .thermal import occupation_temperature, thermal_occupation

__all__ = [
    "FockCutoff",
    "ModeId",
    "OperatorMatrix",
    "TwoModeOperators",
    "annihilation_op",
    "as_cutoff",
    "creation_op",
    "identity_op",
    "number_op",
    "tensor_product",
    "two_mode_operators",
    "DensityMatrix",
    "NumberDistribution",
    "expectation",
    "number_distribution",
    "partial_trace",
    "product_state",
    "thermal_state",
    "occupation_temperature",
    "thermal_occupation",
]
