"""
Linearized optomechanical Hamiltonian H₀ = −δ n̂_a + n̂_b + g(â+â†)(b̂+b̂†).
"""

from dataclasses import dataclass
from typing import Optional, Union

from fock.operators import FockCutoff, OperatorMatrix, TwoModeOperators, two_mode_operators
from model.params import SystemParams


@dataclass(frozen=True, eq=False)
class HamiltonianTerms:
    """H₀ split as static + (−δ)·n̂_a so a detuning ramp reuses one sparse pattern."""

    ops: TwoModeOperators
    g: float
    static: OperatorMatrix
    interaction: OperatorMatrix

    def at(self, delta: float) -> OperatorMatrix:
        return self.static + (-delta) * self.ops.n_a

    def photon_part(self, delta: float) -> OperatorMatrix:
        return (-delta) * self.ops.n_a

    def derivative(self, delta_rate: float) -> OperatorMatrix:
        """∂_tH for a schedule slope dδ/dt."""
        return (-delta_rate) * self.ops.n_a


def hamiltonian_terms(
    g: float,
    cutoff_a: Union[int, FockCutoff],
    cutoff_b: Union[int, FockCutoff],
    ops: Optional[TwoModeOperators] = None,
) -> HamiltonianTerms:
    if ops is None:
        ops = two_mode_operators(cutoff_a, cutoff_b)
    interaction = g * ops.coupling
    return HamiltonianTerms(ops=ops, g=g, static=ops.n_b + interaction, interaction=interaction)


def build_hamiltonian(
    params: SystemParams,
    cutoff_a: Union[int, FockCutoff],
    cutoff_b: Union[int, FockCutoff],
) -> OperatorMatrix:
    """H₀ at params.delta on the optical ⊗ mechanical space, units of ħω_m."""
    return hamiltonian_terms(params.g, cutoff_a, cutoff_b).at(params.delta)
