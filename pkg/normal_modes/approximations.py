"""
Second-order (in g) polariton populations for thermal bare modes.
"""

import logging
from enum import Enum
from typing import Union

from config.settings import APPROX_VALIDITY_COUPLING
from utils.errors import DomainError

logger = logging.getLogger(__name__)


class BranchSide(str, Enum):
    """Which bare mode the lower polariton B resembles."""

    PHONON_LIKE = "phonon-like"
    PHOTON_LIKE = "photon-like"


def approx_population_B(
    delta: float,
    g: float,
    nbar_a: float,
    nbar_b: float,
    side: Union[BranchSide, str],
) -> float:
    """
    ⟨N̂_B⟩ to second order in g.

    Phonon-like (δ < −1): [1 + 4δg²/(δ²−1)²]n̄_b + (g/(1+δ))²n̄_a + (g/(1−δ))²(n̄_a+1).
    Photon-like (−1 < δ < 0): [1 + 4δg²/(δ²−1)²]n̄_a + 2(1+δ²)g²/(δ²−1)²·n̄_b + (g/(1−δ))².

    Raises:
        DomainError: At the δ = ±1 resonance.
    """
    side = BranchSide(side)
    if abs(abs(delta) - 1.0) == 0.0:
        raise DomainError("Second-order populations diverge at |delta| = 1")
    if g > APPROX_VALIDITY_COUPLING:
        logger.warning("Second-order populations used outside small coupling (g=%.3g)", g)

    detuned = (delta * delta - 1.0) ** 2
    dressing = 1.0 + 4.0 * delta * g * g / detuned
    vacuum = (g / (1.0 - delta)) ** 2
    if side is BranchSide.PHONON_LIKE:
        return dressing * nbar_b + (g / (1.0 + delta)) ** 2 * nbar_a + vacuum * (nbar_a + 1.0)
    return dressing * nbar_a + 2.0 * (1.0 + delta * delta) * g * g / detuned * nbar_b + vacuum
