"""
OPTOTTO PARAMETER SWEEPS

Efficiency and |W_B,tot| maps over (g, δ_f) with unstable cells masked.
Rows are g values, columns δ_f values.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from normal_modes.spectrum import stability_check
from otto.analytic import work_efficiency_analytic
from utils.progress import ProgressReporter

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SweepMap:
    delta_i: float
    delta_f: np.ndarray
    g: np.ndarray
    efficiency: np.ndarray
    abs_work: np.ndarray
    stability_mask: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.efficiency.shape

    def argmax_abs_work(self) -> Tuple[int, int]:
        """(row, column) of the largest |W| among stable cells."""
        return np.unravel_index(np.nanargmax(self.abs_work), self.shape)

    def to_frame(self) -> pd.DataFrame:
        g_grid, delta_grid = np.meshgrid(self.g, self.delta_f, indexing="ij")
        return pd.DataFrame({
            "g": g_grid.ravel(),
            "delta_f": delta_grid.ravel(),
            "stable": self.stability_mask.ravel(),
            "eta_B": self.efficiency.ravel(),
            "abs_W_B": self.abs_work.ravel(),
        })


def _sweep_row(delta_i: float, g: float, delta_f: np.ndarray, nbar_a: float, nbar_b: float):
    efficiency = np.full(delta_f.size, np.nan)
    abs_work = np.full(delta_f.size, np.nan)
    stable = np.zeros(delta_f.size, dtype=bool)
    if not stability_check(delta_i, g):
        return efficiency, abs_work, stable
    for column, value in enumerate(delta_f):
        if not stability_check(value, g):
            continue
        result = work_efficiency_analytic(delta_i, value, g, nbar_a, nbar_b)
        efficiency[column] = result.eta_B
        abs_work[column] = abs(result.W_tot_B)
        stable[column] = True
    return efficiency, abs_work, stable


def sweep_map(
    delta_i: float,
    delta_f_values: Sequence[float],
    g_values: Sequence[float],
    nbar_a: float,
    nbar_b: float,
    threads: Optional[int] = None,
    progress: Optional[ProgressReporter] = None,
) -> SweepMap:
    """
    η_B and |W_B,tot| on the (g, δ_f) grid.

    Rows are evaluated in parallel and assembled in grid order, so the result
    does not depend on the thread count.
    """
    delta_f = np.asarray(delta_f_values, dtype=float)
    g = np.asarray(g_values, dtype=float)
    efficiency = np.full((g.size, delta_f.size), np.nan)
    abs_work = np.full((g.size, delta_f.size), np.nan)
    mask = np.zeros((g.size, delta_f.size), dtype=bool)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        rows = [pool.submit(_sweep_row, delta_i, value, delta_f, nbar_a, nbar_b) for value in g]
        for index, future in enumerate(rows):
            efficiency[index], abs_work[index], mask[index] = future.result()
            if progress is not None and (index + 1) % max(1, g.size // 10) == 0:
                progress.info(f"Sweep rows {index + 1}/{g.size} done")

    logger.debug("Sweep finished: %d of %d cells stable", int(mask.sum()), mask.size)
    return SweepMap(delta_i, delta_f, g, efficiency, abs_work, mask)
