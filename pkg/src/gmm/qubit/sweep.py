from __future__ import annotations

import logging
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from gmm.errors import OutOfRange
from gmm.mixing.measures import report
from gmm.mixing.oracle import grid_minimize_qubit
from gmm.qubit.bloch import BlochVector, density_from_bloch
from gmm.schema.constants import DEFAULT_TOLERANCES, ORACLE_DEFAULTS, Tolerances

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    "a",
    "lambda1",
    "lambda2",
    "purity",
    "linear_entropy",
    "von_neumann_entropy",
    "D_closed",
)
GRID_COLUMN = "D_grid"


def sweep_lengths(steps: int) -> np.ndarray:
    """a_k = k / (steps - 1), k = 0 .. steps - 1 (both endpoints exact)."""
    if isinstance(steps, bool) or not isinstance(steps, (int, np.integer)) or steps < 2:
        raise OutOfRange(f"steps must be an integer >= 2, got {steps!r}.")
    return np.array([k / (steps - 1) for k in range(steps)], dtype=float)


def bloch_sweep(
    steps: int,
    direction: Sequence[float] = (0.0, 0.0, 1.0),
    *,
    grid_check: bool = False,
    theta_steps: int = ORACLE_DEFAULTS.theta_steps,
    phi_steps: int = ORACLE_DEFAULTS.phi_steps,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> pd.DataFrame:
    """
    One row per Bloch length along a fixed direction, with the measures
    computed through the eigensolver pipeline (and, optionally, the qubit
    grid oracle).
    """
    rows: List[Dict[str, float]] = []

    for a_len in sweep_lengths(steps):
        rho = density_from_bloch(BlochVector.along(direction, a_len), tolerances)
        rep = report(rho, tolerances)

        row: Dict[str, float] = {
            "a": float(a_len),
            "lambda1": rep.eigenvalues[0],
            "lambda2": rep.eigenvalues[1],
            "purity": rep.purity,
            "linear_entropy": rep.linear_entropy,
            "von_neumann_entropy": rep.von_neumann_entropy,
            "D_closed": rep.geometric_measure,
        }

        if grid_check:
            row[GRID_COLUMN] = grid_minimize_qubit(rho, theta_steps, phi_steps, tolerances).d_estimate

        rows.append(row)

    logger.info("Bloch sweep: %d rows along %s (grid_check=%s)", len(rows), tuple(direction), grid_check)

    columns = list(SWEEP_COLUMNS) + ([GRID_COLUMN] if grid_check else [])
    return pd.DataFrame(rows, columns=columns)
