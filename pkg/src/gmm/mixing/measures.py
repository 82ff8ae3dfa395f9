from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np

from gmm.errors import EmptySpectrum, InternalDisagreement, NegativeEigenvalue, OutOfRange
from gmm.schema.constants import (
    D_FORM_AGREEMENT_TOL,
    DEFAULT_TOLERANCES,
    ENTROPY_ZERO_CUTOFF,
    PURITY_AGREEMENT_TOL,
    Tolerances,
)
from gmm.state.densmat import DensityMatrix, purity
from gmm.state.eigensolve import Spectrum

logger = logging.getLogger(__name__)

SpectrumLike = Union[Spectrum, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class MixednessReport:
    dim: int
    purity: float
    von_neumann_entropy: float      # nats
    linear_entropy: float
    geometric_measure: float
    lambda_max: float
    eigenvalues: Tuple[float, ...]  # descending

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["eigenvalues"] = list(self.eigenvalues)
        return out


def _descending(s: SpectrumLike) -> np.ndarray:
    if isinstance(s, Spectrum):
        return np.asarray(s.eigenvalues, dtype=float)

    values = np.asarray(s, dtype=float).ravel()
    if values.size == 0:
        raise EmptySpectrum("Spectrum is empty.")
    return np.sort(values)[::-1]


def von_neumann_entropy(s: SpectrumLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    S = -sum lambda ln lambda (nats), with 0 ln 0 = 0.
    """
    values = _descending(s)

    k_min = int(np.argmin(values))
    if values[k_min] < -tolerances.psd:
        raise NegativeEigenvalue(
            f"Eigenvalue #{k_min} = {values[k_min]:.6g} is negative beyond tol_psd {tolerances.psd:.1e}.",
            deviation=float(values[k_min]),
            where=k_min,
        )

    positive = values[values > ENTROPY_ZERO_CUTOFF]
    # a lone eigenvalue 1 gives -0.0
    return max(0.0, float(-np.sum(positive * np.log(positive))))


def entropy_bits(nats: float) -> float:
    """Display-only conversion of an entropy from nats to bits."""
    return nats / math.log(2.0)


def linear_entropy(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """S_L = 1 - Tr(rho^2); needs no eigenvalues."""
    return 1.0 - purity(rho, tolerances)


def geometric_mixing(s: SpectrumLike) -> float:
    """
    D = sum lambda_i^2 + 1 - 2 lambda_max, the minimal squared
    Hilbert-Schmidt distance from the state to a pure state.
    """
    values = _descending(s)
    lam_max = float(values[0])

    d_sum = float(np.sum(values ** 2)) + 1.0 - 2.0 * lam_max
    d_split = (1.0 - lam_max) ** 2 + float(np.sum(values[1:] ** 2))

    if abs(d_sum - d_split) > D_FORM_AGREEMENT_TOL:
        raise InternalDisagreement("Closed forms of D disagree", gap=d_sum - d_split, tol=D_FORM_AGREEMENT_TOL)

    return max(0.0, d_sum)


def eigenvalue_distance_sq(s: SpectrumLike) -> float:
    """Squared Euclidean distance from the descending eigenvalue vector to (1, 0, ..., 0)."""
    values = _descending(s)
    corner = np.zeros_like(values)
    corner[0] = 1.0
    return float(np.sum((values - corner) ** 2))


def max_geometric_mixing(n: int) -> float:
    """Largest possible D in dimension n, reached only by 1/n."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise OutOfRange(f"Dimension must be a positive integer, got {n!r}.")
    return 1.0 - 1.0 / int(n)


def report(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> MixednessReport:
    """
    All measures from one spectrum (the one computed when rho was validated).
    """
    spectrum = rho.spectrum

    p_trace = purity(rho, tolerances)
    p_eig = float(np.sum(np.asarray(rho.raw_eigenvalues) ** 2))
    if abs(p_trace - p_eig) > PURITY_AGREEMENT_TOL:
        raise InternalDisagreement(
            "Purity from Tr(rho^2) and from sum(lambda^2) disagree",
            gap=p_trace - p_eig,
            tol=PURITY_AGREEMENT_TOL,
        )

    out = MixednessReport(
        dim=rho.dim,
        purity=p_trace,
        von_neumann_entropy=von_neumann_entropy(spectrum, tolerances),
        linear_entropy=1.0 - p_trace,
        geometric_measure=geometric_mixing(spectrum),
        lambda_max=float(spectrum.eigenvalues[0]),
        eigenvalues=tuple(float(x) for x in spectrum.eigenvalues),
    )

    logger.info("n=%d purity=%.6f S=%.6f D=%.6f", out.dim, out.purity, out.von_neumann_entropy, out.geometric_measure)
    return out
