"""
Hermitian eigendecomposition by cyclic complex Jacobi rotations.

Each rotation first removes the phase of the pivot M[p][q], then applies a
real plane rotation that annihilates it. Sweeps repeat until the
off-diagonal Frobenius norm drops to the convergence threshold.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from gmm.errors import NoConvergence, NotHermitian
from gmm.schema.constants import (
    DEFAULT_TOLERANCES,
    JACOBI_MAX_SWEEPS,
    JACOBI_RELATIVE_THRESHOLD,
)
from gmm.state.densmat import MatrixLike, PureState, as_entries

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in descending order; column k of `eigenvectors` belongs to eigenvalues[k]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def __post_init__(self) -> None:
        vals = np.array(self.eigenvalues, dtype=float, copy=True)
        vecs = np.array(self.eigenvectors, dtype=np.complex128, copy=True)

        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("Spectrum.eigenvalues must be a non-empty 1-D array.")
        if vecs.shape != (vals.size, vals.size):
            raise ValueError(
                f"Spectrum.eigenvectors must have shape {(vals.size, vals.size)}, got {vecs.shape}."
            )

        vals.setflags(write=False)
        vecs.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.size)


def _off_norm(a: np.ndarray) -> float:
    mask = ~np.eye(a.shape[0], dtype=bool)
    return float(np.linalg.norm(a[mask]))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate a[p, q] (and a[q, p]) in place; accumulate the rotation into v."""
    apq = a[p, q]
    b = abs(apq)
    phase = apq / b

    theta = 0.5 * math.atan2(2.0 * b, (a[q, q] - a[p, p]).real)
    c = math.cos(theta)
    s = math.sin(theta)

    # g = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    g00 = c
    g01 = s
    g10 = -s * phase.conjugate()
    g11 = c * phase.conjugate()

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = col_p * g00 + col_q * g10
    a[:, q] = col_p * g01 + col_q * g11

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = row_p * g00 + row_q * g10.conjugate()
    a[q, :] = row_p * g01 + row_q * g11.conjugate()

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = vec_p * g00 + vec_q * g10
    v[:, q] = vec_p * g01 + vec_q * g11


def hermitian_eig(
    m: MatrixLike,
    convergence_threshold: Optional[float] = None,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    *,
    tol_herm: float = DEFAULT_TOLERANCES.herm,
) -> Spectrum:
    """
    Eigendecomposition of a Hermitian matrix.

    convergence_threshold defaults to JACOBI_RELATIVE_THRESHOLD times the
    Frobenius norm of the input. Ties in the descending sort keep the
    original diagonal order.
    """
    a = np.array(as_entries(m), dtype=np.complex128, copy=True)
    n = a.shape[0]

    asym = np.abs(a - a.conj().T)
    worst = np.unravel_index(int(np.argmax(asym)), asym.shape)
    if asym[worst] > tol_herm:
        i, j = int(worst[0]), int(worst[1])
        raise NotHermitian(
            f"Eigensolver input is not Hermitian: |M[{i}][{j}] - conj(M[{j}][{i}])| = {asym[worst]:.6g}.",
            deviation=float(asym[worst]),
            where=(i, j),
        )

    a = 0.5 * (a + a.conj().T)

    if convergence_threshold is None:
        threshold = JACOBI_RELATIVE_THRESHOLD * float(np.linalg.norm(a))
    else:
        threshold = float(convergence_threshold)

    # Pivots this small cannot keep the off-diagonal norm above threshold.
    skip_below = threshold / n

    v = np.eye(n, dtype=np.complex128)
    sweeps = 0
    off = _off_norm(a)

    while off > threshold:
        if sweeps >= max_sweeps:
            raise NoConvergence(max_sweeps, off, threshold)

        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= skip_below:
                    continue
                _rotate(a, v, p, q)

        sweeps += 1
        off = _off_norm(a)

    logger.debug("Jacobi converged: n=%d sweeps=%d off=%.3e threshold=%.3e", n, sweeps, off, threshold)

    values = a.diagonal().real.copy()
    order = np.argsort(-values, kind="stable")

    return Spectrum(eigenvalues=values[order], eigenvectors=v[:, order], sweeps=sweeps)


def max_eigpair(s: Spectrum) -> Tuple[float, PureState]:
    """Largest eigenvalue and its (re-normalized) eigenvector."""
    return float(s.eigenvalues[0]), PureState.normalized(s.eigenvectors[:, 0])
