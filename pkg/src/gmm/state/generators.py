"""
Functions for generating random quantum states and unitaries.
"""

from __future__ import annotations

import numpy as np

from gmm.errors import OutOfRange
from gmm.schema.constants import DEFAULT_TOLERANCES, Tolerances
from gmm.state.densmat import DensityMatrix, PureState, maximally_mixed, pure_projector, validate_density


def random_complex_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    """n x n matrix with independent standard normal real and imaginary parts."""
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_density(n: int, rng: np.random.Generator) -> DensityMatrix:
    """Normalized A.A^dagger for a random complex A."""
    a = random_complex_matrix(n, rng)
    pos = a @ a.conj().T
    return validate_density(pos / np.trace(pos).real)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """
    Haar-random unitary: QR of a random complex matrix with the phases of
    diag(R) moved into Q.
    """
    q, r = np.linalg.qr(random_complex_matrix(n, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_projector(n: int, rng: np.random.Generator) -> DensityMatrix:
    vec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return pure_projector(PureState.normalized(vec))


def conjugate(
    rho: DensityMatrix,
    u: np.ndarray,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """U rho U^dagger, revalidated."""
    return validate_density(u @ rho.entries @ u.conj().T, tolerances)


def depolarize(rho: DensityMatrix, t: float) -> DensityMatrix:
    """(1 - t) rho + t rho_max(n), for t in [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"Depolarizing weight must lie in [0, 1], got {t}.", deviation=float(t))
    mixed = maximally_mixed(rho.dim)
    return validate_density((1.0 - t) * rho.entries + t * mixed.entries)
