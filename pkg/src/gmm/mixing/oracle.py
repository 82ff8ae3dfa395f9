"""
Variational check of the closed-form geometric measure.

Minimizes Tr(rho - |psi><psi|)^2 directly over pure states, using random
restarts refined by the shifted power map psi <- (rho + 1) psi / norm, and
an exhaustive (theta, phi) grid for qubits. Neither path runs the Jacobi
eigensolver: the trial projectors are never validated as density matrices.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from gmm.errors import DimMismatch, InternalDisagreement, OutOfRange
from gmm.schema.constants import (
    DEFAULT_TOLERANCES,
    OBJECTIVE_AGREEMENT_TOL,
    ORACLE_DEFAULTS,
    Tolerances,
)
from gmm.state.densmat import (
    DensityMatrix,
    PureState,
    SquareMatrix,
    expectation,
    matmul,
    purity,
    real_part,
    trace,
)

logger = logging.getLogger(__name__)

RngLike = Union[np.random.Generator, int]


@dataclass(frozen=True, eq=False)
class OracleResult:
    d_estimate: float
    best_state: PureState
    restarts_used: int
    refinement_iterations: int
    seed: int


def _require_positive_int(value: int, name: str, *, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise OutOfRange(f"{name} must be an integer >= {minimum}, got {value!r}.")
    return int(value)


def _generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


# ------------------------------------------------------------------
# Sampling
# ------------------------------------------------------------------

def sample_pure_state(n: int, rng: RngLike) -> PureState:
    """
    Uniform sample from the complex unit sphere in C^n: 2n standard normal
    draws (real parts first, then imaginary parts), normalized.
    """
    n = _require_positive_int(n, "Dimension", minimum=1)
    gen = _generator(rng)

    while True:
        draws = gen.standard_normal(2 * n)
        vec = draws[:n] + 1j * draws[n:]
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            return PureState(vec / norm)


# ------------------------------------------------------------------
# Objective
# ------------------------------------------------------------------

def objective_terms(
    rho: DensityMatrix,
    psi: PureState,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[float, float, float]:
    """(Tr rho^2, Tr rho_pure^2, Tr rho rho_pure), each computed on its own."""
    if rho.dim != psi.dim:
        raise DimMismatch(f"objective: dimensions differ ({rho.dim} vs {psi.dim}).")

    norm_sq = float(np.vdot(psi.amplitudes, psi.amplitudes).real)
    return purity(rho, tolerances), norm_sq ** 2, expectation(rho, psi, tolerances)


def objective(
    rho: DensityMatrix,
    psi: PureState,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Tr(rho - |psi><psi|)^2, computed from the three separate terms and
    directly; the two must agree.
    """
    p_rho, p_pure, overlap = objective_terms(rho, psi, tolerances)
    decomposed = p_rho + p_pure - 2.0 * overlap

    v = psi.amplitudes
    delta = SquareMatrix(rho.entries - np.outer(v, v.conj()))
    direct = max(0.0, real_part(trace(matmul(delta, delta)), tolerances.herm, "Tr(rho - |psi><psi|)^2"))

    if abs(decomposed - direct) > OBJECTIVE_AGREEMENT_TOL:
        raise InternalDisagreement(
            "Decomposed and direct Hilbert-Schmidt objectives disagree",
            gap=decomposed - direct,
            tol=OBJECTIVE_AGREEMENT_TOL,
        )

    return direct


# ------------------------------------------------------------------
# Power-map refinement
# ------------------------------------------------------------------

def _power_map(shifted: np.ndarray, columns: np.ndarray, iters: int) -> np.ndarray:
    for _ in range(iters):
        columns = shifted @ columns
        columns = columns / np.linalg.norm(columns, axis=0)
    return columns


def refine(rho: DensityMatrix, psi: PureState, iters: int) -> PureState:
    """
    Apply psi <- normalize((rho + 1) psi) `iters` times.

    rho + 1 has spectrum in [1, 2], so <psi|rho|psi> never decreases.
    """
    if rho.dim != psi.dim:
        raise DimMismatch(f"refine: dimensions differ ({rho.dim} vs {psi.dim}).")
    iters = _require_positive_int(iters, "refine_iters", minimum=0)

    shifted = rho.entries + np.eye(rho.dim)
    column = _power_map(shifted, psi.amplitudes.reshape(-1, 1), iters)
    return PureState(column[:, 0])


# ------------------------------------------------------------------
# Minimizers
# ------------------------------------------------------------------

def minimize_over_pure(
    rho: DensityMatrix,
    restarts: int = ORACLE_DEFAULTS.restarts,
    refine_iters: int = ORACLE_DEFAULTS.refine_iters,
    seed: int = ORACLE_DEFAULTS.seed,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> OracleResult:
    """
    Random restarts + power-map refinement.

    Restart k starts from the k-th draw of sample_pure_state on a generator
    seeded with `seed`. All restarts are refined together; the winner is the
    lexicographic minimum of (objective, restart index).
    """
    restarts = _require_positive_int(restarts, "restarts", minimum=1)
    refine_iters = _require_positive_int(refine_iters, "refine_iters", minimum=0)
    seed = _require_positive_int(seed, "seed", minimum=0)
    if seed >= 2 ** 64:
        raise OutOfRange(f"seed must fit in 64 bits, got {seed}.")

    gen = np.random.default_rng(seed)
    starts = np.column_stack([sample_pure_state(rho.dim, gen).amplitudes for _ in range(restarts)])

    shifted = rho.entries + np.eye(rho.dim)
    refined = _power_map(shifted, starts, refine_iters)

    overlaps = np.einsum("ir,ij,jr->r", refined.conj(), rho.entries, refined).real
    values = purity(rho, tolerances) + 1.0 - 2.0 * overlaps

    best = int(np.argmin(values))
    best_state = PureState(refined[:, best])
    d_estimate = objective(rho, best_state, tolerances)

    logger.info(
        "Oracle n=%d restarts=%d refine_iters=%d seed=%d -> d=%.17g (restart %d)",
        rho.dim, restarts, refine_iters, seed, d_estimate, best,
    )

    return OracleResult(
        d_estimate=d_estimate,
        best_state=best_state,
        restarts_used=restarts,
        refinement_iterations=refine_iters,
        seed=seed,
    )


def grid_minimize_qubit(
    rho: DensityMatrix,
    theta_steps: int = ORACLE_DEFAULTS.theta_steps,
    phi_steps: int = ORACLE_DEFAULTS.phi_steps,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> OracleResult:
    """
    Exhaustive search over psi(theta, phi) = (cos(theta/2), e^{i phi} sin(theta/2)),
    theta in [0, pi] (inclusive), phi in [0, 2 pi) (exclusive).

    restarts_used reports the number of grid points; seed is 0.
    """
    if rho.dim != 2:
        raise DimMismatch(f"grid_minimize_qubit needs a 2x2 state, got n={rho.dim}.")
    theta_steps = _require_positive_int(theta_steps, "theta_steps", minimum=2)
    phi_steps = _require_positive_int(phi_steps, "phi_steps", minimum=2)

    theta = np.linspace(0.0, math.pi, theta_steps)
    phi = np.linspace(0.0, 2.0 * math.pi, phi_steps, endpoint=False)

    c = np.cos(theta / 2.0)[:, None]
    s = np.sin(theta / 2.0)[:, None]
    phase = np.exp(1j * phi)[None, :]

    r = rho.entries
    overlaps = (c ** 2) * r[0, 0].real + (s ** 2) * r[1, 1].real + 2.0 * c * s * (r[0, 1] * phase).real
    values = purity(rho, tolerances) + 1.0 - 2.0 * overlaps

    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    best_state = PureState(
        [math.cos(theta[i] / 2.0), np.exp(1j * phi[j]) * math.sin(theta[i] / 2.0)]
    )
    d_estimate = objective(rho, best_state, tolerances)

    logger.info("Qubit grid %dx%d -> d=%.17g at theta=%.6f phi=%.6f", theta_steps, phi_steps, d_estimate, theta[i], phi[j])

    return OracleResult(
        d_estimate=d_estimate,
        best_state=best_state,
        restarts_used=theta_steps * phi_steps,
        refinement_iterations=0,
        seed=0,
    )
