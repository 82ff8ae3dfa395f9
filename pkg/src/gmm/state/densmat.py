from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Union

import numpy as np

from gmm.errors import (
    DimMismatch,
    InternalDisagreement,
    NotHermitian,
    NotNormalized,
    NotPositiveSemidefinite,
    OutOfRange,
    TraceNotOne,
)
from gmm.schema.constants import DEFAULT_TOLERANCES, Tolerances

if TYPE_CHECKING:
    from gmm.state.eigensolve import Spectrum

logger = logging.getLogger(__name__)


def _frozen_array(values: Any, *, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)

    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}.")
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty.")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite entries.")

    arr.setflags(write=False)
    return arr


# ------------------------------------------------------------------
# Types
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """Unvalidated n x n complex matrix (row-major, immutable)."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.entries, ndim=2, name="SquareMatrix.entries")
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"SquareMatrix.entries must be square, got shape {arr.shape}.")
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def from_parts(cls, re: Any, im: Any = None) -> "SquareMatrix":
        real = np.asarray(re, dtype=float)
        imag = np.zeros_like(real) if im is None else np.asarray(im, dtype=float)
        return cls(real + 1j * imag)


@dataclass(frozen=True, eq=False)
class DensityMatrix(SquareMatrix):
    """
    Validated quantum state: Hermitian, unit trace, positive semidefinite.

    Only built by validate_density. `spectrum` holds eigenvalues clamped to
    [0, 1] (descending) with their eigenvectors; `raw_eigenvalues` keeps the
    solver output before clamping.
    """

    spectrum: "Spectrum"
    raw_eigenvalues: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues


@dataclass(frozen=True, eq=False)
class PureState:
    """State vector |psi>. Unit norm is checked by the operations that need it."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", _frozen_array(self.amplitudes, ndim=1, name="PureState.amplitudes"))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    @classmethod
    def normalized(cls, vector: Any) -> "PureState":
        vec = np.asarray(vector, dtype=np.complex128)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise NotNormalized("Cannot normalize the zero vector.", deviation=1.0)
        return cls(vec / norm)


MatrixLike = Union[SquareMatrix, np.ndarray]


def as_entries(m: MatrixLike) -> np.ndarray:
    if isinstance(m, SquareMatrix):
        return m.entries
    return SquareMatrix(m).entries


def _require_same_dim(n1: int, n2: int, what: str) -> None:
    if n1 != n2:
        raise DimMismatch(f"{what}: dimensions differ ({n1} vs {n2}).", deviation=float(abs(n1 - n2)))


def _require_unit_norm(psi: PureState, tol: float) -> None:
    norm_sq = float(np.vdot(psi.amplitudes, psi.amplitudes).real)
    dev = norm_sq - 1.0
    if abs(dev) > tol:
        raise NotNormalized(
            f"State vector is not normalized: |psi|^2 = {norm_sq!r} (deviation {dev:+.3e}).",
            deviation=dev,
        )


def real_part(z: complex, tol: float, what: str) -> float:
    """Return Re z, refusing values whose imaginary part exceeds tol."""
    z = complex(z)
    if abs(z.imag) > tol:
        raise InternalDisagreement(f"{what} should be real but has imaginary part {z.imag!r}", gap=z.imag, tol=tol)
    return float(z.real)


# ------------------------------------------------------------------
# Validation
# ------------------------------------------------------------------

def validate_density(m: MatrixLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """
    Check the three state axioms and return a DensityMatrix.

    Eigenvalues in [-tol_psd, 0) are clamped to 0 (and values above 1 to 1);
    the clamped spectrum is renormalized only if its sum then drifts from 1
    by more than tol_trace.
    """
    from gmm.state.eigensolve import Spectrum, hermitian_eig

    a = as_entries(m)
    n = a.shape[0]

    # --- Hermitian ---
    asym = np.abs(a - a.conj().T)
    worst = np.unravel_index(int(np.argmax(asym)), asym.shape)
    if asym[worst] > tolerances.herm:
        i, j = int(worst[0]), int(worst[1])
        raise NotHermitian(
            f"Matrix is not Hermitian: |M[{i}][{j}] - conj(M[{j}][{i}])| = {asym[worst]:.6g} "
            f"> tol_herm {tolerances.herm:.1e}.",
            deviation=float(asym[worst]),
            where=(i, j),
        )

    # --- unit trace ---
    tr = complex(np.trace(a))
    # entry-wise Hermiticity lets diagonal imaginary parts add up
    if abs(tr.imag) > tolerances.herm:
        raise TraceNotOne(
            f"Trace has imaginary part {tr.imag:.6g} (tol_herm {tolerances.herm:.1e}).",
            deviation=tr.imag,
        )
    trace_dev = tr.real - 1.0
    if abs(trace_dev) > tolerances.trace:
        raise TraceNotOne(
            f"Trace is {tr.real:.17g}, deviates from 1 by {trace_dev:+.6g} (tol_trace {tolerances.trace:.1e}).",
            deviation=trace_dev,
        )

    herm = 0.5 * (a + a.conj().T)

    # --- positive semidefinite ---
    spectrum = hermitian_eig(herm, tol_herm=tolerances.herm)
    raw = spectrum.eigenvalues
    k_min = int(np.argmin(raw))
    if raw[k_min] < -tolerances.psd:
        raise NotPositiveSemidefinite(
            f"Matrix is not positive semidefinite: eigenvalue #{k_min} = {raw[k_min]:.6g} "
            f"< -tol_psd {tolerances.psd:.1e}.",
            deviation=float(raw[k_min]),
            where=k_min,
        )

    clamped = np.clip(raw, 0.0, 1.0)
    total = float(np.sum(clamped))
    if abs(total - 1.0) > tolerances.trace:
        logger.debug("Renormalizing clamped spectrum (sum %.17g).", total)
        clamped = clamped / total

    logger.debug("Validated %dx%d density matrix (lambda_min %.3e).", n, n, raw[-1])

    raw_frozen = np.array(raw, dtype=float)
    raw_frozen.setflags(write=False)

    return DensityMatrix(
        entries=herm,
        spectrum=Spectrum(eigenvalues=clamped, eigenvectors=spectrum.eigenvectors, sweeps=spectrum.sweeps),
        raw_eigenvalues=raw_frozen,
    )


# ------------------------------------------------------------------
# Primitives
# ------------------------------------------------------------------

def matmul(a: MatrixLike, b: MatrixLike) -> SquareMatrix:
    """Complex matrix product A.B."""
    ea = as_entries(a)
    eb = as_entries(b)
    _require_same_dim(ea.shape[0], eb.shape[0], "matmul")
    return SquareMatrix(ea @ eb)


def trace(a: MatrixLike) -> complex:
    """Sum of the diagonal."""
    return complex(np.trace(as_entries(a)))


def purity(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Tr(rho^2), computed without an eigendecomposition."""
    return real_part(trace(matmul(rho, rho)), tolerances.herm, "Tr(rho^2)")


def hs_distance_sq(
    rho1: DensityMatrix,
    rho2: DensityMatrix,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Squared Hilbert-Schmidt distance Tr(rho1 - rho2)^2.

    Round-off can push the value slightly below zero; the result is
    clamped at 0.
    """
    _require_same_dim(rho1.dim, rho2.dim, "hs_distance_sq")
    delta = SquareMatrix(rho1.entries - rho2.entries)
    value = real_part(trace(matmul(delta, delta)), tolerances.herm, "Tr(rho1 - rho2)^2")
    return max(0.0, value)


def pure_projector(psi: PureState, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """|psi><psi| as a validated density matrix."""
    _require_unit_norm(psi, tolerances.norm)
    v = psi.amplitudes
    return validate_density(np.outer(v, v.conj()), tolerances)


def expectation(
    rho: DensityMatrix,
    psi: PureState,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """<psi|rho|psi>, which equals Tr(rho |psi><psi|)."""
    _require_same_dim(rho.dim, psi.dim, "expectation")
    _require_unit_norm(psi, tolerances.norm)
    v = psi.amplitudes
    return real_part(np.vdot(v, rho.entries @ v), tolerances.herm, "<psi|rho|psi>")


def maximally_mixed(n: int) -> DensityMatrix:
    """The maximally mixed state 1/n."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise OutOfRange(f"Dimension must be a positive integer, got {n!r}.")
    return validate_density(np.eye(int(n), dtype=np.complex128) / int(n))
