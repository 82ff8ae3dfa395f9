from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from gmm.errors import DimMismatch, OutOfRange, UnphysicalBloch
from gmm.schema.constants import BLOCH_LENGTH_SLACK, DEFAULT_TOLERANCES, Tolerances
from gmm.state.densmat import DensityMatrix, real_part, trace, validate_density

# ---------- Pauli Operators ----------
# Standard convention: sigma_x real off-diagonal, sigma_y imaginary,
# sigma_z diagonal.

PAULI_X = np.array([[0, 1],
                    [1, 0]], dtype=complex)

PAULI_Y = np.array([[0, -1j],
                    [1j, 0]], dtype=complex)

PAULI_Z = np.array([[1, 0],
                    [0, -1]], dtype=complex)

for _sigma in (PAULI_X, PAULI_Y, PAULI_Z):
    _sigma.setflags(write=False)


@dataclass(frozen=True)
class BlochVector:
    ax: float
    ay: float
    az: float

    def __post_init__(self) -> None:
        for name in ("ax", "ay", "az"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
                raise ValueError(f"BlochVector.{name} must be a real number, got {value!r}.")
            if not math.isfinite(value):
                raise ValueError(f"BlochVector.{name} must be finite, got {value!r}.")
            object.__setattr__(self, name, float(value))

        if self.length > 1.0 + BLOCH_LENGTH_SLACK:
            raise UnphysicalBloch(
                f"Bloch vector length {self.length!r} exceeds 1.",
                deviation=self.length - 1.0,
            )

    @property
    def length(self) -> float:
        return math.sqrt(self.ax ** 2 + self.ay ** 2 + self.az ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.ax, self.ay, self.az])

    @classmethod
    def along(cls, direction: Sequence[float], length: float) -> "BlochVector":
        """Vector of the given length pointing along `direction` (need not be unit)."""
        d = np.asarray(direction, dtype=float)
        if d.shape != (3,):
            raise OutOfRange(f"Direction must have 3 components, got shape {d.shape}.")

        if not float(length) >= 0.0:
            raise OutOfRange(f"Bloch length must be non-negative, got {length!r}.", deviation=float(length))

        norm = float(np.linalg.norm(d))
        if norm == 0.0 or not math.isfinite(norm):
            raise OutOfRange(f"Direction vector must have finite non-zero length, got {tuple(d)}.")

        a = d / norm * float(length)
        return cls(float(a[0]), float(a[1]), float(a[2]))


def _check_length(a_len: float) -> float:
    if not -BLOCH_LENGTH_SLACK <= a_len <= 1.0 + BLOCH_LENGTH_SLACK:
        raise OutOfRange(f"Bloch length must lie in [0, 1], got {a_len!r}.", deviation=float(a_len))
    return min(max(float(a_len), 0.0), 1.0)


def density_from_bloch(a: BlochVector, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """rho = (1 + a . sigma) / 2."""
    length = a.length
    if length > 1.0 + BLOCH_LENGTH_SLACK:
        raise UnphysicalBloch(f"Bloch vector length {length!r} exceeds 1.", deviation=length - 1.0)

    vec = a.as_array()
    if length > 1.0:
        vec = vec / length

    m = 0.5 * (np.eye(2, dtype=complex) + vec[0] * PAULI_X + vec[1] * PAULI_Y + vec[2] * PAULI_Z)
    return validate_density(m, tolerances)


def bloch_from_density(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BlochVector:
    """a_k = Tr(rho sigma_k)."""
    if rho.dim != 2:
        raise DimMismatch(f"Bloch vectors describe 2x2 states, got n={rho.dim}.")

    vec = np.array([
        real_part(trace(rho.entries @ sigma), tolerances.herm, f"Tr(rho sigma_{axis})")
        for sigma, axis in ((PAULI_X, "x"), (PAULI_Y, "y"), (PAULI_Z, "z"))
    ])

    # a valid state can overshoot |a| = 1 by its eigenvalue tolerance
    length = float(np.linalg.norm(vec))
    if length > 1.0:
        vec = vec / length

    return BlochVector(float(vec[0]), float(vec[1]), float(vec[2]))


def qubit_eigenvalues(a_len: float) -> Tuple[float, float]:
    """(1 + a) / 2 and (1 - a) / 2, descending."""
    a = _check_length(a_len)
    return 0.5 * (1.0 + a), 0.5 * (1.0 - a)


def qubit_geometric_mixing(a_len: float) -> float:
    """D = (1 - a)^2 / 2."""
    a = _check_length(a_len)
    return 0.5 * (1.0 - a) ** 2
