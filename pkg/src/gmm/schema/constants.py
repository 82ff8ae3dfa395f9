"""
GMM constants.

This file defines the fixed numerical assumptions of the Geometric Mixing
Measure (GMM). Changing values here changes the meaning of all outputs.
"""

from dataclasses import dataclass

# ------------------------------------------------------------------
# Identity / versioning
# ------------------------------------------------------------------

GMM_NAME = "Geometric Mixing Measure (GMM)"
GMM_VERSION = "0.1.0"


# ------------------------------------------------------------------
# State validation tolerances
# Desk-scale dimensions (n <= 64) in double precision keep round-off
# far below these values.
# ------------------------------------------------------------------

@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-9      # max |M[i][j] - conj(M[j][i])|, also max |Im| of "real" results
    trace: float = 1e-9     # |Tr M - 1|
    psd: float = 1e-9       # smallest admitted eigenvalue is -psd
    norm: float = 1e-9      # | ||psi||^2 - 1 |

    def __post_init__(self) -> None:
        for name in ("herm", "trace", "psd", "norm"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"Tolerance '{name}' must be numeric.")
            if not value >= 0.0:
                raise ValueError(f"Tolerance '{name}' must be non-negative, got {value}.")


DEFAULT_TOLERANCES = Tolerances()


# ------------------------------------------------------------------
# Jacobi eigensolver
# threshold = JACOBI_RELATIVE_THRESHOLD * ||M||_F
# ------------------------------------------------------------------

JACOBI_RELATIVE_THRESHOLD = 1e-12
JACOBI_MAX_SWEEPS = 100


# ------------------------------------------------------------------
# Variational oracle
# ------------------------------------------------------------------

@dataclass(frozen=True)
class OracleSettings:
    restarts: int = 200
    refine_iters: int = 500
    seed: int = 42
    theta_steps: int = 721      # inclusive grid over [0, pi]
    phi_steps: int = 1441       # exclusive grid over [0, 2 pi)
    pass_threshold: float = 1e-6


ORACLE_DEFAULTS = OracleSettings()


# ------------------------------------------------------------------
# Measures
# ------------------------------------------------------------------

ENTROPY_ZERO_CUTOFF = 1e-15     # 0 ln 0 = 0 for eigenvalues at or below this

PURITY_AGREEMENT_TOL = 1e-10    # sum(lambda^2) vs Tr(rho^2)
D_FORM_AGREEMENT_TOL = 1e-12    # the two algebraic forms of D
OBJECTIVE_AGREEMENT_TOL = 1e-10 # decomposed vs direct Hilbert-Schmidt objective


# ------------------------------------------------------------------
# Qubit / Bloch
# ------------------------------------------------------------------

BLOCH_LENGTH_SLACK = 1e-12      # |a| in (1, 1 + slack] is renormalized to 1


# ------------------------------------------------------------------
# Output
# ------------------------------------------------------------------

FLOAT_SIGNIFICANT_DIGITS = 17
OUTPUT_FORMATS = ("json", "csv", "human")
