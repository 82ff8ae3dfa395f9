"""
Exception hierarchy for GMM.

DomainViolation subclasses are raised when an input breaks one of the
axioms of a quantum state (or a precondition of an operation). The CLI maps
them to exit code 2; ParseError maps to exit code 3.
"""

from __future__ import annotations

from typing import Optional, Tuple, Union

Where = Optional[Union[int, Tuple[int, int]]]


class MixednessError(Exception):
    """Base class for every error raised by GMM."""


# ------------------------------------------------------------------
# Domain violations (exit code 2)
# ------------------------------------------------------------------

class DomainViolation(MixednessError, ValueError):
    """An input violates a state axiom or an operation precondition."""

    def __init__(self, message: str, *, deviation: float = float("nan"), where: Where = None) -> None:
        super().__init__(message)
        self.deviation = float(deviation)
        self.where = where

    @property
    def kind(self) -> str:
        return type(self).__name__


class NotHermitian(DomainViolation):
    pass


class TraceNotOne(DomainViolation):
    pass


class NotPositiveSemidefinite(DomainViolation):
    pass


class NotNormalized(DomainViolation):
    pass


class DimMismatch(DomainViolation):
    pass


class UnphysicalBloch(DomainViolation):
    pass


class OutOfRange(DomainViolation):
    pass


class NegativeEigenvalue(DomainViolation):
    pass


class EmptySpectrum(DomainViolation):
    pass


# ------------------------------------------------------------------
# Numerical failures
# ------------------------------------------------------------------

class NoConvergence(MixednessError, RuntimeError):
    """The Jacobi sweeps did not bring the off-diagonal norm under threshold."""

    def __init__(self, max_sweeps: int, off_norm: float, threshold: float) -> None:
        super().__init__(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e} > threshold {threshold:.3e})."
        )
        self.max_sweeps = int(max_sweeps)
        self.off_norm = float(off_norm)
        self.threshold = float(threshold)

    @property
    def kind(self) -> str:
        return type(self).__name__


class InternalDisagreement(MixednessError, RuntimeError):
    """Two independent computation paths returned different values."""

    def __init__(self, message: str, *, gap: float, tol: float) -> None:
        super().__init__(f"{message} (|gap| = {abs(gap):.3e} > {tol:.1e})")
        self.gap = float(gap)
        self.tol = float(tol)

    @property
    def kind(self) -> str:
        return type(self).__name__


# ------------------------------------------------------------------
# Input parsing (exit code 3)
# ------------------------------------------------------------------

class ParseError(MixednessError, ValueError):
    """A matrix file could not be read into a square complex matrix."""

    @property
    def kind(self) -> str:
        return type(self).__name__
