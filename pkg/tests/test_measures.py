import math

import numpy as np
import pytest

from gmm.errors import EmptySpectrum, NegativeEigenvalue, OutOfRange
from gmm.mixing.measures import (
    MixednessReport,
    eigenvalue_distance_sq,
    entropy_bits,
    geometric_mixing,
    linear_entropy,
    max_geometric_mixing,
    report,
    von_neumann_entropy,
)
from gmm.qubit.bloch import BlochVector, density_from_bloch
from gmm.state.densmat import hs_distance_sq, maximally_mixed, pure_projector
from gmm.state.eigensolve import max_eigpair
from gmm.state.generators import conjugate, random_density, random_pure_projector, random_unitary


# ------------------------------------------------------------------
# von_neumann_entropy
# ------------------------------------------------------------------

def test_entropy_pure_spectrum():
    assert von_neumann_entropy([1.0, 0.0, 0.0]) == 0.0


def test_entropy_maximally_mixed_qubit():
    assert von_neumann_entropy([0.5, 0.5]) == pytest.approx(math.log(2.0), abs=1e-15)


# Cross-checked against a 50-digit evaluation
def test_entropy_three_level_spectrum():
    assert von_neumann_entropy([0.5, 0.3, 0.2]) == pytest.approx(1.0296530140645735, abs=1e-14)


# Eigenvalues at or below the cutoff contribute nothing
def test_entropy_ignores_tiny_eigenvalues():
    assert von_neumann_entropy([1.0, 1e-16, 0.0]) == 0.0


# Order of the input does not matter
def test_entropy_accepts_unsorted_input():
    assert von_neumann_entropy([0.2, 0.5, 0.3]) == von_neumann_entropy([0.5, 0.3, 0.2])


def test_entropy_negative_eigenvalue_raises():
    with pytest.raises(NegativeEigenvalue) as exc:
        von_neumann_entropy([1.1, -0.1])

    assert exc.value.deviation == pytest.approx(-0.1)


def test_entropy_empty_spectrum_raises():
    with pytest.raises(EmptySpectrum):
        von_neumann_entropy([])


@pytest.mark.parametrize("n", [2, 3, 8])
def test_entropy_maximally_mixed_is_log_n(n):
    assert von_neumann_entropy(maximally_mixed(n).spectrum) == pytest.approx(math.log(n), abs=1e-12)


def test_entropy_bits_conversion():
    assert entropy_bits(math.log(2.0)) == pytest.approx(1.0)
    assert entropy_bits(0.0) == 0.0


# ------------------------------------------------------------------
# linear_entropy
# ------------------------------------------------------------------

def test_linear_entropy_pure(rng):
    assert linear_entropy(random_pure_projector(3, rng)) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_linear_entropy_maximally_mixed(n):
    assert linear_entropy(maximally_mixed(n)) == pytest.approx(1.0 - 1.0 / n, abs=1e-15)


def test_linear_entropy_qubit():
    rho = density_from_bloch(BlochVector(0.0, 0.0, 0.6))

    assert linear_entropy(rho) == pytest.approx(0.32, abs=1e-14)


# ------------------------------------------------------------------
# geometric_mixing / max_geometric_mixing
# ------------------------------------------------------------------

def test_geometric_mixing_pure():
    assert geometric_mixing([1.0, 0.0, 0.0]) == 0.0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 16])
def test_geometric_mixing_maximally_mixed(n):
    assert geometric_mixing(maximally_mixed(n).spectrum) == pytest.approx(1.0 - 1.0 / n, abs=1e-12)


def test_geometric_mixing_three_level():
    assert geometric_mixing([0.5, 0.3, 0.2]) == pytest.approx(0.38, abs=1e-15)


# Round-off below zero is clamped
def test_geometric_mixing_never_negative():
    assert geometric_mixing([1.0, 1e-17]) >= 0.0


def test_geometric_mixing_empty_raises():
    with pytest.raises(EmptySpectrum):
        geometric_mixing(np.array([]))


# D is the squared distance from the eigenvalue vector to (1, 0, ..., 0)
def test_geometric_mixing_equals_eigenvalue_distance(rng):
    for _ in range(100):
        rho = random_density(int(rng.integers(1, 9)), rng)

        d = geometric_mixing(rho.spectrum)
        assert d == pytest.approx(eigenvalue_distance_sq(rho.spectrum), abs=1e-12)


# The top eigenvector is the closest pure state
def test_geometric_mixing_attained_by_top_eigenvector(rng):
    for _ in range(50):
        rho = random_density(int(rng.integers(2, 7)), rng)
        _, v = max_eigpair(rho.spectrum)

        closest = hs_distance_sq(rho, pure_projector(v))
        assert geometric_mixing(rho.spectrum) == pytest.approx(closest, abs=1e-10)


@pytest.mark.parametrize("n, expected", [(1, 0.0), (2, 0.5), (4, 0.75)])
def test_max_geometric_mixing(n, expected):
    assert max_geometric_mixing(n) == pytest.approx(expected)


@pytest.mark.parametrize("bad", [0, -1, 2.0])
def test_max_geometric_mixing_bad_dimension(bad):
    with pytest.raises(OutOfRange):
        max_geometric_mixing(bad)


# ------------------------------------------------------------------
# report
# ------------------------------------------------------------------

def test_report_maximally_mixed_qubit():
    rep = report(maximally_mixed(2))

    assert isinstance(rep, MixednessReport)
    assert rep.dim == 2
    assert rep.purity == pytest.approx(0.5)
    assert rep.von_neumann_entropy == pytest.approx(math.log(2.0))
    assert rep.linear_entropy == pytest.approx(0.5)
    assert rep.geometric_measure == pytest.approx(0.5)
    assert rep.lambda_max == pytest.approx(0.5)
    assert rep.eigenvalues == (0.5, 0.5)


def test_report_pure_projector(rng):
    rep = report(random_pure_projector(4, rng))

    assert rep.purity == pytest.approx(1.0, abs=1e-12)
    assert rep.von_neumann_entropy == pytest.approx(0.0, abs=1e-12)
    assert rep.linear_entropy == pytest.approx(0.0, abs=1e-12)
    assert rep.geometric_measure == pytest.approx(0.0, abs=1e-12)
    assert rep.lambda_max == pytest.approx(1.0, abs=1e-12)


def test_report_qubit_bloch_length():
    rep = report(density_from_bloch(BlochVector(0.0, 0.6, 0.0)))

    assert rep.purity == pytest.approx(0.68, abs=1e-12)
    assert rep.geometric_measure == pytest.approx(0.08, abs=1e-12)
    assert rep.lambda_max == pytest.approx(0.8, abs=1e-12)


# linear_entropy is exactly 1 - purity, eigenvalues descending
def test_report_internal_consistency(rng):
    for _ in range(50):
        rep = report(random_density(int(rng.integers(1, 7)), rng))

        assert rep.linear_entropy == 1.0 - rep.purity
        assert list(rep.eigenvalues) == sorted(rep.eigenvalues, reverse=True)
        assert rep.lambda_max == rep.eigenvalues[0]
        assert rep.von_neumann_entropy >= rep.linear_entropy - 1e-12


def test_report_to_dict_field_names():
    out = report(maximally_mixed(3)).to_dict()

    assert list(out) == [
        "dim",
        "purity",
        "von_neumann_entropy",
        "linear_entropy",
        "geometric_measure",
        "lambda_max",
        "eigenvalues",
    ]
    assert isinstance(out["eigenvalues"], list)


# All measures are unitarily invariant
def test_report_unitary_invariance(rng):
    for _ in range(20):
        n = int(rng.integers(2, 6))
        rho = random_density(n, rng)
        base = report(rho)

        rotated = report(conjugate(rho, random_unitary(n, rng)))

        assert rotated.purity == pytest.approx(base.purity, abs=1e-9)
        assert rotated.von_neumann_entropy == pytest.approx(base.von_neumann_entropy, abs=1e-9)
        assert rotated.linear_entropy == pytest.approx(base.linear_entropy, abs=1e-9)
        assert rotated.geometric_measure == pytest.approx(base.geometric_measure, abs=1e-9)
