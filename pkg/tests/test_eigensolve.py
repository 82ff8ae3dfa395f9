import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmm.errors import NoConvergence, NotHermitian, NotNormalized
from gmm.io import read_matrix_json
from gmm.qubit.bloch import BlochVector, density_from_bloch
from gmm.state.densmat import PureState, expectation, maximally_mixed, validate_density
from gmm.state.eigensolve import Spectrum, hermitian_eig, max_eigpair
from gmm.state.generators import random_complex_matrix, random_density


def _char_poly_roots(m: np.ndarray, lo: float, hi: float, grid: int = 20001) -> np.ndarray:
    """Roots of det(M - xI) on [lo, hi]: sign scan, then bisection. Descending."""
    n = m.shape[0]
    eye = np.eye(n)

    def f(x):
        x = np.atleast_1d(x)
        return np.linalg.det(m[None, :, :] - x[:, None, None] * eye).real

    xs = np.linspace(lo, hi, grid)
    fx = f(xs)

    roots = []
    for k in np.nonzero(np.sign(fx[:-1]) != np.sign(fx[1:]))[0]:
        a, b = xs[k], xs[k + 1]
        fa = fx[k]
        for _ in range(80):
            mid = 0.5 * (a + b)
            fm = f(mid)[0]
            if np.sign(fm) == np.sign(fa):
                a, fa = mid, fm
            else:
                b = mid
        roots.append(0.5 * (a + b))

    return np.sort(np.array(roots))[::-1]


def _random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    a = random_complex_matrix(n, rng)
    return 0.5 * (a + a.conj().T)


# ------------------------------------------------------------------
# Spectrum
# ------------------------------------------------------------------

def test_spectrum_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        Spectrum(eigenvalues=[0.5, 0.5], eigenvectors=np.eye(3))


def test_spectrum_rejects_empty():
    with pytest.raises(ValueError):
        Spectrum(eigenvalues=[], eigenvectors=np.zeros((0, 0)))


# ------------------------------------------------------------------
# hermitian_eig: examples
# ------------------------------------------------------------------

# Already diagonal: no rotations, eigenvectors are a permuted identity
def test_hermitian_eig_diagonal_input():
    s = hermitian_eig(np.diag([0.2, 0.5, 0.3]))

    assert s.eigenvalues.tolist() == [0.5, 0.3, 0.2]
    assert s.sweeps == 0
    assert np.array_equal(np.abs(s.eigenvectors), np.eye(3)[:, [1, 2, 0]])


# Equal eigenvalues keep the original diagonal order
def test_hermitian_eig_ties_are_stable():
    s = hermitian_eig(np.eye(3) / 3.0)

    assert np.array_equal(s.eigenvectors, np.eye(3))


@pytest.mark.parametrize("a", [0.0, 0.3, 0.6, 0.95, 1.0])
def test_hermitian_eig_qubit_bloch(a, rng):
    direction = rng.standard_normal(3)
    rho = density_from_bloch(BlochVector.along(direction, a))

    s = hermitian_eig(rho.entries)

    assert s.eigenvalues[0] == pytest.approx(0.5 * (1.0 + a), abs=1e-12)
    assert s.eigenvalues[1] == pytest.approx(0.5 * (1.0 - a), abs=1e-12)


# Hand-made 4x4 with complex off-diagonal entries
def test_hermitian_eig_complex_4x4_against_char_poly(fixture_path):
    m = read_matrix_json(fixture_path("hermitian_4.json")).entries
    s = hermitian_eig(m)

    expected = _char_poly_roots(m, -0.1, 1.1)
    assert expected.size == 4
    assert np.allclose(s.eigenvalues, expected, atol=1e-8)


# Random Hermitian 4x4 (not a state) against the characteristic polynomial
def test_hermitian_eig_random_hermitian_4x4(rng):
    m = _random_hermitian(4, rng)
    bound = float(np.linalg.norm(m)) + 1.0

    s = hermitian_eig(m)

    assert np.allclose(s.eigenvalues, _char_poly_roots(m, -bound, bound, grid=200001), atol=1e-8)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[1.0, 1.0], [0.0, 1.0]]))


# A zero sweep budget cannot converge on a non-diagonal input
def test_hermitian_eig_no_convergence(rng):
    m = _random_hermitian(3, rng)

    with pytest.raises(NoConvergence) as exc:
        hermitian_eig(m, max_sweeps=0)

    assert exc.value.max_sweeps == 0
    assert exc.value.off_norm > exc.value.threshold


# An absolute threshold can be passed explicitly
def test_hermitian_eig_explicit_threshold(rng):
    m = _random_hermitian(5, rng)

    loose = hermitian_eig(m, convergence_threshold=1e-3)
    tight = hermitian_eig(m)

    assert np.allclose(loose.eigenvalues, tight.eigenvalues, atol=1e-3)


# ------------------------------------------------------------------
# hermitian_eig: properties
# ------------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(n=st.integers(min_value=1, max_value=16), seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_hermitian_eig_reconstruction_and_orthonormality(n, seed):
    rho = random_density(n, np.random.default_rng(seed))
    s = hermitian_eig(rho.entries)

    v = s.eigenvectors
    recon = v @ np.diag(s.eigenvalues) @ v.conj().T

    assert np.max(np.abs(recon - rho.entries)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10
    assert abs(float(np.sum(s.eigenvalues)) - 1.0) <= 1e-10
    assert np.all(np.diff(s.eigenvalues) <= 0.0)


@settings(max_examples=100, deadline=None)
@given(n=st.integers(min_value=1, max_value=3), seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_hermitian_eig_small_matches_char_poly(n, seed):
    rho = random_density(n, np.random.default_rng(seed))
    s = hermitian_eig(rho.entries)

    expected = _char_poly_roots(rho.entries, -0.01, 1.01)
    # near-degenerate pairs can fall inside one scan cell
    if expected.size == n:
        assert np.allclose(s.eigenvalues, expected, atol=1e-8)


# ------------------------------------------------------------------
# max_eigpair
# ------------------------------------------------------------------

def test_max_eigpair_diagonal():
    value, psi = max_eigpair(hermitian_eig(np.diag([0.9, 0.1])))

    assert value == pytest.approx(0.9)
    assert np.allclose(np.abs(psi.amplitudes), [1.0, 0.0])


@pytest.mark.parametrize("n", [2, 3, 5])
def test_max_eigpair_maximally_mixed(n):
    value, psi = max_eigpair(maximally_mixed(n).spectrum)

    assert value == pytest.approx(1.0 / n, abs=1e-15)
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0)


def test_max_eigpair_bloch_z():
    rho = density_from_bloch(BlochVector(0.0, 0.0, 0.8))
    value, psi = max_eigpair(rho.spectrum)

    assert value == pytest.approx(0.9, abs=1e-15)
    assert np.allclose(np.abs(psi.amplitudes), [1.0, 0.0])


# Top eigenvector really is one: rho v = lambda_max v
def test_max_eigpair_is_eigenvector(rng):
    rho = random_density(6, rng)
    value, psi = max_eigpair(rho.spectrum)

    v = psi.amplitudes
    assert np.allclose(rho.entries @ v, value * v, atol=1e-10)


def test_max_eigpair_never_returns_zero_vector():
    with pytest.raises(NotNormalized):
        max_eigpair(Spectrum(eigenvalues=[1.0], eigenvectors=[[0.0]]))


def test_validate_reuses_solver_output(rng):
    rho = validate_density(random_density(4, rng).entries)

    assert rho.spectrum.dim == 4
    assert rho.spectrum.sweeps >= 1


# <psi|rho|psi> lies between the smallest and largest eigenvalue
def test_expectation_within_spectrum(rng):
    for _ in range(100):
        n = int(rng.integers(1, 9))
        rho = random_density(n, rng)
        s = hermitian_eig(rho.entries)
        psi = PureState.normalized(rng.standard_normal(n) + 1j * rng.standard_normal(n))

        value = expectation(rho, psi)
        assert s.eigenvalues[-1] - 1e-12 <= value <= s.eigenvalues[0] + 1e-12


# The top eigenvector attains lambda_max as an expectation value
def test_max_eigpair_expectation_is_lambda_max(rng):
    for _ in range(100):
        rho = random_density(int(rng.integers(1, 9)), rng)
        value, v = max_eigpair(hermitian_eig(rho.entries))

        assert expectation(rho, v) == pytest.approx(value, abs=1e-10)
