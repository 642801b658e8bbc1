import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohtensor.errors import DimensionMismatch, NotHermitian
from cohtensor.smallherm import (
    hermitian_eigenvalues,
    is_psd,
    kron,
    min_eigenvalue,
    projector_from_kets,
    singular_values,
)
from helpers import LAM, random_hermitian, realign_loops

seeds = st.integers(0, 2**32 - 1)


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_lambda11_antidiagonal():
    m = kron(LAM[1], LAM[1])
    expected = np.zeros((4, 4))
    for r, c in [(0, 3), (1, 2), (2, 1), (3, 0)]:
        expected[r, c] = 0.5
    assert np.allclose(m, expected, atol=1e-15)


@given(seeds)
def test_kron_trace_multiplicative_and_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    assert abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)) <= 1e-12
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) <= 1e-12
    assert np.allclose(kron(a, b, c), kron(a, kron(b, c)), atol=1e-12)


def test_kron_needs_input():
    with pytest.raises(ValueError):
        kron()


def test_eigenvalues_diagonal():
    assert np.allclose(hermitian_eigenvalues(np.diag([4.0, 2.0, 3.0, 1.0])), [1, 2, 3, 4], atol=1e-15)


def test_eigenvalues_bell_matrix():
    rho = np.zeros((4, 4))
    rho[0, 0] = rho[0, 3] = rho[3, 0] = rho[3, 3] = 0.5
    assert np.allclose(hermitian_eigenvalues(rho), [0, 0, 0, 1], atol=1e-12)


def test_eigenvalues_werner_half():
    # 1/2 L00 - 1/4 (L11 + L22 + L33), written out by hand
    x = 0.5
    rho = np.array([
        [(1 - x) / 4, 0, 0, 0],
        [0, (1 + x) / 4, -x / 2, 0],
        [0, -x / 2, (1 + x) / 4, 0],
        [0, 0, 0, (1 - x) / 4],
    ])
    assert np.allclose(hermitian_eigenvalues(rho), [0.125, 0.125, 0.125, 0.625], atol=1e-12)


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.ones((2, 3)))
    with pytest.raises(NotHermitian):
        is_psd(np.array([[0, 1j], [1j, 0]]))


def test_hermitian_tolerance_is_a_parameter():
    m = np.array([[1.0, 1e-9], [0.0, 1.0]])
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(m)
    assert hermitian_eigenvalues(m, tol=1e-8).shape == (2,)


@settings(max_examples=60)
@given(seeds, st.sampled_from([1, 2, 3, 4, 5, 8, 16, 32]))
def test_eigenvalues_match_numpy_and_trace(seed, d):
    rng = np.random.default_rng(seed)
    h = random_hermitian(d, rng)
    ev = hermitian_eigenvalues(h)
    assert np.all(np.diff(ev) >= 0)
    assert np.max(np.abs(ev - np.linalg.eigvalsh(h))) <= 1e-12 * max(1.0, np.abs(ev).max())
    assert abs(ev.sum() - np.trace(h).real) <= 1e-10


@given(seeds, st.sampled_from([2, 4]))
def test_eigenvalues_match_characteristic_polynomial(seed, d):
    rng = np.random.default_rng(seed)
    h = random_hermitian(d, rng)
    roots = np.sort(np.roots(np.poly(h)).real)
    assert np.max(np.abs(hermitian_eigenvalues(h) - roots)) <= 1e-9


def test_eigenvalues_degenerate_and_batched():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
    spectrum = np.array([0.1, 0.1, 0.1, 0.1, 0.2, 0.2, 0.2, 0.0])
    h = q @ np.diag(spectrum) @ q.conj().T
    stack = np.array([h, np.diag(spectrum), np.eye(8) / 8])
    ev = hermitian_eigenvalues(stack)
    assert ev.shape == (3, 8)
    assert np.allclose(ev[0], np.sort(spectrum), atol=1e-13)
    assert np.allclose(ev[1], np.sort(spectrum), atol=0)
    assert np.allclose(ev[2], 1 / 8, atol=1e-16)


def test_singular_values_examples():
    assert np.allclose(singular_values(np.eye(4)), [1, 1, 1, 1], atol=1e-14)
    assert np.array_equal(singular_values(np.zeros((3, 3))), np.zeros(3))
    rho = np.zeros((4, 4))
    rho[0, 0] = rho[0, 3] = rho[3, 0] = rho[3, 3] = 0.5
    assert abs(singular_values(realign_loops(rho, 2, 2)).sum() - 2) <= 1e-12


@given(seeds, st.sampled_from([(4, 4), (3, 5), (16, 1), (2, 8)]))
def test_singular_values_match_oracles(seed, shape):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    sv = singular_values(m)
    assert np.all(sv >= 0) and np.all(np.diff(sv) <= 1e-15)
    assert np.max(np.abs(sv - np.linalg.svd(m, compute_uv=False))) <= 1e-9
    if shape == (4, 4):
        # sqrt(m^H m) built independently from its eigen-decomposition
        w, v = np.linalg.eigh(m.conj().T @ m)
        root = v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T
        assert np.max(np.abs(np.sort(sv) - hermitian_eigenvalues(root, tol=1e-9))) <= 1e-9


def test_singular_values_needs_matrix():
    with pytest.raises(DimensionMismatch):
        singular_values(np.ones(3))


def test_is_psd_examples():
    assert is_psd(np.eye(4) / 4, 1e-10)
    assert is_psd(np.diag([0.0, 1.0]), 1e-10)
    # transposed Werner(1) on the second qubit, written by hand
    pt = np.array([
        [0, 0, 0, -0.5],
        [0, 0.5, 0, 0],
        [0, 0, 0.5, 0],
        [-0.5, 0, 0, 0],
    ])
    assert not is_psd(pt, 1e-10)
    assert abs(min_eigenvalue(pt) + 0.5) <= 1e-12


def test_projector_examples():
    assert np.array_equal(projector_from_kets([[1, 0]]), np.diag([1, 0]))
    p = projector_from_kets([[1, 0, 0, 0], [0, 1, 0, 0]])
    assert abs(np.trace(p) - 2) <= 1e-15
    assert np.allclose(hermitian_eigenvalues(p), [0, 0, 1, 1], atol=1e-15)


def test_projector_of_upb_kets_is_rank_four():
    z, o = np.array([1.0, 0]), np.array([0, 1.0])
    p, m = (z + o) / np.sqrt(2), (z - o) / np.sqrt(2)
    kets = [np.kron(np.kron(a, b), c) for a, b, c in [(z, o, p), (o, p, z), (p, z, o), (m, m, m)]]
    proj = projector_from_kets(kets)
    assert abs(np.trace(proj) - 4) <= 1e-12
    assert np.allclose(hermitian_eigenvalues(proj), [0] * 4 + [1] * 4, atol=1e-12)


def test_projector_errors():
    with pytest.raises(DimensionMismatch):
        projector_from_kets([[1, 0], [1, 0, 0, 0]])
    with pytest.raises(DimensionMismatch):
        projector_from_kets([])
    with pytest.raises(ValueError):
        projector_from_kets([[1, 1]])
