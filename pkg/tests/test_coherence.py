import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohtensor.coherence import (
    INV_SQRT2,
    BlochVector,
    as_tensor,
    bloch_radius,
    bloch_vector,
    density_to_tensor,
    flat_offset,
    multi_index,
    pauli_basis_matrix,
    product_basis,
    product_operator,
    tensor_to_density,
    two_qubit_components_closed_form,
)
from cohtensor.errors import BadDimension, BadTrace, IndexOutOfRange, NotHermitian
from helpers import (
    LAM,
    kron_all,
    matrix_components,
    random_density,
    random_unit_trace_hermitian,
    tensor_matrix,
)

seeds = st.integers(0, 2**32 - 1)
r = INV_SQRT2


def test_basis_matrices():
    assert np.array_equal(pauli_basis_matrix(0), np.array([[r, 0], [0, r]]))
    assert np.array_equal(pauli_basis_matrix(3), np.array([[r, 0], [0, -r]]))
    for j in range(4):
        for k in range(4):
            ip = np.trace(pauli_basis_matrix(j) @ pauli_basis_matrix(k))
            assert abs(ip - (j == k)) <= 1e-15


def test_basis_matrix_is_a_copy():
    m = pauli_basis_matrix(1)
    m[0, 0] = 9
    assert pauli_basis_matrix(1)[0, 0] == 0


@pytest.mark.parametrize("j", [-1, 4, 1.5, "1"])
def test_basis_matrix_bad_index(j):
    with pytest.raises(IndexOutOfRange):
        pauli_basis_matrix(j)


def test_offsets():
    assert flat_offset((0, 0)) == 0
    assert flat_offset((1, 2, 3)) == 16 + 8 + 3
    assert multi_index(27, 3) == (1, 2, 3)
    for off in range(64):
        assert flat_offset(multi_index(off, 3)) == off
    with pytest.raises(IndexOutOfRange):
        flat_offset((0, 4))
    with pytest.raises(IndexOutOfRange):
        multi_index(64, 3)


def test_product_operator_examples():
    assert np.allclose(product_operator((0, 0)), np.eye(4) / 2, atol=1e-15)
    for idx in np.ndindex(4, 4):
        m = product_operator(idx)
        assert np.allclose(m, kron_all([LAM[j] for j in idx]))
        if idx != (0, 0):
            assert abs(np.trace(m)) <= 1e-15
            assert np.allclose(np.linalg.eigvalsh(m), [-0.5, -0.5, 0.5, 0.5], atol=1e-15)
    with pytest.raises(IndexOutOfRange):
        product_operator(())


def test_product_basis_orthonormal_and_cached():
    b = product_basis(2).reshape(16, -1)
    gram = b.conj() @ b.T
    assert np.allclose(gram, np.eye(16), atol=1e-15)
    assert product_basis(3) is product_basis(3)
    assert not product_basis(2).flags.writeable
    with pytest.raises(BadDimension):
        product_basis(0)


def test_completely_mixed():
    t = density_to_tensor(np.eye(4) / 4)
    expected = np.zeros((4, 4))
    expected[0, 0] = 0.5
    assert np.allclose(t, expected, atol=1e-15)
    assert np.allclose(tensor_to_density(expected), np.eye(4) / 4, atol=1e-15)


def test_bell_matrix_components():
    rho = np.zeros((4, 4))
    rho[0, 0] = rho[0, 3] = rho[3, 0] = rho[3, 3] = 0.5
    expected = np.zeros((4, 4))
    expected[0, 0], expected[1, 1], expected[2, 2], expected[3, 3] = 0.5, 0.5, -0.5, 0.5
    assert np.allclose(density_to_tensor(rho), expected, atol=1e-15)
    assert np.allclose(two_qubit_components_closed_form(rho), expected, atol=1e-15)


@pytest.mark.parametrize("x", [0.0, 0.2, 1 / 3, 0.7, 1.0])
def test_werner_matrix_both_ways(x):
    rho = np.array([
        [(1 - x) / 4, 0, 0, 0],
        [0, (1 + x) / 4, -x / 2, 0],
        [0, -x / 2, (1 + x) / 4, 0],
        [0, 0, 0, (1 - x) / 4],
    ])
    t = np.zeros((4, 4))
    t[0, 0] = 0.5
    t[1, 1] = t[2, 2] = t[3, 3] = -x / 2
    assert np.allclose(density_to_tensor(rho), t, atol=1e-15)
    assert np.allclose(tensor_to_density(t), rho, atol=1e-15)


@pytest.mark.parametrize("x", [-0.3, 0.0, 0.1, 1 / (2 * np.sqrt(2))])
def test_tripartite_matrix(x):
    t = np.zeros((4, 4, 4))
    t[0, 0, 0] = 1 / (2 * np.sqrt(2))
    t[1, 1, 1] = x
    expected = np.eye(8) / 8 + np.fliplr(np.eye(8)) * x / (2 * np.sqrt(2))
    assert np.allclose(tensor_to_density(t), expected, atol=1e-15)


def test_conversion_errors():
    with pytest.raises(NotHermitian):
        density_to_tensor(np.array([[0.5, 1.0], [0.0, 0.5]]))
    with pytest.raises(BadTrace):
        density_to_tensor(np.eye(2))
    with pytest.raises(BadDimension):
        density_to_tensor(np.eye(3) / 3)
    with pytest.raises(BadDimension):
        density_to_tensor(np.eye(1))
    assert density_to_tensor(np.eye(2), check_trace=False)[0] == pytest.approx(np.sqrt(2))


def test_as_tensor_shapes():
    flat = np.arange(16.0)
    assert as_tensor(flat).shape == (4, 4)
    assert as_tensor(np.zeros(4)).shape == (4,)
    for bad in (np.zeros(8), np.zeros((4, 3)), np.array([np.nan, 0, 0, 0]), np.zeros(0)):
        with pytest.raises(BadDimension):
            as_tensor(bad)


@settings(max_examples=40)
@given(seeds, st.integers(1, 4))
def test_round_trip_both_directions(seed, n):
    rng = np.random.default_rng(seed)
    rho = random_unit_trace_hermitian(n, rng)
    t = density_to_tensor(rho)
    assert np.max(np.abs(tensor_to_density(t) - rho)) <= 1e-12
    assert np.max(np.abs(density_to_tensor(tensor_to_density(t)) - t)) <= 1e-12
    assert abs(t.reshape(-1)[0] - INV_SQRT2**n) <= 1e-12


@settings(max_examples=25)
@given(seeds, st.integers(1, 3))
def test_against_explicit_products(seed, n):
    rng = np.random.default_rng(seed)
    rho = random_density(n, rng)
    t = density_to_tensor(rho)
    assert np.max(np.abs(t - matrix_components(rho))) <= 1e-12
    assert np.max(np.abs(tensor_to_density(t) - tensor_matrix(t))) <= 1e-12


@given(seeds, st.integers(1, 4))
def test_parseval(seed, n):
    rng = np.random.default_rng(seed)
    rho = random_density(n, rng)
    t = density_to_tensor(rho)
    assert abs(np.sum(t**2) - np.trace(rho @ rho).real) <= 1e-12


@given(seeds)
def test_closed_form_agrees_with_generic(seed):
    rho = random_density(2, np.random.default_rng(seed))
    assert np.max(np.abs(two_qubit_components_closed_form(rho) - density_to_tensor(rho))) <= 1e-12


def test_closed_form_needs_two_qubits():
    with pytest.raises(BadDimension):
        two_qubit_components_closed_form(np.eye(2) / 2)


def test_bloch_vector_examples():
    assert bloch_vector(density_to_tensor(np.eye(2) / 2)).radius == 0
    pure = bloch_vector(density_to_tensor(np.diag([1.0, 0.0])))
    assert abs(pure.radius - INV_SQRT2) <= 1e-15
    assert pure.feasible
    b = BlochVector((INV_SQRT2, 0.3, 0, 0))
    assert b.radius == pytest.approx(0.3, abs=1e-15)
    assert bloch_radius(b) == b.radius
    assert bloch_radius([INV_SQRT2, 0, 0.6, 0.8]) == pytest.approx(1.0)
    assert not BlochVector((INV_SQRT2, 0, 0.6, 0.8)).feasible
    with pytest.raises(BadDimension):
        bloch_vector(np.zeros((4, 4)))
    with pytest.raises(BadDimension):
        BlochVector((1, 2, 3))


@given(seeds)
def test_bloch_purity_relation(seed):
    b = bloch_vector(density_to_tensor(random_density(1, np.random.default_rng(seed))))
    assert abs(b.purity - (0.5 + b.radius**2)) <= 1e-12
    assert b.radius <= INV_SQRT2 + 1e-12
