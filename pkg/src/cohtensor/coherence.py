"""
Tensor-of-coherences representation of n-qubit operators.

An n-qubit Hermitian operator is expanded in the orthonormal product basis

    Lambda_{j1...jn} = lambda_{j1} (x) ... (x) lambda_{jn},   lambda_j = sigma_j / sqrt(2)

and stored as a real ndarray of shape ``(4,) * n``.  Axis ``k`` of the array is
qubit ``k`` (0-based), so the C-order flattening puts the first qubit on the
most significant base-4 digit, matching the left-to-right Kronecker order.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import BadDimension, BadTrace, IndexOutOfRange
from .smallherm import HERMITIAN_TOL, check_hermitian

__all__ = [
    "SQRT2",
    "INV_SQRT2",
    "pauli_basis_matrix",
    "product_operator",
    "product_basis",
    "flat_offset",
    "multi_index",
    "n_qubits",
    "as_tensor",
    "density_to_tensor",
    "tensor_to_density",
    "two_qubit_components_closed_form",
    "BlochVector",
    "bloch_vector",
    "bloch_radius",
]

SQRT2 = np.sqrt(2.0)
INV_SQRT2 = 1.0 / SQRT2

_SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
_LAMBDA = _SIGMA * INV_SQRT2
_LAMBDA.setflags(write=False)


def pauli_basis_matrix(j):
    """Rescaled Pauli matrix ``lambda_j = sigma_j / sqrt(2)`` for ``j`` in 0..3."""
    if j not in (0, 1, 2, 3):
        raise IndexOutOfRange(f"basis index must be 0..3, got {j!r}")
    return _LAMBDA[j].copy()


def flat_offset(idx):
    """Flat offset of a multi-index, first qubit most significant."""
    off = 0
    for digit in idx:
        if digit not in (0, 1, 2, 3):
            raise IndexOutOfRange(f"digit {digit!r} not in 0..3")
        off = 4 * off + digit
    return off


def multi_index(offset, n):
    """Inverse of :func:`flat_offset`."""
    if not 0 <= offset < 4**n:
        raise IndexOutOfRange(f"offset {offset} out of range for n={n}")
    return tuple(int(d) for d in np.unravel_index(offset, (4,) * n))


def product_operator(idx):
    """``Lambda_{j1...jn}`` as a dense ``2^n x 2^n`` matrix."""
    idx = tuple(idx)
    if not idx:
        raise IndexOutOfRange("empty multi-index")
    flat_offset(idx)
    out = _LAMBDA[idx[0]]
    for j in idx[1:]:
        out = np.kron(out, _LAMBDA[j])
    return out


@lru_cache(maxsize=None)
def _basis_stack(n):
    stack = np.empty((4**n, 2**n, 2**n), dtype=complex)
    for off, idx in enumerate(product(range(4), repeat=n)):
        stack[off] = product_operator(idx)
    stack.setflags(write=False)
    return stack


def product_basis(n):
    """All ``4^n`` product operators stacked in flat-offset order (read-only, cached)."""
    if n < 1:
        raise BadDimension(f"n must be >= 1, got {n}")
    return _basis_stack(n)


def n_qubits(dim):
    n = int(round(np.log2(dim))) if dim > 0 else -1
    if n < 1 or 2**n != dim:
        raise BadDimension(f"dimension {dim} is not a power of two >= 2")
    return n


def as_tensor(t):
    """Validate and return ``t`` as a float array of shape ``(4,)*n``.

    A flat vector of length ``4^n`` is reshaped.
    """
    a = np.asarray(t, dtype=float)
    if a.ndim == 1 and a.size != 4:
        n = int(round(np.log(a.size) / np.log(4))) if a.size > 0 else 0
        if n < 1 or 4**n != a.size:
            raise BadDimension(f"{a.size} components is not a power of 4")
        a = a.reshape((4,) * n)
    if a.ndim < 1 or any(s != 4 for s in a.shape):
        raise BadDimension(f"tensor shape must be (4,)*n, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise BadDimension("tensor has non-finite components")
    return a


def density_to_tensor(rho, tol=HERMITIAN_TOL, check_trace=True):
    """
    Components ``tr(rho Lambda_J)`` of a Hermitian matrix.

    Parameters
    ----------
    rho : array_like, shape (2^n, 2^n)
    tol : float
        Hermiticity and trace tolerance.
    check_trace : bool
        Require ``tr(rho) == 1`` within ``tol``.

    Returns
    -------
    ndarray, shape (4,)*n
    """
    a = check_hermitian(rho, tol)
    if a.ndim != 2:
        raise BadDimension(f"expected a single matrix, got shape {a.shape}")
    n = n_qubits(a.shape[0])
    if check_trace and abs(np.trace(a) - 1.0) > tol:
        raise BadTrace(f"trace {np.trace(a).real:.12g} != 1")
    basis = product_basis(n).reshape(4**n, -1)
    # tr(rho L) = sum_ab rho_ab L_ba
    comps = basis @ a.T.reshape(-1)
    return comps.real.reshape((4,) * n)


def tensor_to_density(t):
    """``sum_J t_J Lambda_J``; no positivity check."""
    a = as_tensor(t)
    n = a.ndim
    return np.tensordot(a.reshape(-1), product_basis(n), axes=1)


def two_qubit_components_closed_form(rho):
    """Sixteen two-qubit components from explicit matrix-entry formulas.

    Independent of :func:`density_to_tensor`; used to cross-check it.
    """
    r = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4):
        raise BadDimension(f"expected a 4x4 matrix, got shape {r.shape}")

    def e(p, q):
        return r[p - 1, q - 1]

    d11, d22, d33, d44 = (e(k, k).real for k in range(1, 5))
    t = np.empty((4, 4))
    t[0, 0] = 0.5 * (d11 + d22 + d33 + d44)
    t[0, 1] = e(1, 2).real + e(3, 4).real
    t[0, 2] = -e(1, 2).imag - e(3, 4).imag
    t[0, 3] = 0.5 * (d11 - d22 + d33 - d44)
    t[1, 0] = e(1, 3).real + e(2, 4).real
    t[2, 0] = -e(1, 3).imag - e(2, 4).imag
    t[3, 0] = 0.5 * (d11 + d22 - d33 - d44)
    t[1, 1] = e(1, 4).real + e(2, 3).real
    t[1, 2] = -e(1, 4).imag + e(2, 3).imag
    t[1, 3] = e(1, 3).real - e(2, 4).real
    t[2, 1] = -e(1, 4).imag - e(2, 3).imag
    t[2, 2] = -e(1, 4).real + e(2, 3).real
    t[2, 3] = -e(1, 3).imag + e(2, 4).imag
    t[3, 1] = e(1, 2).real - e(3, 4).real
    t[3, 2] = -e(1, 2).imag + e(3, 4).imag
    t[3, 3] = 0.5 * (d11 - d22 - d33 + d44)
    return t


@dataclass(frozen=True)
class BlochVector:
    """Affine single-qubit vector ``(c0, c1, c2, c3)``; ``c0 = 1/sqrt(2)`` at unit trace."""

    components: tuple

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        if len(comps) != 4:
            raise BadDimension("a Bloch vector has 4 components")
        object.__setattr__(self, "components", comps)

    @property
    def radius(self):
        return float(np.sqrt(sum(c * c for c in self.components[1:])))

    @property
    def feasible(self):
        return self.radius <= INV_SQRT2 + 1e-12

    @property
    def purity(self):
        return float(sum(c * c for c in self.components))

    def as_array(self):
        return np.array(self.components)


def bloch_vector(t):
    a = as_tensor(t)
    if a.ndim != 1:
        raise BadDimension(f"need a one-qubit tensor, got n={a.ndim}")
    return BlochVector(tuple(a))


def bloch_radius(b):
    """Euclidean norm of the homogeneous part (components 1..3)."""
    if isinstance(b, BlochVector):
        return b.radius
    a = np.asarray(b, dtype=float)
    if a.shape[-1] != 4:
        raise BadDimension("a Bloch vector has 4 components")
    return np.sqrt(np.sum(a[..., 1:] ** 2, axis=-1))
