"""Independent oracles and random generators for the test suite.

Nothing here calls into the package's conversion or linear-algebra code:
matrices are built from explicit Pauli matrices and checked with numpy.linalg.
"""

import numpy as np

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
LAM = SIGMA / np.sqrt(2)


def random_hermitian(d, rng, scale=1.0):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (g + g.conj().T) / 2


def random_unit_trace_hermitian(n, rng):
    d = 2**n
    h = random_hermitian(d, rng, scale=1.0 / d)
    return h + (1 - np.trace(h).real) / d * np.eye(d)


def random_density(n, rng, rank=None):
    d = 2**n
    r = d if rank is None else rank
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_bloch(rng, radius=None):
    """Affine Bloch vector with the given radius (uniform in the ball if None)."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    r = (1 / np.sqrt(2)) * rng.uniform() ** (1 / 3) if radius is None else radius
    return np.concatenate([[1 / np.sqrt(2)], r * v])


def qubit_matrix(b):
    return np.tensordot(np.asarray(b, dtype=float), LAM, axes=1)


def kron_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def tensor_matrix(t):
    """Sum of components times explicit product operators."""
    t = np.asarray(t, dtype=float)
    n = t.ndim
    out = np.zeros((2**n, 2**n), dtype=complex)
    for idx in np.ndindex(t.shape):
        if t[idx] != 0:
            out += t[idx] * kron_all([LAM[j] for j in idx])
    return out


def matrix_components(rho):
    """``tr(rho Lambda_J)`` for every multi-index, by explicit products."""
    n = int(np.log2(rho.shape[0]))
    t = np.empty((4,) * n)
    for idx in np.ndindex(t.shape):
        t[idx] = np.trace(rho @ kron_all([LAM[j] for j in idx])).real
    return t


def mixture_matrix(weights, factors):
    return sum(w * kron_all([qubit_matrix(f) for f in fs]) for w, fs in zip(weights, factors))


def matrix_partial_trace(rho, traced, n):
    r = rho.reshape((2,) * (2 * n))
    kept = [k for k in range(n) if k not in traced]
    letters = "abcdefghijklmnop"
    row = [letters[k] for k in range(n)]
    col = [letters[k] if k in traced else letters[n + k] for k in range(n)]
    out = "".join(letters[k] for k in kept) + "".join(letters[n + k] for k in kept)
    red = np.einsum("".join(row) + "".join(col) + "->" + out, r)
    d = 2 ** len(kept)
    return red.reshape(d, d)


def matrix_partial_transpose(rho, k, n):
    r = rho.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    axes[k], axes[n + k] = axes[n + k], axes[k]
    return r.transpose(axes).reshape(2**n, 2**n)


def realign_loops(rho, da, db):
    """Entry ``((i, j), (k, l))`` of the result is ``rho[(i, k), (j, l)]``."""
    out = np.zeros((da * da, db * db), dtype=complex)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                for l in range(db):
                    out[i * da + j, k * db + l] = rho[i * db + k, j * db + l]
    return out


def trace_norm(m):
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))
