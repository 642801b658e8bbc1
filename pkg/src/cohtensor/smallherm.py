"""
Dense complex linear algebra for small Hermitian matrices.

Everything here works on matrices of dimension at most 32 (five qubits).
Eigenvalues come from a cyclic complex Jacobi iteration that is vectorised
over any leading batch axes, so a whole parameter grid of 8x8 densities can be
diagonalised in one call.
"""

from functools import reduce

import numpy as np

from .errors import CohTensorError, DimensionMismatch, NotHermitian

__all__ = [
    "HERMITIAN_TOL",
    "kron",
    "check_hermitian",
    "hermitian_eigenvalues",
    "singular_values",
    "is_psd",
    "min_eigenvalue",
    "projector_from_kets",
]

HERMITIAN_TOL = 1e-10
JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def kron(*mats):
    """Kronecker product of one or more matrices, left factor most significant."""
    if not mats:
        raise ValueError("kron needs at least one matrix")
    return reduce(np.kron, (np.asarray(m) for m in mats))


def check_hermitian(m, tol=HERMITIAN_TOL):
    """Return ``m`` as a complex array, raising ``NotHermitian`` if it is not."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise NotHermitian(f"expected square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitian("matrix has non-finite entries")
    dev = np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2)))) if a.size else 0.0
    if dev > tol:
        raise NotHermitian(f"max |m - m^H| = {dev:.3g} exceeds {tol:g}")
    return a


def _jacobi_diagonalize(a):
    """In-place cyclic Jacobi on a stack of Hermitian matrices; returns the diagonal."""
    d = a.shape[-1]
    if d == 1:
        return a[..., 0, :1].real.copy()
    offmask = ~np.eye(d, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a[..., offmask]) ** 2, axis=-1))
        scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2))))
        if np.all(off < JACOBI_OFF_TOL * scale):
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[..., p, q]
                mag = np.abs(apq)
                active = mag > 1e-300
                if not np.any(active):
                    continue
                safe = np.where(active, mag, 1.0)
                phase = np.where(active, apq / safe, 1.0)
                # rotate the pivot onto the positive real axis
                a[..., :, q] *= np.conj(phase)[..., None]
                a[..., q, :] *= phase[..., None]
                tau = (a[..., q, q].real - a[..., p, p].real) / (2.0 * safe)
                sgn = np.where(tau >= 0, 1.0, -1.0)
                t = np.where(active, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cc = c[..., None]
                ss = s[..., None]
                colp = a[..., :, p].copy()
                colq = a[..., :, q].copy()
                a[..., :, p] = cc * colp - ss * colq
                a[..., :, q] = ss * colp + cc * colq
                rowp = a[..., p, :].copy()
                rowq = a[..., q, :].copy()
                a[..., p, :] = cc * rowp - ss * rowq
                a[..., q, :] = ss * rowp + cc * rowq
                a[..., p, q] = 0.0
                a[..., q, p] = 0.0
    return np.diagonal(a, axis1=-2, axis2=-1).real.copy()


def hermitian_eigenvalues(m, tol=HERMITIAN_TOL):
    """
    Eigenvalues of a Hermitian matrix (or a stack of them), ascending.

    Parameters
    ----------
    m : array_like, shape (..., d, d)
        Hermitian within ``tol`` (max entrywise ``|m - m^H|``).
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    ndarray, shape (..., d)
    """
    a = check_hermitian(m, tol)
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    return np.sort(_jacobi_diagonalize(a), axis=-1)


def singular_values(m):
    """Singular values of ``m`` (any shape ``(..., p, q)``), descending."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2:
        raise DimensionMismatch(f"expected a matrix, got shape {a.shape}")
    p, q = a.shape[-2:]
    k = min(p, q)
    if k == 0:
        return np.zeros(a.shape[:-2] + (0,))
    # Hermitian dilation: eigenvalues are +-sigma_i plus |p - q| zeros
    h = np.zeros(a.shape[:-2] + (p + q, p + q), dtype=complex)
    h[..., :p, p:] = a
    h[..., p:, :p] = np.conj(np.swapaxes(a, -1, -2))
    ev = np.sort(_jacobi_diagonalize(h), axis=-1)
    return np.clip(ev[..., ::-1][..., :k], 0.0, None)


def min_eigenvalue(m, tol=HERMITIAN_TOL):
    return hermitian_eigenvalues(m, tol)[..., 0]


def is_psd(m, tol=HERMITIAN_TOL):
    """True iff the smallest eigenvalue of Hermitian ``m`` is ``>= -tol``."""
    return bool(np.all(min_eigenvalue(m) >= -tol))


def projector_from_kets(kets):
    """Sum of outer products ``|psi><psi|`` over unit-norm kets of equal dimension."""
    vecs = [np.asarray(k, dtype=complex).ravel() for k in kets]
    if not vecs:
        raise DimensionMismatch("no kets given")
    dim = vecs[0].size
    out = np.zeros((dim, dim), dtype=complex)
    for v in vecs:
        if v.size != dim:
            raise DimensionMismatch(f"ket of length {v.size}, expected {dim}")
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise CohTensorError("kets must have unit norm")
        out += np.outer(v, v.conj())
    return out
