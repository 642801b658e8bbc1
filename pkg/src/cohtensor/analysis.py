"""
Structural operations and entanglement tests on coherence tensors.

Qubit positions are 0-based axis numbers of the tensor.  Reductions, partial
transposes and the trace-square inequalities are computed directly on the
components; only the positivity tests (PPT, realignment) go back to matrices.
"""

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .coherence import SQRT2, as_tensor, tensor_to_density
from .errors import BadDimension, BadPartition, BadPosition, BadSubset, NotADensity
from .smallherm import hermitian_eigenvalues, singular_values

__all__ = [
    "PSD_TOL",
    "purity",
    "partial_trace",
    "reduce_to",
    "partial_transpose",
    "ppt_test",
    "index2_free",
    "correlation_tensor",
    "uncorrelation_test",
    "norm_decomposition",
    "reduced_purities",
    "trace_square_chain",
    "realigned_matrix",
    "realignment_norm",
    "max_realignment_norm",
    "bipartitions",
    "realignment_partitions",
    "classical_correlation_example",
    "AnalysisReport",
    "analyze",
]

PSD_TOL = 1e-10


def purity(t):
    """``tr(rho^2)`` as the squared Euclidean norm of the components."""
    a = as_tensor(t)
    return float(np.sum(a * a))


def _positions(traced, n):
    try:
        s = {int(k) for k in traced}
    except TypeError:
        s = {int(traced)}
    if not s or len(s) >= n or min(s) < 0 or max(s) >= n:
        raise BadSubset(f"{sorted(s)} is not a nonempty proper subset of qubits 0..{n - 1}")
    return s


def partial_trace(t, traced):
    """
    Trace out the qubits in ``traced``.

    Each traced index is pinned to 0 and the result is rescaled by sqrt(2)
    per traced qubit, so the surviving constant component is ``(1/sqrt(2))^m``.
    """
    a = as_tensor(t)
    s = _positions(traced, a.ndim)
    sel = tuple(0 if k in s else slice(None) for k in range(a.ndim))
    return a[sel] * SQRT2 ** len(s)


def reduce_to(t, kept):
    """Reduced tensor on the qubits in ``kept`` (all of them returns ``t`` itself)."""
    a = as_tensor(t)
    kept = set(kept)
    if kept == set(range(a.ndim)):
        return a.copy()
    return partial_trace(a, set(range(a.ndim)) - kept)


def _check_position(k, n):
    if not isinstance(k, (int, np.integer)) or not 0 <= k < n:
        raise BadPosition(f"qubit position {k!r} not in 0..{n - 1}")


def partial_transpose(t, k):
    """Transpose on qubit ``k``: negate every component whose ``k``-th digit is 2."""
    a = as_tensor(t)
    _check_position(k, a.ndim)
    out = a.copy()
    sel = [slice(None)] * a.ndim
    sel[k] = 2
    out[tuple(sel)] *= -1.0
    return out


def ppt_test(t, k, tol=PSD_TOL):
    """
    Positivity of the partial transpose on qubit ``k``.

    Returns
    -------
    (bool, float)
        Whether the transposed matrix is PSD within ``tol``, and its smallest
        eigenvalue.

    Raises
    ------
    NotADensity
        If ``t`` itself does not reconstruct to a PSD matrix.
    """
    a = as_tensor(t)
    _check_position(k, a.ndim)
    rho_min = hermitian_eigenvalues(tensor_to_density(a))[0]
    if rho_min < -tol:
        raise NotADensity(f"min eigenvalue {rho_min:.3g} < -{tol:g}")
    pt_min = float(hermitian_eigenvalues(tensor_to_density(partial_transpose(a, k)))[0])
    return pt_min >= -tol, pt_min


def index2_free(t, tol=1e-14):
    """True iff every component with a digit 2 anywhere vanishes (sufficient for PPT)."""
    a = as_tensor(t)
    mask = np.zeros(a.shape, dtype=bool)
    for k in range(a.ndim):
        sel = [slice(None)] * a.ndim
        sel[k] = 2
        mask[tuple(sel)] = True
    return bool(np.all(np.abs(a[mask]) <= tol))


def _two_qubit(t):
    a = as_tensor(t)
    if a.ndim != 2:
        raise BadDimension(f"two-qubit tensor required, got n={a.ndim}")
    return a


def correlation_tensor(t):
    """3x3 array ``c[j-1, k-1] = t[j, k] - rA[j] rB[k]`` for ``j, k`` in 1..3."""
    a = _two_qubit(t)
    ra = SQRT2 * a[:, 0]
    rb = SQRT2 * a[0, :]
    return a[1:, 1:] - np.outer(ra[1:], rb[1:])


def uncorrelation_test(t, tol=1e-12):
    """True iff every component equals the product of the single-qubit reductions."""
    a = as_tensor(t)
    n = a.ndim
    if n == 1:
        return True
    singles = [partial_trace(a, set(range(n)) - {k}) for k in range(n)]
    prod = singles[0]
    for v in singles[1:]:
        prod = np.multiply.outer(prod, v)
    return bool(np.max(np.abs(prod - a)) <= tol)


def norm_decomposition(t):
    """
    Split the two-qubit purity into product, correlation and cross parts.

    ``purity = |rA|^2 |rB|^2 + sum c^2 + 2 sum_{j,k>=1} rA_j rB_k c_jk`` holds
    exactly; the returned triple is ``(product, correlation, cross)``.
    """
    a = _two_qubit(t)
    ra = SQRT2 * a[:, 0]
    rb = SQRT2 * a[0, :]
    c = correlation_tensor(a)
    prod = float(np.dot(ra, ra) * np.dot(rb, rb))
    corr = float(np.sum(c * c))
    cross = float(2.0 * np.sum(np.outer(ra[1:], rb[1:]) * c))
    return prod, corr, cross


def reduced_purities(t):
    """Purity of every reduction, keyed by the frozenset of kept qubits (full set included)."""
    a = as_tensor(t)
    n = a.ndim
    out = {}
    for size in range(1, n + 1):
        for kept in combinations(range(n), size):
            sel = tuple(slice(None) if k in kept else 0 for k in range(n))
            # 2^m sum(t^2) rather than squaring sqrt(2)-scaled components: exact for dyadic inputs
            out[frozenset(kept)] = float(2 ** (n - size) * np.sum(a[sel] ** 2))
    return out


def trace_square_chain(t, tol=1e-12):
    """
    Necessary separability condition on nested reductions.

    True iff ``purity(rho_S) >= purity(rho_T) - tol`` for every pair of
    nonempty qubit sets ``S`` strictly contained in ``T``.  False certifies
    entanglement.
    """
    pur = reduced_purities(t)
    for big, pb in pur.items():
        for small, ps in pur.items():
            if small < big and ps < pb - tol:
                return False
    return True


def _check_parts(parts, n):
    try:
        left, right = parts
        left = sorted({int(k) for k in left})
        right = sorted({int(k) for k in right})
    except (TypeError, ValueError) as exc:
        raise BadPartition(f"bad bipartition {parts!r}") from exc
    if not left or not right or set(left) & set(right):
        raise BadPartition(f"{left}|{right} must be nonempty and disjoint")
    if min(left + right) < 0 or max(left + right) >= n:
        raise BadPartition(f"{left}|{right} refers to qubits outside 0..{n - 1}")
    return left, right


def realigned_matrix(t, parts):
    """
    Realignment of the density across ``(left, right)``.

    Both indices of every ``left`` qubit go to the rows and both indices of
    every ``right`` qubit to the columns.  Qubits in neither set keep their row
    index on the rows and column index on the columns.  When the two sets
    cover all qubits this is the usual reshuffling: with ``i, j`` indexing the
    left block and ``k, l`` the right block, entry ``((i, j), (k, l))`` is
    ``rho[(i, k), (j, l)]``.
    """
    a = as_tensor(t)
    n = a.ndim
    left, right = _check_parts(parts, n)
    rest = [k for k in range(n) if k not in left and k not in right]
    rho = tensor_to_density(a).reshape((2,) * (2 * n))
    rows = left + [n + k for k in left] + rest
    cols = right + [n + k for k in right] + [n + k for k in rest]
    m = rho.transpose(rows + cols)
    return m.reshape(4 ** len(left) * 2 ** len(rest), 4 ** len(right) * 2 ** len(rest))


def realignment_norm(t, parts):
    """
    Trace norm of :func:`realigned_matrix`.

    A value above 1 rules out states that are products across ``left``,
    ``right`` and the remaining qubits; with no remaining qubits this is the
    bipartite realignment test.
    """
    return float(np.sum(singular_values(realigned_matrix(t, parts))))


def bipartitions(n):
    """Each unordered bipartition once, as ``(left, right)`` with qubit 0 on the left."""
    rest = list(range(1, n))
    out = []
    for size in range(0, n - 1):
        for extra in combinations(rest, size):
            left = (0,) + extra
            right = tuple(k for k in range(n) if k not in left)
            out.append((left, right))
    return out


def realignment_partitions(n):
    """Every unordered pair of disjoint nonempty qubit sets (spectators allowed)."""
    out = []
    for labels in product((0, 1, 2), repeat=n):
        left = tuple(k for k, c in enumerate(labels) if c == 1)
        right = tuple(k for k, c in enumerate(labels) if c == 2)
        if left and right and left[0] < right[0]:
            out.append((left, right))
    out.sort(key=lambda lr: (len(lr[0]) + len(lr[1]) != n, lr))
    return out


def max_realignment_norm(t):
    a = as_tensor(t)
    return max(realignment_norm(a, p) for p in realignment_partitions(a.ndim))


def classical_correlation_example(a=0.1):
    """
    Two-qubit state whose purity factorises although it is correlated.

    Local components ``t01 = t03 = t10 = t30 = a``; the single correlation
    component ``t13 = rA rB`` makes ``tr rho^2 = tr rhoA^2 tr rhoB^2`` exact
    while ``t13 != rA^1 rB^3``.  No index 2 appears, so the correlation is
    classical.
    """
    t = np.zeros((4, 4))
    t[0, 0] = 0.5
    t[0, 1] = t[0, 3] = t[1, 0] = t[3, 0] = a
    ra = SQRT2 * np.array([a, 0.0, a])
    rb = SQRT2 * np.array([a, 0.0, a])
    # purity factorises iff t13^2 + t31^2 equals |rA|^2 |rB|^2
    t[1, 3] = np.linalg.norm(ra) * np.linalg.norm(rb)
    t[3, 1] = 0.0
    return t


@dataclass
class AnalysisReport:
    n: int
    purity: float
    bloch_radii: list
    reduced_purities: dict
    ppt: list
    ppt_min_eigenvalues: list
    index2_free: bool
    chain_ok: bool
    realignment_norms: dict = field(default_factory=dict)

    def as_dict(self):
        def label(s):
            return "".join(str(k + 1) for k in sorted(s))

        return {
            "n": self.n,
            "purity": self.purity,
            "bloch_radii": list(self.bloch_radii),
            "reduced_purities": {label(k): v for k, v in sorted(
                self.reduced_purities.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))},
            "ppt": list(self.ppt),
            "ppt_min_eigenvalues": list(self.ppt_min_eigenvalues),
            "index2_free": self.index2_free,
            "trace_square_chain": self.chain_ok,
            "realignment_norms": {
                f"{label(l)}|{label(r)}": v for (l, r), v in self.realignment_norms.items()
            },
        }


def analyze(t, tol=PSD_TOL):
    """Collect every diagnostic of this module for a density tensor."""
    a = as_tensor(t)
    n = a.ndim
    rho_min = hermitian_eigenvalues(tensor_to_density(a))[0]
    if rho_min < -tol:
        raise NotADensity(f"min eigenvalue {rho_min:.3g} < -{tol:g}")
    pur = reduced_purities(a)
    radii = []
    for k in range(n):
        v = reduce_to(a, [k])
        radii.append(float(np.sqrt(np.sum(v[1:] ** 2))))
    flags, mins = [], []
    for k in range(n):
        ok, m = ppt_test(a, k, tol)
        flags.append(ok)
        mins.append(m)
    full = frozenset(range(n))
    return AnalysisReport(
        n=n,
        purity=pur[full],
        bloch_radii=radii,
        reduced_purities={k: v for k, v in pur.items() if k != full},
        ppt=flags,
        ppt_min_eigenvalues=mins,
        index2_free=index2_free(a),
        chain_ok=trace_square_chain(a),
        realignment_norms={p: realignment_norm(a, p) for p in realignment_partitions(n)},
    )
