"""
Parameterised two- and three-qubit state families with known spectra.

Every constructor returns a :class:`FamilyPoint` whose tensor is built from
components; matrices, spectra and purities are derived from it.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .analysis import partial_transpose, purity
from .coherence import SQRT2, tensor_to_density
from .errors import EmptyGrid, OutOfRange
from .smallherm import hermitian_eigenvalues, projector_from_kets

__all__ = [
    "FamilyPoint",
    "bell",
    "werner",
    "werner_prime",
    "tripartite",
    "upb_family",
    "npt_family",
    "TRIPARTITE_MAX",
    "UPB_MAX",
    "werner_spectrum",
    "werner_pt_min_eigenvalue",
    "tripartite_spectrum",
    "upb_spectrum",
    "npt_spectrum",
    "npt_pt_spectrum",
    "upb_kets",
    "upb_density_from_kets",
    "RegionSample",
    "npt_region_map",
    "npt_region_class_closed_form",
    "write_region_csv",
    "family_tensor",
]

TRIPARTITE_MAX = 1.0 / (2.0 * SQRT2)
UPB_MAX = 1.0 / (8.0 * SQRT2)
_C3 = 1.0 / (2.0 * SQRT2)

NOT_A_DENSITY = "not-a-density"
PPT = "PPT"
NPT = "NPT-entangled"


@dataclass(frozen=True)
class FamilyPoint:
    name: str
    params: tuple
    tensor: np.ndarray

    @property
    def matrix(self):
        return tensor_to_density(self.tensor)

    @property
    def spectrum(self):
        return hermitian_eigenvalues(self.matrix)

    @property
    def purity(self):
        return purity(self.tensor)


def _check_range(name, value, lo, hi):
    if not lo - 1e-15 <= value <= hi + 1e-15:
        raise OutOfRange(f"{name}: parameter {value!r} outside [{lo:.12g}, {hi:.12g}]")


def bell():
    t = np.zeros((4, 4))
    t[0, 0] = 0.5
    t[1, 1], t[2, 2], t[3, 3] = 0.5, -0.5, 0.5
    return FamilyPoint("bell", (), t)


def werner(x):
    """``1/2 L00 - x/2 (L11 + L22 + L33)``, ``0 <= x <= 1``."""
    _check_range("werner", x, 0.0, 1.0)
    t = np.zeros((4, 4))
    t[0, 0] = 0.5
    t[1, 1] = t[2, 2] = t[3, 3] = -x / 2
    return FamilyPoint("werner", (x,), t)


def werner_prime(x):
    """Local-unitary partner of :func:`werner` with ``x/2`` corner coherences."""
    _check_range("werner-prime", x, 0.0, 1.0)
    t = np.zeros((4, 4))
    t[0, 0] = 0.5
    t[1, 1], t[2, 2], t[3, 3] = x / 2, -x / 2, x / 2
    return FamilyPoint("werner-prime", (x,), t)


def werner_spectrum(x):
    return np.array([(1 - x) / 4] * 3 + [(1 + 3 * x) / 4])


def werner_pt_min_eigenvalue(x):
    return min((1 - 3 * x) / 4, (1 + x) / 4)


def tripartite(x):
    """``1/(2 sqrt 2) L000 + x L111``, a density for ``|x| <= 1/(2 sqrt 2)``."""
    _check_range("tripartite", x, -TRIPARTITE_MAX, TRIPARTITE_MAX)
    t = np.zeros((4, 4, 4))
    t[0, 0, 0] = _C3
    t[1, 1, 1] = x
    return FamilyPoint("tripartite", (x,), t)


def tripartite_spectrum(x):
    d = x / (2 * SQRT2)
    return np.sort([0.125 - d] * 4 + [0.125 + d] * 4)


_UPB_PLUS = ("031", "033", "103", "111", "133", "303", "310", "313", "330", "331")
_UPB_MINUS = ("011", "013", "101", "110", "130", "301")


def upb_family(x):
    """Three-qubit PPT family reaching the UPB bound-entangled state at ``x = 1/(8 sqrt 2)``."""
    _check_range("upb", x, -UPB_MAX, UPB_MAX)
    t = np.zeros((4, 4, 4))
    t[0, 0, 0] = _C3
    for s in _UPB_PLUS:
        t[tuple(int(c) for c in s)] = x
    for s in _UPB_MINUS:
        t[tuple(int(c) for c in s)] = -x
    return FamilyPoint("upb", (x,), t)


def upb_spectrum(x):
    d = SQRT2 * x
    return np.sort([0.125 - d] * 4 + [0.125 + d] * 4)


def upb_kets():
    """The four product kets ``|01+>, |1+0>, |+01>, |--->``."""
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    plus = (zero + one) / SQRT2
    minus = (zero - one) / SQRT2

    def ket(*factors):
        out = factors[0]
        for f in factors[1:]:
            out = np.kron(out, f)
        return out

    return [ket(zero, one, plus), ket(one, plus, zero), ket(plus, zero, one), ket(minus, minus, minus)]


def upb_density_from_kets():
    """``(1 - sum |psi_j><psi_j|) / 4`` from the UPB kets."""
    return 0.25 * (np.eye(8) - projector_from_kets(upb_kets()))


def npt_family(x, y):
    """``1/(2 sqrt 2) L000 + x L122 + x L212 + y L330``; any ``(x, y)`` is accepted."""
    t = np.zeros((4, 4, 4))
    t[0, 0, 0] = _C3
    t[1, 2, 2] = x
    t[2, 1, 2] = x
    t[3, 3, 0] = y
    return FamilyPoint("npt-abc", (x, y), t)


def npt_spectrum(x, y):
    a = 2 * SQRT2
    vals = [(1 - a * y) / 8] * 4 + [(1 + a * (y + 2 * x)) / 8] * 2 + [(1 + a * (y - 2 * x)) / 8] * 2
    return np.sort(vals)


def npt_pt_spectrum(x, y):
    """Spectrum of the transpose on qubit 1 or 2 (the two coincide)."""
    return npt_spectrum(x, -y)


@dataclass(frozen=True)
class RegionSample:
    x: float
    y: float
    min_eig_rho: float
    min_eig_pt: float
    cls: str


def _classify(min_rho, min_pt, tol):
    if min_rho < -tol:
        return NOT_A_DENSITY
    if min_pt < -tol:
        return NPT
    return PPT


def npt_region_class_closed_form(x, y, tol=1e-10):
    """Class from the closed-form triangle inequalities alone."""
    return _classify(float(npt_spectrum(x, y)[0]), float(npt_pt_spectrum(x, y)[0]), tol)


def npt_region_map(xs, ys, tol=1e-10, pt_qubit=0):
    """
    Classify every ``(x, y)`` of a rectangular grid by eigensolver.

    Samples are ordered with ``x`` as the outer loop.  Boundary samples
    (``|min eig| <= tol``) land on the non-entangled side.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    if xs.size == 0 or ys.size == 0:
        raise EmptyGrid("region grid is empty")
    pts = [(x, y) for x in xs for y in ys]
    tensors = np.array([npt_family(x, y).tensor for x, y in pts])
    pts_t = np.array([partial_transpose(t, pt_qubit) for t in tensors])
    rho = np.array([tensor_to_density(t) for t in tensors])
    rho_pt = np.array([tensor_to_density(t) for t in pts_t])
    min_rho = hermitian_eigenvalues(rho)[:, 0]
    min_pt = hermitian_eigenvalues(rho_pt)[:, 0]
    return [
        RegionSample(float(x), float(y), float(mr), float(mp), _classify(mr, mp, tol))
        for (x, y), mr, mp in zip(pts, min_rho, min_pt)
    ]


def write_region_csv(samples, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["x", "y", "min_eig_rho", "min_eig_pt", "class"])
    for s in samples:
        w.writerow([f"{s.x:.12g}", f"{s.y:.12g}", f"{s.min_eig_rho:.12g}", f"{s.min_eig_pt:.12g}", s.cls])


_FAMILIES = {
    "bell": lambda x, y: bell(),
    "werner": lambda x, y: werner(x),
    "werner-prime": lambda x, y: werner_prime(x),
    "tripartite": lambda x, y: tripartite(x),
    "upb": lambda x, y: upb_family(x),
    "npt-abc": lambda x, y: npt_family(x, y),
}


def family_tensor(name, x=0.0, y=0.0):
    """Look up a family by its command-line name."""
    try:
        build = _FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; choose from {sorted(_FAMILIES)}") from None
    return build(x, y)
