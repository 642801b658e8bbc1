"""
Convex mixtures of product states and the explicit decompositions built on them.

A :class:`Mixture` stores weights ``w`` of shape ``(p,)`` and affine Bloch
factors of shape ``(p, n, 4)``.  Factors whose Bloch radius exceeds
``1/sqrt(2)`` are allowed: they compile like any other term, and
:func:`feasibility` reports them.
"""

from dataclasses import dataclass, field

import numpy as np

from .coherence import INV_SQRT2, SQRT2, BlochVector
from .errors import BadSubset, BadWeight, EmptyGrid, NegativeParameter, WeightNotNormalized

__all__ = [
    "MixtureTerm",
    "Mixture",
    "FeasibilityReport",
    "GadgetParams",
    "ScanResult",
    "compile_mixture",
    "feasibility",
    "reduce_mixture",
    "werner_mixture",
    "werner_pair_mixture",
    "three_body_gadget",
    "gadget_a",
    "gadget_a_weights",
    "gadget_a_bounds",
    "gadget_b",
    "gadget_b_bounds",
    "upb_mixture_36",
    "separability_scan",
    "feasible_halfwidth",
    "factor_purities",
]

RADIUS_TOL = 1e-12
WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class MixtureTerm:
    weight: float
    factors: tuple

    @property
    def feasible(self):
        return all(f.feasible for f in self.factors)


@dataclass(frozen=True)
class GadgetParams:
    x: float
    weights: tuple
    amplitudes: dict


@dataclass(frozen=True, eq=False)
class Mixture:
    weights: np.ndarray
    factors: np.ndarray
    label: str = ""
    params: GadgetParams = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        f = np.asarray(self.factors, dtype=float)
        if f.ndim != 3 or f.shape[-1] != 4 or f.shape[0] != w.size:
            raise ValueError(f"factors must have shape ({w.size}, n, 4), got {f.shape}")
        w.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "factors", f)

    @classmethod
    def from_terms(cls, terms, label=""):
        """Build from ``(weight, [bloch, bloch, ...])`` pairs or :class:`MixtureTerm`."""
        ws, fs = [], []
        for term in terms:
            if isinstance(term, MixtureTerm):
                w, facs = term.weight, term.factors
            else:
                w, facs = term
            ws.append(w)
            fs.append([f.as_array() if isinstance(f, BlochVector) else f for f in facs])
        return cls(np.array(ws, dtype=float), np.array(fs, dtype=float), label)

    @property
    def n(self):
        return self.factors.shape[1]

    def __len__(self):
        return self.weights.size

    @property
    def terms(self):
        return [
            MixtureTerm(float(w), tuple(BlochVector(tuple(v)) for v in f))
            for w, f in zip(self.weights, self.factors)
        ]

    def subset(self, indices, renormalize=True):
        idx = list(indices)
        w = self.weights[idx]
        if renormalize:
            w = w / w.sum()
        return Mixture(w, self.factors[idx], self.label)

    def compile(self):
        return compile_mixture(self)


def compile_mixture(m):
    """Tensor ``sum_p w_p (x)_k f_{p,k}`` of a normalised mixture."""
    if abs(m.weights.sum() - 1.0) > WEIGHT_TOL:
        raise WeightNotNormalized(f"weights sum to {m.weights.sum():.15g}")
    acc = m.weights[:, None] * m.factors[:, 0, :]
    for k in range(1, m.n):
        acc = acc[..., None] * m.factors[:, k, :].reshape((-1,) + (1,) * (acc.ndim - 1) + (4,))
    return acc.sum(axis=0)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    worst_radius: float
    worst_term: int
    worst_qubit: int

    def as_dict(self):
        return {
            "feasible": self.feasible,
            "worst_radius": self.worst_radius,
            "worst_term": self.worst_term,
            "worst_qubit": self.worst_qubit,
        }


def feasibility(m):
    """Whether every factor is a genuine qubit density, and where the largest radius sits."""
    radii = np.sqrt(np.sum(m.factors[..., 1:] ** 2, axis=-1))
    term, qubit = np.unravel_index(np.argmax(radii), radii.shape)
    worst = float(radii[term, qubit])
    ok = worst <= INV_SQRT2 + RADIUS_TOL and bool(np.all(m.weights >= -1e-14))
    return FeasibilityReport(bool(ok), worst, int(term), int(qubit))


def factor_purities(m):
    """``1/2 + r^2`` for every factor, shape ``(terms, n)``."""
    return np.sum(m.factors**2, axis=-1)


def reduce_mixture(m, traced):
    """Drop the traced qubits from every term; weights are unchanged."""
    traced = {int(k) for k in traced}
    if not traced or len(traced) >= m.n or min(traced) < 0 or max(traced) >= m.n:
        raise BadSubset(f"{sorted(traced)} is not a nonempty proper subset of 0..{m.n - 1}")
    kept = [k for k in range(m.n) if k not in traced]
    return Mixture(m.weights, m.factors[:, kept, :], m.label)


def _factor(axis, amp):
    v = np.zeros(np.shape(amp) + (4,))
    v[..., 0] = INV_SQRT2
    if axis:
        v[..., axis] = amp
    return v


def _term(*axis_amps):
    return [_factor(ax, amp) for ax, amp in axis_amps]


def werner_mixture(x, variant="werner"):
    """
    Six equally weighted product terms (twelve qubit densities) for the Werner family.

    Each axis ``j`` contributes the pair ``(+a, b_j)`` and ``(-a, -b_j)`` with
    ``a = sqrt(3x/2)``.  ``variant="werner"`` takes ``b_j = -a`` on every axis;
    ``variant="prime"`` takes ``b = (+a, -a, +a)`` and compiles to the primed
    family.  Feasible exactly for ``x <= 1/3``.
    """
    if x < 0:
        raise NegativeParameter(f"x must be >= 0, got {x}")
    a = np.sqrt(1.5 * x)
    signs = {"werner": (-1, -1, -1), "prime": (1, -1, 1)}[variant]
    terms = []
    for flip in (1, -1):
        for axis, sb in zip((1, 2, 3), signs):
            terms.append((1 / 6, _term((axis, flip * a), (axis, flip * sb * a))))
    return Mixture.from_terms(terms, label=f"werner-{variant}")


def werner_pair_mixture(x, axis=1):
    """The two terms of :func:`werner_mixture` on one axis, renormalised."""
    return werner_mixture(x).subset([axis - 1, axis + 2])


def _split(prod):
    """Two amplitudes with the given product and equal magnitude (first one >= 0)."""
    mag = np.sqrt(np.abs(prod))
    return mag, np.where(prod < 0, -mag, mag)


def three_body_gadget(x, weights, axes=(1, 1, 1), targets=(0.0, 0.0, 0.0)):
    """
    Nine product terms producing a single three-body coherence.

    Parameters
    ----------
    x : float
        Target coefficient of ``Lambda_{jkl}`` with ``(j, k, l) = axes``.
    weights : (w1, w3, w5, w7)
        Per-term weights of the three canceling pairs and of the triple.
        The full weight vector is ``(w1, w1, w3, w3, w5, w5, w7, w7, w7)``.
    targets : (t_BC, t_AC, t_AB)
        Wanted coefficients of ``Lambda_{0kl}``, ``Lambda_{j0l}``,
        ``Lambda_{jk0}``.  All one-body coefficients vanish.

    Returns
    -------
    list of (weight, factors), GadgetParams
    """
    w1, w3, w5, w7 = weights
    j, k, l = axes
    t_bc, t_ac, t_ab = targets
    a7 = np.cbrt(x / w7)
    # two-body leftovers of the triple fixed by the three canceling pairs
    b1, c1 = _split((SQRT2 * t_bc - w7 * a7**2) / (2 * w1))
    a3, c3 = _split((SQRT2 * t_ac - w7 * a7**2) / (2 * w3))
    a5, b5 = _split((SQRT2 * t_ab - 2 * w7 * a7**2) / (2 * w5))
    terms = [
        (w1, _term((0, 0), (k, b1), (l, c1))),
        (w1, _term((0, 0), (k, -b1), (l, -c1))),
        (w3, _term((j, a3), (0, 0), (l, c3))),
        (w3, _term((j, -a3), (0, 0), (l, -c3))),
        (w5, _term((j, a5), (k, b5), (0, 0))),
        (w5, _term((j, -a5), (k, -b5), (0, 0))),
        (w7, _term((j, a7), (k, a7), (l, a7))),
        (w7, _term((j, -a7), (k, -a7), (0, 0))),
        (w7, _term((0, 0), (0, 0), (l, -a7))),
    ]
    amps = {"b1": b1, "c1": c1, "a3": a3, "c3": c3, "a5": a5, "b5": b5, "a7": a7}
    params = GadgetParams(float(x), (w1, w1, w3, w3, w5, w5, w7, w7, w7),
                          {key: float(v) for key, v in amps.items()})
    return terms, params


def gadget_a_weights(w1):
    """``(w1, w3, w5, w7)`` with ``w3 = w1``, ``w5 = 2 w1``, ``w7 = (1 - 8 w1)/3``."""
    return w1, w1, 2 * w1, (1 - 8 * w1) / 3


def gadget_a(x, w1):
    """Nine-term decomposition of ``1/(2 sqrt 2) L000 + x L111``; needs ``0 < w1 < 1/8``."""
    if not 0 < w1 < 0.125:
        raise BadWeight(f"w1 must lie in (0, 1/8), got {w1}")
    terms, params = three_body_gadget(x, gadget_a_weights(w1))
    m = Mixture.from_terms(terms, label="gadget-a")
    return Mixture(m.weights, m.factors, m.label, params)


def gadget_a_bounds(w1):
    """Largest ``|x|`` allowed by each factor-radius constraint, in term order 7, 1, 3, 5."""
    w1, w3, w5, w7 = gadget_a_weights(w1)
    return (
        w7 / (2 * SQRT2),
        np.sqrt(w1**3 / w7),
        np.sqrt(w3**3 / w7),
        np.sqrt((w5 / 2) ** 3 / w7),
    )


def _gadget_b_amplitudes(x, w1, w2, w4):
    a4 = np.cbrt(x / (2 * w4))
    c1 = 2 * w4 * a4 / w1
    a2 = np.sqrt(np.cbrt(x * x * w4 / 4) / w2)
    return c1, a2, a4


def _check_gadget_b_weights(w1, w2, w4):
    if min(w1, w2, w4) <= 0:
        raise BadWeight(f"weights must be positive, got {(w1, w2, w4)}")
    if abs(w1 + 2 * w2 + 2 * w4 - 1) > WEIGHT_TOL:
        raise BadWeight(f"w1 + 2 w2 + 2 w4 = {w1 + 2 * w2 + 2 * w4:.15g} != 1")


def gadget_b(x, w1, w2, w4):
    """
    Five-term decomposition of ``1/(2 sqrt 2) L000 + x L111``.

    Weights are ``(w1, w2, w2, w4, w4)`` with ``w1 + 2 w2 + 2 w4 = 1``.  The
    fifth triple is ``(-a4, -a4, +a4)`` so that the one-body C terms cancel
    against the first term and the three-body term doubles.
    """
    _check_gadget_b_weights(w1, w2, w4)
    c1, a2, a4 = _gadget_b_amplitudes(x, w1, w2, w4)
    terms = [
        (w1, _term((0, 0), (0, 0), (1, -c1))),
        (w2, _term((1, a2), (1, -a2), (0, 0))),
        (w2, _term((1, -a2), (1, a2), (0, 0))),
        (w4, _term((1, a4), (1, a4), (1, a4))),
        (w4, _term((1, -a4), (1, -a4), (1, a4))),
    ]
    params = GadgetParams(float(x), (w1, w2, w2, w4, w4),
                          {"c1": float(c1), "a2": float(a2), "a4": float(a4)})
    m = Mixture.from_terms(terms, label="gadget-b")
    return Mixture(m.weights, m.factors, m.label, params)


def gadget_b_bounds(w1, w2, w4):
    """The three closed-form limits on ``|x|`` (terms 1, 2-3, 4-5)."""
    return (
        w1**3 / (8 * SQRT2 * w4**2),
        np.sqrt(w2**3 / (2 * w4)),
        w4 / SQRT2,
    )


_UPB_TRIPLES = ((1, 1, 1), (1, 3, 3), (3, 1, 3), (3, 3, 1))


def upb_mixture_36(x, weights=None):
    """
    Thirty-six product terms compiling to the UPB family at ``x``.

    One nine-term gadget per nonzero three-body component; each gadget also
    supplies the three two-body components lying under its triple.  ``weights``
    is a length-36 vector in gadget order (default: all equal) and must respect
    the pairing ``w1=w2, w3=w4, w5=w6, w7=w8=w9`` inside each gadget.
    """
    from .families import upb_family

    if weights is None:
        w = np.full(36, 1 / 36)
    else:
        w = np.asarray(weights, dtype=float).reshape(-1)
        if w.size != 36:
            raise BadWeight(f"need 36 weights, got {w.size}")
    if abs(w.sum() - 1.0) > WEIGHT_TOL or np.any(w <= 0):
        raise BadWeight("weights must be positive and sum to 1")
    target = upb_family(x).tensor
    terms = []
    for g, (j, k, l) in enumerate(_UPB_TRIPLES):
        gw = w[9 * g: 9 * g + 9]
        if not (np.isclose(gw[0], gw[1], rtol=0, atol=WEIGHT_TOL)
                and np.isclose(gw[2], gw[3], rtol=0, atol=WEIGHT_TOL)
                and np.isclose(gw[4], gw[5], rtol=0, atol=WEIGHT_TOL)
                and np.allclose(gw[6:], gw[6], rtol=0, atol=WEIGHT_TOL)):
            raise BadWeight(f"gadget {g} weights break the canceling-pair structure")
        sub, _ = three_body_gadget(
            target[j, k, l],
            (gw[0], gw[2], gw[4], gw[6]),
            axes=(j, k, l),
            targets=(target[0, k, l], target[j, 0, l], target[j, k, 0]),
        )
        terms.extend(sub)
    return Mixture.from_terms(terms, label="upb-36")


@dataclass(frozen=True)
class ScanResult:
    gadget: str
    best_x: float
    weights: tuple
    n_weights: int = field(default=0, compare=False)


def _gadget_radius(gadget, x, w):
    """Largest factor radius, vectorised over ``x`` (k, m) and weight rows ``w`` (k, 1|3)."""
    if gadget == "gadget-a":
        w1 = w[:, :1]
        _, w3, w5, w7 = gadget_a_weights(w1)
        a7 = np.abs(np.cbrt(x / w7))
        s = w7 * a7**2
        return np.maximum.reduce([
            a7,
            np.sqrt(s / (2 * w1)),
            np.sqrt(s / (2 * w3)),
            np.sqrt(s / w5),
        ])
    if gadget == "gadget-b":
        c1, a2, a4 = _gadget_b_amplitudes(x, w[:, :1], w[:, 1:2], w[:, 2:3])
        return np.maximum.reduce([np.abs(c1), a2, np.abs(a4)])
    raise KeyError(f"unknown gadget {gadget!r}")


def default_weight_grid(gadget, step=5e-4):
    if gadget == "gadget-a":
        k = np.arange(1, int(round(0.125 / step)))
        return (k * step)[:, None]
    if gadget == "gadget-b":
        units = int(round(1 / step))
        i, j = np.meshgrid(np.arange(1, units), np.arange(1, units), indexing="ij")
        rest = units - 2 * i - 2 * j
        keep = rest >= 1
        return np.column_stack([rest[keep], i[keep], j[keep]]) * step
    raise KeyError(f"unknown gadget {gadget!r}")


def default_x_grid(step=1e-3):
    from .families import TRIPARTITE_MAX

    return np.arange(0, int(TRIPARTITE_MAX / step) + 1) * step


def separability_scan(gadget, x_grid=None, weight_grid=None, x_step=1e-3, w_step=5e-4):
    """
    Grid search for the weights giving the widest feasible interval.

    For each weight vector, the feasible half-width is the largest grid value
    ``|x|`` such that the gadget is feasible at ``+-x'`` for every grid
    ``|x'| <= |x|``.  The best half-width wins; ties go to the
    lexicographically smallest weight vector.  Weight vectors are ``(w1,)``
    for ``gadget-a`` and ``(w1, w2, w4)`` for ``gadget-b``.
    """
    xs = default_x_grid(x_step) if x_grid is None else np.unique(np.abs(np.asarray(x_grid, float)))
    ws = default_weight_grid(gadget, w_step) if weight_grid is None else np.atleast_2d(
        np.asarray(weight_grid, dtype=float))
    if gadget == "gadget-a" and ws.shape[0] == 1 and ws.shape[1] != 1:
        ws = ws.T
    if xs.size == 0 or ws.size == 0:
        raise EmptyGrid("scan grids must be nonempty")
    width = {"gadget-a": 1, "gadget-b": 3}.get(gadget)
    if width is None:
        raise KeyError(f"unknown gadget {gadget!r}")
    if ws.shape[1] != width:
        raise BadWeight(f"{gadget} weight vectors have {width} entries, got {ws.shape[1]}")
    if gadget == "gadget-a" and np.any((ws <= 0) | (ws >= 0.125)):
        raise BadWeight("gadget-a needs 0 < w1 < 1/8")
    if gadget == "gadget-b" and (np.any(ws <= 0) or np.any(
            np.abs(ws[:, 0] + 2 * ws[:, 1] + 2 * ws[:, 2] - 1) > 1e-9)):
        raise BadWeight("gadget-b needs positive weights with w1 + 2 w2 + 2 w4 = 1")
    lim = INV_SQRT2 + RADIUS_TOL

    def ok(x, w):
        return (_gadget_radius(gadget, x, w) <= lim) & (_gadget_radius(gadget, -x, w) <= lim)

    # every amplitude grows with |x|, so feasibility along the sorted grid is a
    # prefix and the count can be found by bisection
    lo = np.zeros(ws.shape[0], dtype=int)
    hi = np.full(ws.shape[0], xs.size)
    while np.any(lo < hi):
        mid = (lo + hi) // 2
        probe = xs[np.minimum(mid, xs.size - 1)][:, None]
        good = ok(probe, ws)[:, 0] & (lo < hi)
        lo = np.where(good, mid + 1, lo)
        hi = np.where(good | (lo >= hi), hi, mid)
    counts = lo
    best = counts.max()
    cand = np.flatnonzero(counts == best)
    order = np.lexsort(ws[cand].T[::-1])
    pick = ws[cand[order[0]]]
    best_x = float(xs[best - 1]) if best > 0 else float("nan")
    return ScanResult(gadget, best_x, tuple(float(v) for v in pick), ws.shape[0])


def feasible_halfwidth(build, x_max, step=1e-4):
    """
    Largest grid ``h`` such that ``build(x')`` is feasible for every grid ``|x'| <= h``.

    ``build`` maps ``x`` to a :class:`Mixture`; each grid point is checked on
    the actual mixture, so this is independent of any closed form.
    """
    h = 0.0
    for x in np.arange(0, int(x_max / step) + 1) * step:
        if not (feasibility(build(x)).feasible and feasibility(build(-x)).feasible):
            break
        h = float(x)
    return h
