"""
The ``cohtensor`` command.

Documents are JSON objects tagged by ``format``::

    {"format": "density-matrix",   "n": 2, "re": [[...]], "im": [[...]]}
    {"format": "coherence-tensor", "n": 2, "components": [...]}      # flat-offset order
    {"format": "mixture",          "n": 2, "terms": [{"weight": w, "bloch": [[c0, c1, c2, c3], ...]}]}

Exit status is 0 on success, 1 for usage or parse errors and 2 when the input
parses but is not an admissible operator (not Hermitian, wrong trace, not a
density).
"""

import argparse
import json
import sys

import numpy as np

from . import mixtures as mx
from .analysis import analyze
from .coherence import as_tensor, density_to_tensor, n_qubits, tensor_to_density
from .errors import BadDimension, BadTrace, CohTensorError, NotADensity, NotHermitian
from .families import family_tensor, npt_region_map, write_region_csv
from .smallherm import HERMITIAN_TOL

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SEMANTIC = 2

TRACE_TOL = 1e-8
WEIGHT_SUM_TOL = 1e-8

SEMANTIC_ERRORS = (NotHermitian, BadTrace, NotADensity)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(v):
    """Round to 12 significant digits for output."""
    return float(f"{float(v):.12g}")


def _exact(a):
    # documents keep full double precision so that file round trips are lossless
    return np.asarray(a, dtype=float).tolist()


def _reject_constant(name):
    raise UsageError(f"non-finite number {name} in input")


def load_document(path):
    """Parse a JSON document from ``path`` (``-`` for stdin)."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
        doc = json.loads(text, parse_constant=_reject_constant)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict) or "format" not in doc:
        raise UsageError(f"{path}: not a tagged document")
    return doc


def _field(doc, key):
    try:
        return doc[key]
    except KeyError:
        raise UsageError(f"{doc.get('format')} document lacks {key!r}") from None


def _array(value, what):
    try:
        a = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise UsageError(f"{what} is not a numeric array") from None
    if not np.all(np.isfinite(a)):
        raise UsageError(f"{what} has non-finite entries")
    return a


def matrix_from_document(doc):
    n = int(_field(doc, "n"))
    re = _array(_field(doc, "re"), "re")
    im = _array(_field(doc, "im"), "im")
    d = 2**n
    if re.shape != (d, d) or im.shape != (d, d):
        raise UsageError(f"re/im must be {d}x{d} for n={n}")
    return re + 1j * im


def tensor_from_matrix(rho):
    t = density_to_tensor(rho, tol=HERMITIAN_TOL, check_trace=False)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise BadTrace(f"trace {tr:.12g} != 1")
    return t


def tensor_from_document(doc):
    """Coherence tensor from a density-matrix or coherence-tensor document."""
    fmt = doc["format"]
    if fmt == "density-matrix":
        return tensor_from_matrix(matrix_from_document(doc))
    if fmt == "coherence-tensor":
        n = int(_field(doc, "n"))
        comps = _array(_field(doc, "components"), "components").reshape(-1)
        if n < 1 or comps.size != 4**n:
            raise UsageError(f"expected {4**n} components for n={n}, got {comps.size}")
        if abs(comps[0] - 2.0 ** (-n / 2)) > TRACE_TOL:
            raise BadTrace(f"component[0] = {comps[0]:.12g}, expected {2.0 ** (-n / 2):.12g}")
        return comps.reshape((4,) * n)
    raise UsageError(f"expected a density-matrix or coherence-tensor document, got {fmt!r}")


def mixture_from_document(doc):
    if doc["format"] != "mixture":
        raise UsageError(f"expected a mixture document, got {doc['format']!r}")
    n = int(_field(doc, "n"))
    terms = _field(doc, "terms")
    if not isinstance(terms, list) or not terms:
        raise UsageError("mixture needs a nonempty term list")
    try:
        w = _array([t["weight"] for t in terms], "weights")
        f = _array([t["bloch"] for t in terms], "bloch")
    except (KeyError, TypeError):
        raise UsageError("each term needs 'weight' and 'bloch'") from None
    if f.shape != (len(terms), n, 4):
        raise UsageError(f"each bloch entry must be {n}x4")
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise UsageError(f"weights sum to {w.sum():.12g}, not 1")
    # absorb the tolerated rounding so the library's strict check passes
    return mx.Mixture(w / w.sum(), f)


def tensor_document(t):
    a = as_tensor(t)
    return {"format": "coherence-tensor", "n": a.ndim, "components": _exact(a.reshape(-1))}


def matrix_document(rho):
    n = n_qubits(rho.shape[0])
    return {"format": "density-matrix", "n": n, "re": _exact(rho.real), "im": _exact(rho.imag)}


def mixture_document(m):
    doc = {
        "format": "mixture",
        "n": m.n,
        "terms": [{"weight": float(w), "bloch": _exact(f)} for w, f in zip(m.weights, m.factors)],
    }
    if m.label:
        doc["label"] = m.label
    return doc


def _emit(doc, out=None):
    text = json.dumps(doc, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_convert(args):
    doc = load_document(args.input)
    if args.to == "tensor":
        _emit(tensor_document(tensor_from_document(doc)), args.out)
    else:
        if doc["format"] == "density-matrix":
            # idempotent: validate, then echo the normalised document
            tensor_from_document(doc)
            _emit(matrix_document(matrix_from_document(doc)), args.out)
        else:
            _emit(matrix_document(tensor_to_density(tensor_from_document(doc))), args.out)
    return EXIT_OK


def _format_report(d):
    lines = [f"qubits: {d['n']}", f"purity: {d['purity']:.12g}"]
    lines.append("bloch radii: " + ", ".join(f"{r:.12g}" for r in d["bloch_radii"]))
    lines.append("reduced purities:")
    lines += [f"  {k}: {v:.12g}" for k, v in d["reduced_purities"].items()]
    lines.append("partial transpose:")
    for k, (ok, m) in enumerate(zip(d["ppt"], d["ppt_min_eigenvalues"]), start=1):
        lines.append(f"  qubit {k}: {'PPT' if ok else 'NPT'} (min eigenvalue {m:.12g})")
    lines.append(f"index-2 free: {str(d['index2_free']).lower()}")
    lines.append(f"trace-square chain: {'holds' if d['trace_square_chain'] else 'violated'}")
    if d["realignment_norms"]:
        lines.append("realignment norms:")
        lines += [f"  {k}: {v:.12g}" for k, v in d["realignment_norms"].items()]
    return "\n".join(lines)


def cmd_analyze(args):
    t = tensor_from_document(load_document(args.input))
    d = analyze(t, tol=args.tol).as_dict()
    if args.json:
        d = json.loads(json.dumps(d), parse_float=lambda s: _num(float(s)))
        print(json.dumps(d, indent=2))
    else:
        print(_format_report(d))
    return EXIT_OK


def cmd_family(args):
    try:
        fp = family_tensor(args.name, args.x, args.y)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    except CohTensorError as exc:
        raise UsageError(str(exc)) from None
    _emit(tensor_document(fp.tensor), args.out)
    return EXIT_OK


def _build_mixture(args):
    kind = args.kind
    if kind in ("werner", "werner-prime"):
        return mx.werner_mixture(args.x, "werner" if kind == "werner" else "prime")
    if kind == "gadget-a":
        return mx.gadget_a(args.x, 0.0715 if args.w1 is None else args.w1)
    if kind == "gadget-b":
        w1 = 0.33 if args.w1 is None else args.w1
        w2 = 0.17 if args.w2 is None else args.w2
        w4 = 0.165 if args.w4 is None else args.w4
        return mx.gadget_b(args.x, w1, w2, w4)
    if kind == "upb36":
        return mx.upb_mixture_36(args.x)
    raise UsageError(f"unknown mixture {kind!r}")


def _feasibility_fields(rep):
    return {
        "feasible": rep.feasible,
        "worst_radius": _num(rep.worst_radius),
        "worst_term": rep.worst_term,
        "worst_qubit": rep.worst_qubit + 1,
    }


def cmd_mixture(args):
    if args.action == "build":
        if args.kind is None:
            raise UsageError("mixture build needs a kind")
        try:
            m = _build_mixture(args)
        except CohTensorError as exc:
            raise UsageError(str(exc)) from None
        doc = mixture_document(m)
        doc.update(_feasibility_fields(mx.feasibility(m)))
        _emit(doc, args.out)
        return EXIT_OK
    if args.path is None:
        raise UsageError(f"mixture {args.action} needs a document path")
    m = mixture_from_document(load_document(args.path))
    if args.action == "compile":
        _emit(tensor_document(mx.compile_mixture(m)), args.out)
        return EXIT_OK
    rep = _feasibility_fields(mx.feasibility(m))
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        print(f"feasible={str(rep['feasible']).lower()}")
        print(f"worst radius: {rep['worst_radius']:.12g} (limit {_num(mx.INV_SQRT2):.12g})")
        print(f"offending term: {rep['worst_term']} qubit {rep['worst_qubit']}")
    return EXIT_OK


def cmd_scan(args):
    if args.x_step <= 0 or args.w_step <= 0:
        raise UsageError("grid steps must be positive")
    res = mx.separability_scan(args.gadget, x_step=args.x_step, w_step=args.w_step)
    names = ("w1",) if args.gadget == "gadget-a" else ("w1", "w2", "w4")
    weights = {k: _num(v) for k, v in zip(names, res.weights)}
    if args.json:
        print(json.dumps({"gadget": res.gadget, "best_x": _num(res.best_x), "weights": weights,
                          "weight_vectors": res.n_weights}, indent=2))
    else:
        print(f"{res.gadget}: best |x| = {res.best_x:.12g}")
        print("weights: " + ", ".join(f"{k}={v:.12g}" for k, v in weights.items()))
        print(f"weight vectors scanned: {res.n_weights}")
    return EXIT_OK


def cmd_region(args):
    if args.grid < 1:
        raise UsageError("--grid must be >= 1")
    if not args.lo < args.hi and args.grid > 1:
        raise UsageError("--lo must be below --hi")
    axis = np.linspace(args.lo, args.hi, args.grid)
    samples = npt_region_map(axis, axis, pt_qubit=args.pt_qubit - 1)
    if args.out == "-":
        write_region_csv(samples, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_region_csv(samples, fh)
        counts = {}
        for s in samples:
            counts[s.cls] = counts.get(s.cls, 0) + 1
        print(f"wrote {len(samples)} samples to {args.out}: "
              + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="cohtensor", description="Tensor-of-coherences toolkit for multiqubit densities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("convert", help="convert between matrix and tensor documents")
    c.add_argument("input")
    c.add_argument("--to", choices=("matrix", "tensor"), required=True)
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_convert)

    a = sub.add_parser("analyze", help="full diagnostic report for a density")
    a.add_argument("input")
    a.add_argument("--tol", type=float, default=1e-10)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("family", help="emit a family member as a tensor document")
    f.add_argument("name")
    f.add_argument("--x", type=float, default=0.0)
    f.add_argument("--y", type=float, default=0.0)
    f.add_argument("-o", "--out")
    f.set_defaults(func=cmd_family)

    m = sub.add_parser("mixture", help="build, compile or check product-state mixtures")
    m.add_argument("action", choices=("build", "compile", "check"))
    m.add_argument("target", nargs="?",
                   help="kind for build (werner, werner-prime, gadget-a, gadget-b, upb36), "
                        "document path otherwise")
    m.add_argument("--x", type=float, default=0.0)
    m.add_argument("--w1", type=float)
    m.add_argument("--w2", type=float)
    m.add_argument("--w4", type=float)
    m.add_argument("--json", action="store_true")
    m.add_argument("-o", "--out")
    m.set_defaults(func=cmd_mixture)

    s = sub.add_parser("scan", help="grid search for the widest feasible gadget interval")
    s.add_argument("gadget", choices=("gadget-a", "gadget-b"))
    s.add_argument("--x-step", type=float, default=1e-3)
    s.add_argument("--w-step", type=float, default=5e-4)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_scan)

    r = sub.add_parser("region", help="classify the npt-abc family on a square grid (CSV)")
    r.add_argument("--grid", type=int, default=101)
    r.add_argument("--lo", type=float, default=-0.4)
    r.add_argument("--hi", type=float, default=0.4)
    r.add_argument("--pt-qubit", type=int, choices=(1, 2, 3), default=1)
    r.add_argument("--out", default="-")
    r.set_defaults(func=cmd_region)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "mixture":
        args.kind = args.target if args.action == "build" else None
        args.path = args.target if args.action != "build" else None
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cohtensor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SEMANTIC_ERRORS as exc:
        print(f"cohtensor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except BadDimension as exc:
        print(f"cohtensor: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
