"""Command-line front end emitting machine-readable analysis reports.

Reports are JSON documents with complex numbers serialised as [re, im]
pairs; contour samples go to a line-oriented data file so plot tools and
tests share one parser.  Exit codes: 0 success, 2 input error, 3
computation error.  Warnings go to stderr only.
"""

import argparse
import json
import sys

import numpy as np

from . import exceptional, fermions, kernels, lattice, metric, spectra
from .errors import NhlatError, ParseError

PRESETS = {
    "qubit": (lattice.Qubit, ("omega", "t")),
    "uniform-chain": (lattice.UniformChain, ("n", "m", "t", "z_m", "z_mbar")),
    "nn-defect": (lattice.NearestNeighbourDefect, ("n", "t", "delta", "gamma")),
    "ssh-edge": (lattice.SshEdgeDefect, ("n", "t1", "t2", "tL", "tR", "z1", "zn")),
    "ring": (lattice.Ring, ("n", "alpha_n", "beta_n")),
}

FAMILIES = {
    "qubit": lambda p, box: exceptional.qubit_family(box or ((0.0, 2.0), (0.05, 2.0))),
    "uniform": lambda p, box: exceptional.uniform_defect_family(
        int(p.get("n", 3)), int(p.get("m", 1)), float(p.get("t", 1.0)),
        box or ((-3.0, 3.0), (-3.0, 3.0))),
    "nn-defect": lambda p, box: exceptional.nn_defect_family(
        int(p.get("n", 6)), float(p.get("t", 1.0)), box or ((-3.0, 3.0), (0.1, 3.0))),
}


def c2pair(z):
    z = complex(z)
    return [z.real, z.imag]


def mat2pairs(m):
    return [[c2pair(v) for v in row] for row in np.asarray(m)]


def _parse_value(text):
    """Scalar parameter: real, [re, im] list, or re+imj string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        try:
            return complex(text)
        except ValueError as exc:
            raise ParseError(f"cannot parse parameter value {text!r}") from exc


def _to_complex(v):
    if isinstance(v, list):
        if len(v) != 2:
            raise ParseError(f"complex values are [re, im] pairs, got {v!r}")
        return complex(v[0], v[1])
    return complex(v)


def parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ParseError(f"parameters are key=value, got {item!r}")
        key, val = item.split("=", 1)
        out[key] = _parse_value(val)
    return out


def build_preset(name, params):
    if name not in PRESETS:
        raise ParseError(f"unknown preset {name!r}; choices: {sorted(PRESETS)}")
    cls, fields_ = PRESETS[name]
    unknown = set(params) - set(fields_)
    if unknown:
        raise ParseError(f"unknown fields for preset {name!r}: {sorted(unknown)}")
    kwargs = {}
    for key, val in params.items():
        if key in ("n", "m"):
            kwargs[key] = int(val)
        elif key == "t" and isinstance(val, list) and val and isinstance(val[0], list):
            kwargs[key] = np.array([_to_complex(x) for x in val])
        elif key in ("z_m", "z_mbar", "z1", "zn", "tL", "tR", "alpha_n", "beta_n"):
            kwargs[key] = _to_complex(val)
        else:
            kwargs[key] = float(val) if not isinstance(val, list) else _to_complex(val)
    try:
        return cls(**kwargs)
    except (TypeError, NhlatError) as exc:
        raise ParseError(str(exc)) from exc


def load_model(args):
    """LatticeSpec plus the preset (when one was named)."""
    if getattr(args, "model", None):
        try:
            with open(args.model) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read model file: {exc}") from exc
        known = {"preset", "params", "n", "alpha", "beta", "z"}
        unknown = set(doc) - known
        if unknown:
            raise ParseError(f"unknown model fields: {sorted(unknown)}")
        if "preset" in doc:
            preset = build_preset(doc["preset"], doc.get("params", {}))
            return preset.to_spec(), preset
        try:
            vecs = [np.array([_to_complex(v) for v in doc[key]])
                    for key in ("alpha", "beta", "z")]
            return lattice.LatticeSpec(int(doc["n"]), *vecs), None
        except (KeyError, NhlatError) as exc:
            raise ParseError(f"bad explicit model: {exc}") from exc
    if getattr(args, "preset", None):
        preset = build_preset(args.preset, parse_params(args.params))
        return preset.to_spec(), preset
    raise ParseError("provide --model FILE or --preset NAME")


def emit(doc, out):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------- subcommands

def cmd_spectrum(args):
    spec, _ = load_model(args)
    rep = spectra.eig(lattice.build_matrix(spec), tol=args.tol)
    doc = {
        "report": "spectrum",
        "backend": kernels.BACKEND,
        "n": spec.n,
        "eigenvalues": [
            {"value": c2pair(e.value), "algebraic_mult": e.algebraic_mult,
             "geometric_mult": e.geometric_mult}
            for e in rep.eigenvalues
        ],
        "max_residual": rep.max_residual,
        "pt_class": rep.pt_class,
        "broken_pairs": [[c2pair(a), c2pair(b)] for a, b in rep.broken_pairs],
        "seed": args.seed,
    }
    emit(doc, args.out)


def _family_from_args(args):
    name = args.family or "uniform"
    if name not in FAMILIES:
        raise ParseError(f"unknown family {name!r}; choices: {sorted(FAMILIES)}")
    box = None
    if args.box:
        vals = [float(v) for v in args.box.split(",")]
        if len(vals) != 4:
            raise ParseError("--box wants x0,x1,y0,y1")
        box = ((vals[0], vals[1]), (vals[2], vals[3]))
    return FAMILIES[name](parse_params(args.params), box)


def cmd_ep_contour(args):
    fam = _family_from_args(args)
    contour = exceptional.ep_locus(fam, resolution=args.resolution)
    singular = exceptional.singular_points(fam, contour)
    if contour.dropped:
        print(f"warning: dropped {contour.dropped} unverified crossings",
              file=sys.stderr)
    lines = ["# param1 param2 abs_disc segment"]
    index = {}
    for k, pt in enumerate(contour.points):
        index[tuple(pt)] = k
    for seg_id, seg in enumerate(contour.segments):
        for pt in seg:
            k = index.get(tuple(pt))
            absd = contour.abs_disc[k] if k is not None else 0.0
            lines.append(f"{pt[0]:.17g} {pt[1]:.17g} {absd:.6g} {seg_id}")
    data = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)
    doc = {
        "report": "singular-points",
        "family": fam.label,
        "resolution": args.resolution,
        "points": [
            {"point": [s.point[0], s.point[1]], "kind": s.kind,
             "ep_order": s.ep_order}
            for s in singular
        ],
        "seed": args.seed,
    }
    emit(doc, args.singular_out)


def cmd_metric(args):
    spec, preset = load_model(args)
    if isinstance(preset, lattice.NearestNeighbourDefect):
        z = _to_complex(_parse_value(args.Z)) if args.Z else 1j * preset.gamma
        rep = metric.nn_defect_metric(spec, z)
        kind = "nn-defect"
    elif isinstance(preset, lattice.UniformChain) and preset.m == 1:
        rep = metric.far_defect_metric(preset.n, preset.z_m.real,
                                       preset.z_m.imag, preset.t.real
                                       if isinstance(preset.t, complex)
                                       else float(preset.t))
        kind = "far-impurity"
    else:
        h = lattice.build_matrix(spec)
        rep = metric.general_metric_family(h, np.ones(spec.n))
        kind = "general"
    doc = {
        "report": "metric",
        "kind": kind,
        "n": spec.n,
        "hermiticity_residual": rep.hermiticity_residual,
        "intertwining_residual": rep.intertwining_residual,
        "min_eigenvalue": rep.min_eigenvalue,
        "positivity": rep.positivity,
        "kernel_dim": rep.kernel_dim,
        "eta": mat2pairs(rep.eta),
        "seed": args.seed,
    }
    emit(doc, args.out)


def cmd_locality(args):
    params = parse_params(args.params)
    n = int(params.get("n", 8))
    delta = float(params.get("delta", 0.0))
    gamma = float(params.get("gamma", 0.5))
    t = float(params.get("t", 1.0))
    reports = fermions.classify_subsystems(
        n, delta, gamma, t, mode=args.mode,
        unit_circle=True if args.unit_circle else None)
    doc = {
        "report": "locality",
        "model": {"n": n, "delta": delta, "gamma": gamma, "t": t},
        "mode": args.mode,
        "subsystems": [list(r.subsystem) for r in reports],
        "count": len(reports),
        "seed": args.seed,
    }
    emit(doc, args.out)


def cmd_inclusion(args):
    spec, _ = load_model(args)
    h = lattice.build_matrix(spec)
    disks = spectra.gershgorin(h)
    ovals = spectra.brauer_cassini(h) if spec.n >= 2 else []
    doc = {
        "report": "inclusion",
        "n": spec.n,
        "gershgorin": [{"center": c2pair(d.center), "radius": d.radius}
                       for d in disks],
        "cassini": [{"focus1": c2pair(o.focus1), "focus2": c2pair(o.focus2),
                     "b": o.b} for o in ovals],
        "seed": args.seed,
    }
    emit(doc, args.out)


def cmd_puiseux(args):
    fam = _family_from_args(args)
    try:
        point = tuple(float(v) for v in args.point.split(","))
        direction = tuple(float(v) for v in args.direction.split(","))
    except (AttributeError, ValueError) as exc:
        raise ParseError("--point and --direction want x,y") from exc
    k, coeff = exceptional.puiseux_fit(fam, point, direction)
    doc = {
        "report": "puiseux",
        "family": fam.label,
        "point": list(point),
        "direction": list(direction),
        "exponent": k,
        "leading_coeff": coeff,
        "seed": args.seed,
    }
    emit(doc, args.out)


# ------------------------------------------------------- report checking

_SCHEMAS = {
    "spectrum": {"report", "backend", "n", "eigenvalues", "max_residual",
                 "pt_class", "broken_pairs", "seed"},
    "singular-points": {"report", "family", "resolution", "points", "seed"},
    "metric": {"report", "kind", "n", "hermiticity_residual",
               "intertwining_residual", "min_eigenvalue", "positivity",
               "kernel_dim", "eta", "seed"},
    "locality": {"report", "model", "mode", "subsystems", "count", "seed"},
    "inclusion": {"report", "n", "gershgorin", "cassini", "seed"},
    "puiseux": {"report", "family", "point", "direction", "exponent",
                "leading_coeff", "seed"},
}


def validate_report(doc):
    """Re-validate an emitted report document against its schema."""
    kind = doc.get("report")
    if kind not in _SCHEMAS:
        raise ParseError(f"unknown report kind {kind!r}")
    if set(doc) != _SCHEMAS[kind]:
        raise ParseError(f"fields {sorted(set(doc))} != schema "
                         f"{sorted(_SCHEMAS[kind])}")
    return True


def parse_contour_file(text):
    """Rows (param1, param2, abs_disc, segment_id) from a contour data file."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        p1, p2, absd, seg = line.split()
        rows.append((float(p1), float(p2), float(absd), int(seg)))
    return rows


# ------------------------------------------------------------- dispatch

def make_parser():
    parser = argparse.ArgumentParser(
        prog="nhlat",
        description="Spectral analyses of finite non-Hermitian lattice models")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=False):
        p.add_argument("--model", help="JSON model file")
        p.add_argument("--preset", help="preset name")
        p.add_argument("--params", nargs="*", metavar="K=V",
                       help="preset/family parameters")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--resolution", type=int, default=64)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output path (default stdout)")
        if family:
            p.add_argument("--family", help="parameter family name")
            p.add_argument("--box", help="x0,x1,y0,y1 parameter box")

    p = sub.add_parser("spectrum", help="eigenvalues, multiplicities, PT class")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ep-contour", help="trace the exceptional-point locus")
    common(p, family=True)
    p.add_argument("--singular-out", help="singular-point report path")
    p.set_defaults(func=cmd_ep_contour)

    p = sub.add_parser("metric", help="intertwiner construction and verdict")
    common(p)
    p.add_argument("--Z", help="intertwiner parameter Z as [re,im] or re+imj")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("locality", help="subsystems with extensively local observables")
    common(p)
    p.add_argument("--mode", choices=["RuleBased", "BruteForce"],
                   default="RuleBased")
    p.add_argument("--unit-circle", action="store_true",
                   help="treat |z| as exactly 1")
    p.set_defaults(func=cmd_locality)

    p = sub.add_parser("inclusion", help="Gershgorin disks and Cassini ovals")
    common(p)
    p.set_defaults(func=cmd_inclusion)

    p = sub.add_parser("puiseux", help="Puiseux exponent along a parameter ray")
    common(p, family=True)
    p.add_argument("--point", help="base point x,y")
    p.add_argument("--direction", help="ray direction dx,dy")
    p.set_defaults(func=cmd_puiseux)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    np.random.seed(args.seed)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NhlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
