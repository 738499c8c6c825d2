"""Command line front end.

Each subcommand prints plot-ready whitespace-separated columns on stdout and,
with ``--output``, writes a JSON sidecar.

Exit codes: 0 success, 1 invariant failure, 2 input error, 3 numerical
precondition failure.
"""
import argparse
import json
import sys

import numpy as np

from . import checks, collar, divisors, extension, laurent
from .differentials import AnnulusKDifferential, BandSpec, band_sup, nodal_residue_check
from .errors import DegenerateBranchError, NumericalPreconditionError

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_complex(text):
    """``re:im`` or a plain real number."""
    text = text.strip()
    try:
        if ":" in text:
            re_, im = text.split(":")
            return complex(float(re_), float(im))
        return complex(float(text))
    except ValueError as exc:
        raise InputError(f"cannot parse complex value {text!r}") from exc


def parse_t_list(text):
    if not text:
        raise InputError("--t-list is required")
    return [parse_complex(part) for part in text.split(",") if part.strip()]


def fmt_c(z):
    return f"{z.real:.17g} {z.imag:.17g}"


def _load_json(path):
    if path is None:
        raise InputError("--input is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _plain(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def _write_sidecar(path, doc):
    if path:
        text = json.dumps(doc, indent=2, sort_keys=True, default=_plain)
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _c(z):
    return [float(z.real), float(z.imag)]


def cmd_decompose(args, out):
    try:
        d = AnnulusKDifferential.from_json(_load_json(args.input))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.k is not None:
        d = AnnulusKDifferential(args.k, d.f, d.annulus)
    plus, f0, minus = laurent.decompose(d.f)
    sups = {}
    if d.annulus.r_inner > 0:
        b = BandSpec.for_annulus(d.annulus, rho1=args.rho1, rho2=args.rho)
        for which in ("inner", "outer"):
            sups[which] = band_sup(d, b, which, N=args.grid)
    print("# part exponent re im", file=out)
    for part, s in (("minus", minus), ("plus", plus)):
        for n, c in s.as_dict().items():
            print(f"{part} {n} {fmt_c(c)}", file=out)
    print(f"f0 0 {fmt_c(f0)}", file=out)
    print(f"# residue {fmt_c(laurent.residue_f0(d.f))}", file=out)
    for which, v in sups.items():
        print(f"# band_sup_{which} {v:.17g}", file=out)
    _write_sidecar(args.output, {
        "k": d.k,
        "plus": plus.to_json(),
        "f0": _c(f0),
        "minus": minus.to_json(),
        "residue": _c(laurent.residue_f0(d.f)),
        "band_sup": sups,
    })
    return EXIT_OK


def cmd_extend(args, out):
    try:
        fs = extension.FamilySamples.from_json(_load_json(args.input))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.k is not None:
        fs = extension.FamilySamples(args.k, fs.r_zeta, fs.rho_t, fs.values, fs.c, fs.c_prime)
    est = extension.FamilyExtension(args.m_deg, args.n_deg, args.pole_order).fit(fs)
    coef = est.coef_
    print("# m n re im", file=out)
    for m in range(coef.m_deg + 1):
        for n in range(coef.n_deg + 1):
            print(f"{m} {n} {fmt_c(coef.coeffs[m, n])}", file=out)
    print(f"# pole_order {coef.pole_order}", file=out)
    print(f"# reconstruction_error {est.reconstruction_error_:.3e}", file=out)
    doc = {"series": coef.to_json(), "reconstruction_error": est.reconstruction_error_}
    if est.nodal_ is not None:
        ok = nodal_residue_check(est.nodal_, tol=args.tol if args.tol is not None else 1e-12)
        print(f"# residue_matching {'ok' if ok else 'FAILED'}", file=out)
        doc["nodal"] = {"k": fs.k, "fz": est.nodal_.fz.to_json(), "gw": est.nodal_.gw.to_json(),
                        "residue_matching": ok}
    _write_sidecar(args.output, doc)
    return EXIT_OK


def cmd_zeros(args, out):
    try:
        f = extension.TwoVarSeries.from_json(_load_json(args.input))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    ts = parse_t_list(args.t_list)
    rep = divisors.constancy_check(f, ts, rho=args.rho, N=args.grid)
    print("# t_re t_im count r_in r_out", file=out)
    for t, count, (r_in, r_out) in zip(ts, rep.counts, rep.radii):
        print(f"{fmt_c(t)} {count} {r_in:.17g} {r_out:.17g}", file=out)
    for branch in ("z", "w"):
        if branch in rep.branches:
            b = rep.branches[branch]
            print(f"# branch {branch} order {b.order_at_origin} "
                  f"punctured_zeros {b.zeros_in_punctured_disc}", file=out)
        else:
            print(f"# branch {branch} degenerate", file=out)
    verdict = {True: "constant", False: "NOT constant", None: "abstain (degenerate branch)"}[rep.passed]
    print(f"# verdict {verdict}", file=out)
    _write_sidecar(args.output, {
        "t": [_c(t) for t in ts],
        "counts": rep.counts,
        "branches": {k: {"order_at_origin": b.order_at_origin,
                         "zeros_in_punctured_disc": b.zeros_in_punctured_disc}
                     for k, b in rep.branches.items()},
        "degenerate": rep.degenerate,
        "passed": rep.passed,
    })
    return EXIT_OK if rep.passed is not False else EXIT_INVARIANT


def cmd_collar(args, out):
    ts = parse_t_list(args.t_list)
    rows, bounds = [], []
    print("# t_abs r density ratio", file=out)
    for t in ts:
        spec = collar.CollarSpec(t, args.rho)
        lo_r, hi_r = spec.radii
        radii = np.geomspace(lo_r, hi_r, args.grid) if lo_r < hi_r else np.array([hi_r])
        dens = collar.hyperbolic_density(radii, t)
        ratio = collar.collar_ratio(radii, t)
        for r, d_, q in zip(np.atleast_1d(radii), np.atleast_1d(dens), np.atleast_1d(ratio)):
            print(f"{abs(t):.6e} {r:.17g} {d_:.17g} {q:.17g}", file=out)
            rows.append([abs(t), float(r), float(d_), float(q)])
        lo, hi = collar.collar_ratio_bounds(t, args.rho, args.grid)
        bounds.append({"t": _c(t), "lo": lo, "hi": hi})
    print("# t_abs lo hi", file=out)
    for b, t in zip(bounds, ts):
        print(f"# {abs(t):.6e} {b['lo']:.17g} {b['hi']:.17g}", file=out)
    _write_sidecar(args.output, {"rho": args.rho, "table": rows, "bounds": bounds})
    return EXIT_OK


def cmd_verify(args, out):
    results = checks.run_all(args.seed)
    for r in results:
        print(r.line(), file=out)
    failed = [r for r in results if not r.passed]
    doc = {"seed": args.seed,
           "results": [{"name": r.name, "passed": r.passed, "value": r.value, "tol": r.tol}
                       for r in results]}
    if failed:
        doc["counterexample"] = {"name": failed[0].name, "data": failed[0].counterexample}
        print(f"# first failure: {failed[0].name} {json.dumps(failed[0].counterexample)}", file=out)
    _write_sidecar(args.output, doc)
    return EXIT_INVARIANT if failed else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input")
    common.add_argument("--output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float)
    common.add_argument("--k", type=int)

    parser = argparse.ArgumentParser(prog="nodalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="Cauchy split of a differential")
    p.add_argument("--rho", type=float, default=0.9, help="outer band parameter rho2")
    p.add_argument("--rho1", type=float, default=0.5)
    p.add_argument("--grid", type=int, default=512)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("extend", parents=[common], help="extend fiber samples across the node")
    p.add_argument("--m-deg", type=int, default=6)
    p.add_argument("--n-deg", type=int, default=6)
    p.add_argument("--pole-order", type=int, default=0)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("zeros", parents=[common], help="fiber zero counts and nodal orders")
    p.add_argument("--t-list")
    p.add_argument("--rho", type=float, default=0.9)
    p.add_argument("--grid", type=int, default=divisors.DEFAULT_N)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("collar", parents=[common], help="hyperbolic density and collar ratios")
    p.add_argument("--t-list")
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--grid", type=int, default=65)
    p.set_defaults(func=cmd_collar)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.k is not None and args.k < 1:
        print("error: --k must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.tol is not None and args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except NumericalPreconditionError as exc:
        print(f"numerical precondition failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DegenerateBranchError as exc:
        print(f"degenerate divisor: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, ValueError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
