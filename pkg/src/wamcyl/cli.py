"""Command-line interface: mesh generation, node extraction, metrics,
error curves, and table reproduction.

Exit codes: 0 success, 1 usage error, 2 numerical failure.  The
WAMCYL_SEED environment variable is reserved; every computation here is
deterministic and ignores it.
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import approx, cubature, densela, extract, fileio, meshgen, polybasis, testfns
from .errors import WamcylError

MESH_CHOICES = ("wam1", "wam2", "disk", "padua", "cheb")
METHOD_CHOICES = ("afp", "dlp")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _parse_degrees(spec):
    """Accept '7', '5,8,12' or '5..20'."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in spec.split(",")]


def _select(mesh, n, method, steps):
    if method == "afp":
        return extract.select_afp(mesh, n, steps)
    return extract.select_dlp(mesh, n, steps)


def _samples(fn, pts):
    return np.asarray(fn(pts[:, 0], pts[:, 1], pts[:, 2]), dtype=float)


def cmd_gen(args):
    mesh = meshgen.generate_mesh(args.mesh, args.degree[0])
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = fileio.write_mesh_csv(out / f"{args.mesh}{args.degree[0]}.csv", mesh)
    print(f"{mesh.family} degree {mesh.degree}: {mesh.cardinality} points -> {path}")
    return 0


def cmd_extract(args):
    n = args.degree[0]
    # a degree-0 extraction still needs a real mesh to select from
    mesh = meshgen.generate_mesh(args.mesh, max(n, 1))
    sel = _select(mesh, n, args.method, args.ortho_steps)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = fileio.write_extraction_csv(
        out / f"{args.mesh}{n}_{args.method}.csv", sel
    )
    print(f"{args.method} degree {sel.degree} from {mesh.family}: {sel.count} nodes -> {path}")
    return 0


def _metrics_rows(family, n, method, steps, mult):
    mesh = meshgen.generate_mesh(family, n)
    control = meshgen.control_mesh(family, n, mult)
    sel = _select(mesh, n, method, steps)
    lam = approx.lebesgue_constant(sel, control)
    V = polybasis.vandermonde(polybasis.enumerate_basis(n), sel.nodes)
    kappa = densela.cond_2(V)
    proj = approx.build_lsq(mesh, n, steps=2)
    lnorm = approx.lsq_norm(proj, eval_on=control)
    return [
        (n, method, family, "lebesgue", lam),
        (n, method, family, "cond_inf", kappa),
        (n, "lsq", family, "lsq_norm", lnorm),
    ]


def cmd_metrics(args):
    if min(args.degree) < 1:
        raise ValueError("metrics needs degree >= 1")
    jobs = [(args.mesh, n, args.method, args.ortho_steps, args.control_mult)
            for n in args.degree]
    rows = []
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for part in pool.map(_metrics_rows_star, jobs):
                rows.extend(part)
    else:
        for job in jobs:
            rows.extend(_metrics_rows(*job))
    rows.sort(key=lambda r: (r[0], r[1], r[3]))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = fileio.append_results(out / "results.csv", rows)
    for row in rows:
        print(f"{row[3]} n={row[0]} {row[2]}/{row[1]}: {row[4]:.6g}")
    print(f"appended {len(rows)} rows -> {path}")
    return 0


def _metrics_rows_star(job):
    return _metrics_rows(*job)


def _error_rows(family, n, method, steps, mult, fids, oracle_cache):
    mesh = meshgen.generate_mesh(family, n)
    control = meshgen.control_mesh(family, n, mult)
    sel = _select(mesh, n, method, steps)
    rule = cubature.cubature_weights(sel)
    proj = approx.build_lsq(mesh, n, steps=2)
    rows = []
    for fid in fids:
        tf = testfns.get_function(fid)
        truth = _samples(tf.fn, control.points)
        scale = np.abs(truth).max()
        q = approx.interpolate(sel, _samples(tf.fn, sel.nodes))
        interp_err = np.abs(approx.eval_interpolant(q, control) - truth).max() / scale
        coeffs = approx.lsq_fit(proj, _samples(tf.fn, mesh.points))
        fit = approx.Interpolant(degree=n, nodes=sel.nodes, coefficients=coeffs)
        lsq_err = np.abs(approx.eval_interpolant(fit, control) - truth).max() / scale
        if fid not in oracle_cache:
            oracle_cache[fid] = cubature.oracle_integral(tf.fn, tf.oracle_tol)
        ref = oracle_cache[fid]
        cub_err = abs(cubature.apply_rule(rule, tf.fn) - ref) / abs(ref)
        rows.extend([
            (n, method, family, f"interp_err_{fid}", interp_err),
            (n, method, family, f"lsq_err_{fid}", lsq_err),
            (n, method, family, f"cub_err_{fid}", cub_err),
        ])
    return rows


def _error_rows_star(job):
    return _error_rows(*job, oracle_cache={})


def cmd_errors(args):
    if min(args.degree) < 1:
        raise ValueError("errors needs degree >= 1")
    fids = args.function
    rows = []
    if args.jobs > 1:
        jobs = [(args.mesh, n, args.method, args.ortho_steps, args.control_mult, fids)
                for n in args.degree]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for part in pool.map(_error_rows_star, jobs):
                rows.extend(part)
    else:
        cache = {}
        for n in args.degree:
            rows.extend(_error_rows(args.mesh, n, args.method, args.ortho_steps,
                                    args.control_mult, fids, cache))
    rows.sort(key=lambda r: (r[0], r[1], r[3]))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = fileio.append_results(out / "results.csv", rows)
    for row in rows:
        print(f"{row[3]} n={row[0]} {row[2]}/{row[1]}: {row[4]:.6g}")
    print(f"appended {len(rows)} rows -> {path}")
    return 0


_TABLE_CONFIG = {
    1: ("wam1", "afp"),
    2: ("wam2", "afp"),
    3: ("wam1", "dlp"),
    4: ("wam2", "dlp"),
}

REPRODUCE_DEGREES = [5, 10, 15, 20]
REPRODUCE_SLOW_EXTRA = [25, 30]


def cmd_reproduce(args):
    degrees = REPRODUCE_DEGREES + (REPRODUCE_SLOW_EXTRA if args.slow else [])
    # extraction without preconditioning mirrors the source experiments;
    # --ortho-steps overrides
    steps = args.ortho_steps if args.ortho_steps is not None else 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.table == 5:
        rows = []
        for n in degrees:
            vals = [n]
            for family in ("wam1", "wam2"):
                mesh = meshgen.generate_mesh(family, n)
                proj = approx.build_lsq(mesh, n, steps=2)
                control = meshgen.control_mesh(family, n, args.control_mult)
                vals.append(approx.lsq_norm(proj, eval_on=control))
            rows.append(vals)
            print(f"n={n}: wam1 {vals[1]:.4g}  wam2 {vals[2]:.4g}")
        path = fileio.write_table_csv(out / "table5.csv",
                                      ("n", "lsq_norm_wam1", "lsq_norm_wam2"), rows)
    else:
        family, method = _TABLE_CONFIG[args.table]
        rows = []
        for n in degrees:
            mesh = meshgen.generate_mesh(family, n)
            control = meshgen.control_mesh(family, n, args.control_mult)
            sel = _select(mesh, n, method, steps)
            lam = approx.lebesgue_constant(sel, control)
            V = polybasis.vandermonde(polybasis.enumerate_basis(n), sel.nodes)
            kappa = densela.cond_2(V)
            rows.append((n, lam, kappa))
            print(f"n={n}: lebesgue {lam:.4g}  cond {kappa:.4g}")
        path = fileio.write_table_csv(out / f"table{args.table}.csv",
                                      ("n", "lebesgue", "cond_inf"), rows)
    print(f"table {args.table} -> {path}")
    return 0


def build_parser():
    parser = _Parser(prog="wamcyl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mesh=True, method=False, degrees="5"):
        if mesh:
            p.add_argument("--mesh", choices=MESH_CHOICES, required=True)
        p.add_argument("--degree", type=_parse_degrees, default=_parse_degrees(degrees),
                       help="degree, list '5,10' or range '5..20'")
        if method:
            p.add_argument("--method", choices=METHOD_CHOICES, default="afp")
        p.add_argument("--ortho-steps", type=int, default=2,
                       help="orthogonalization steps for extraction (default 2)")
        p.add_argument("--control-mult", type=int, default=None,
                       help="override the control-mesh degree multiplier")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", default="out")

    p = sub.add_parser("gen", help="generate a mesh CSV + JSON sidecar")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("extract", help="extract AFP/DLP nodes to CSV")
    common(p, method=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("metrics", help="lebesgue / condition / operator norm rows")
    common(p, method=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("errors", help="interpolation / least-squares / cubature errors")
    common(p, method=True, degrees="5..20")
    p.add_argument("--function", action="append", default=None,
                   choices=sorted(testfns.REGISTRY), help="repeatable; default f3")
    p.set_defaults(func=cmd_errors)

    p = sub.add_parser("reproduce", help="reproduce a results table")
    p.add_argument("--table", type=int, choices=(1, 2, 3, 4, 5), required=True)
    p.add_argument("--slow", action="store_true", help="include degrees 25 and 30")
    p.add_argument("--ortho-steps", type=int, default=None,
                   help="extraction preconditioning steps (default 0 here)")
    p.add_argument("--control-mult", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "function", "skip") is None:
        args.function = ["f3"]
    try:
        return args.func(args)
    except WamcylError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
