"""Command-line front end: ``eqgames <command> [flags]``.

Commands print JSON (``expected``, ``simulate``, ``bernstein``) or CSV
(``density``, ``table``, ``figure``) on stdout.  Exit status is 0 on success,
2 on a usage error and 3 when a quadrature fails to converge (the partial
result is still printed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from .asymptotics import asymptotic_E1, asymptotic_E2, asymptotic_r0, bernstein_expected_real_zeros, table_cell
from .density import density, density_in_x
from .errors import ConvergenceFailure
from .expected import expected_internal
from .manifest import RunManifest
from .montecarlo import SimulationConfig, simulate
from .quadrature import QuadratureConfig

EXIT_USAGE = 2
EXIT_NONCONVERGED = 3

TABLE_D = (20, 40, 120, 200, 320, 440, 600)
TABLE_R = (0.0, 0.01, 0.1, 0.3, 0.5, 0.8)

DEFAULT_GRIDS = {
    "e-vs-r": "d=2,3,4,5,10,20;r=0:1:21",
    "e-vs-d": "r=0,0.25,0.5,0.75,1;d=2:30:29",
    "ratios": "r=0.01,0.1,0.3,0.5,0.8;d=20,40,120,200,320,440,600",
}


def _fmt(x):
    return repr(float(x))


def _emit_json(obj, out):
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _emit_csv(manifest, header, rows, out):
    for line in manifest.comment_lines():
        out.write(line + "\n")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    out.write(buf.getvalue())


def parse_grid(spec):
    """Parse ``"d=2,3,5;r=0:1:21"`` into ``{"d": [...], "r": [...]}``.

    Each value is a comma list or ``start:stop:count`` (inclusive, evenly spaced).
    """
    grid = {}
    for part in filter(None, (p.strip() for p in spec.split(";"))):
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in ("d", "r") or not val:
            raise ValueError(f"bad grid entry {part!r}")
        if ":" in val:
            start, stop, num = val.split(":")
            values = np.linspace(float(start), float(stop), int(num)).tolist()
        else:
            values = [float(v) for v in val.split(",")]
        if key == "d":
            if any(v != int(v) or v < 2 for v in values):
                raise ValueError("d values must be integers >= 2")
            values = [int(v) for v in values]
        elif any(not 0 <= v <= 1 for v in values):
            raise ValueError("r values must lie in [0, 1]")
        grid[key] = values
    return grid


# ---------------------------------------------------------------------------
# commands


def cmd_expected(args, out):
    cfg = QuadratureConfig(abs_tol=args.tol, rel_tol=args.tol)
    man = RunManifest("expected", {"d": args.d, "r": args.r, "tol": args.tol})
    status = 0
    try:
        res = expected_internal(args.r, args.d, cfg)
        E, err, converged = res.E, res.est_error, True
    except ConvergenceFailure as exc:
        E, err, converged = exc.value, exc.error, False
        status = EXIT_NONCONVERGED
    _emit_json(
        {"d": args.d, "r": args.r, "E": E, "SE": E / 2, "est_error": err,
         "converged": converged, "manifest": man.finish().as_dict()},
        out,
    )
    return status


def cmd_density(args, out):
    grid = np.linspace(0.0, 1.0, args.points)
    if args.coord == "t":
        header, values = ["t", "f"], density(grid, args.r, args.d)
    else:
        header, values = ["y", "g"], density_in_x(grid, args.r, args.d)
    man = RunManifest("density", {"d": args.d, "r": args.r, "points": args.points, "coord": args.coord})
    rows = [[_fmt(a), _fmt(b)] for a, b in zip(grid, values)]
    _emit_csv(man.finish(), header, rows, out)
    return 0


def cmd_simulate(args, out):
    cfg = SimulationConfig(args.d, args.r, args.samples, args.seed, args.workers)
    man = RunManifest(
        "simulate",
        {"d": args.d, "r": args.r, "samples": args.samples, "workers": args.workers},
        seed=args.seed,
    )
    rep = simulate(cfg)
    _emit_json(
        {
            "d": args.d,
            "r": args.r,
            "p_hat": [float(p) for p in rep.p_hat],
            "E_hat": rep.E_hat.as_dict(),
            "SE_hat": rep.SE_hat.as_dict(),
            "skipped": rep.skipped,
            "indeterminate": rep.indeterminate,
            "n_effective": rep.n_effective,
            "manifest": man.finish().as_dict(),
        },
        out,
    )
    return 0


def cmd_table(args, out):
    man = RunManifest("table", {"paper": args.paper, "d": list(TABLE_D), "r": list(TABLE_R)})
    header = ["d"] + [f"{r:g}" for r in TABLE_R] + [f"sign:{r:g}" for r in TABLE_R]
    rows = []
    for d in TABLE_D:
        vals, signs = [], []
        for r in TABLE_R:
            try:
                cell = table_cell(args.paper, r, d)
                vals.append(f"{abs(cell):.3f}")
                signs.append("+" if cell >= 0 else "-")
            except ConvergenceFailure:
                vals.append("NA")
                signs.append("NA")
        rows.append([str(d)] + vals + signs)
    _emit_csv(man.finish(), header, rows, out)
    return 0


def _expected_or_nan(r, d):
    try:
        return expected_internal(r, d).E
    except ConvergenceFailure:
        return float("nan")


def cmd_figure(args, out):
    grid = dict(parse_grid(DEFAULT_GRIDS[args.which]))
    if args.grid:
        grid.update(parse_grid(args.grid))
    params = {"which": args.which, "grid": grid}
    rows = []
    if args.which == "e-vs-r":
        for d in grid["d"]:
            for r in grid["r"]:
                rows.append([f"A d={d}", _fmt(r), _fmt(_expected_or_nan(r, d))])
        if args.samples:
            params.update(samples=args.samples, workers=args.workers)
            for d in grid["d"]:
                for r in grid["r"]:
                    rep = simulate(SimulationConfig(d, r, args.samples, args.seed, args.workers))
                    rows.append([f"S d={d}", _fmt(r), _fmt(rep.E_hat.mean)])
    elif args.which == "e-vs-d":
        for r in grid["r"]:
            for d in grid["d"]:
                rows.append([f"A r={r:g}", str(d), _fmt(_expected_or_nan(r, d))])
    else:
        for r in grid["r"]:
            for d in grid["d"]:
                E = _expected_or_nan(r, d)
                if r == 0:
                    rows.append([f"E0/E r={r:g}", str(d), _fmt(asymptotic_r0(d) / E)])
                elif r < 1:
                    try:
                        e1 = asymptotic_E1(r, d)
                    except ConvergenceFailure:
                        e1 = float("nan")
                    rows.append([f"E1/E r={r:g}", str(d), _fmt(e1 / E)])
                    rows.append([f"E2/E r={r:g}", str(d), _fmt(asymptotic_E2(r, d) / E)])
    seed = args.seed if args.samples else None
    man = RunManifest("figure", params, seed=seed)
    _emit_csv(man.finish(), ["series", "x", "y"], rows, out)
    return 0


def cmd_bernstein(args, out):
    man = RunManifest("bernstein", {"degree": args.degree})
    status = 0
    try:
        res = bernstein_expected_real_zeros(args.degree)
        value, converged = res.expected_real_zeros, True
    except ConvergenceFailure as exc:
        value, converged = 2 * exc.value, False
        status = EXIT_NONCONVERGED
    _emit_json(
        {"degree": args.degree, "expected_real_zeros": value,
         "asymptote": float(np.sqrt(2 * args.degree + 1)), "converged": converged,
         "manifest": man.finish().as_dict()},
        out,
    )
    return status


# ---------------------------------------------------------------------------
# argument parsing


def _int_at_least(lo):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}")
        return v

    return conv


def _unit(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return v


def _positive(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _default_workers():
    env = os.environ.get("EQGAMES_WORKERS")
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def build_parser():
    p = argparse.ArgumentParser(prog="eqgames", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    workers = _default_workers()

    s = sub.add_parser("expected", help="E(r, d) and SE(r, d) by quadrature (JSON)")
    s.add_argument("--d", type=_int_at_least(2), required=True)
    s.add_argument("--r", type=_unit, required=True)
    s.add_argument("--tol", type=_positive, default=1e-9)
    s.set_defaults(func=cmd_expected)

    s = sub.add_parser("density", help="density of equilibria on a uniform grid (CSV)")
    s.add_argument("--d", type=_int_at_least(2), required=True)
    s.add_argument("--r", type=_unit, required=True)
    s.add_argument("--points", type=_int_at_least(2), required=True)
    s.add_argument("--coord", choices=("t", "x"), default="t")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("simulate", help="Monte Carlo counts of (stable) equilibria (JSON)")
    s.add_argument("--d", type=_int_at_least(2), required=True)
    s.add_argument("--r", type=_unit, required=True)
    s.add_argument("--samples", type=_int_at_least(1), required=True)
    s.add_argument("--seed", type=_int_at_least(0), required=True)
    s.add_argument("--workers", type=_int_at_least(1), default=workers)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("table", help="relative errors of the large-d approximations (CSV)")
    s.add_argument("--paper", type=int, choices=(1, 2), required=True)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("figure", help="plot data in long format series,x,y (CSV)")
    s.add_argument("--which", choices=tuple(DEFAULT_GRIDS), required=True)
    s.add_argument("--grid", default=None, help='e.g. "d=3,5;r=0:1:21"')
    s.add_argument("--samples", type=_int_at_least(1), default=None)
    s.add_argument("--seed", type=_int_at_least(0), default=0)
    s.add_argument("--workers", type=_int_at_least(1), default=workers)
    s.set_defaults(func=cmd_figure)

    s = sub.add_parser("bernstein", help="expected real zeros of a random Bernstein polynomial (JSON)")
    s.add_argument("--degree", type=_int_at_least(1), required=True)
    s.set_defaults(func=cmd_bernstein)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "figure" and args.grid:
        try:
            parse_grid(args.grid)
        except ValueError as exc:
            parser.error(str(exc))
    return args.func(args, out)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
