"""Command-line front end: ``coldgas <command> [flags]``.

Every command prints (or writes to ``--out``) a result envelope carrying the
toolkit version, a reproducible timestamp, the echoed run configuration, the
unit note and the payload.  JSON is the default; ``--format csv`` (or
``--out csv``, or a ``.csv`` path) emits a commented CSV table instead.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__, dilute, gp, ideal_gas, scattering
from .errors import ColdGasError, ValidationFailed
from .lll import yrast as lll

UNIT_NOTE = "hbar = 2m = k_B = 1"
FLOAT_FORMAT = ".17g"


# --------------------------------------------------------------------------
# configuration and envelope


@dataclass
class RunConfig:
    command: str
    params: dict
    output: dict
    seed: int = 0
    parallelism: int = 1

    def to_dict(self):
        return {"command": self.command, "params": self.params, "output": self.output,
                "seed": self.seed, "parallelism": self.parallelism}


@dataclass
class ResultEnvelope:
    config: RunConfig
    payload: object
    columns: list | None = None
    rows: list | None = None
    notes: list = field(default_factory=list)
    version: str = __version__
    units: str = UNIT_NOTE

    @property
    def timestamp(self):
        # reproducible builds convention; fixed epoch when unset
        epoch = int(os.environ.get("SOURCE_DATE_EPOCH", "0"))
        return datetime.fromtimestamp(epoch, tz=timezone.utc).isoformat()

    def to_dict(self):
        return {"version": self.version, "timestamp": self.timestamp, "config": self.config.to_dict(),
                "units": self.units, "notes": self.notes, "payload": self.payload}

    def to_json(self):
        return json.dumps(_jsonable(self.to_dict()), indent=2, sort_keys=True, allow_nan=False) + "\n"

    def to_csv(self):
        columns, rows = self.columns, self.rows
        if columns is None:
            flat = {k: v for k, v in self.payload.items() if not isinstance(v, (list, dict))}
            columns, rows = list(flat), [flat]
        buf = io.StringIO()
        buf.write(f"# coldgas {self.version} {self.config.command} {self.timestamp}\n")
        buf.write(f"# units: {self.units}\n")
        for note in self.notes:
            buf.write(f"# {note}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row.get(c)) for c in columns])
        return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), FLOAT_FORMAT)
    return v


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    """Raises ValidationFailed instead of printing usage and exiting."""

    def error(self, message):
        fields = re.findall(r"argument ([^\s:]+)", message)
        for pat in (r"unrecognized arguments: (.*)", r"the following arguments are required: (.*)"):
            m = re.search(pat, message)
            if m:
                fields += [t.strip(",") for t in m.group(1).split() if t.strip(",")]
        raise ValidationFailed(message, fields or ["command"])


def parse_grid(text):
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"grid '{text}' is not start:stop:step")
        start, stop, step = map(float, parts)
        if not step > 0 or stop < start:
            raise argparse.ArgumentTypeError(f"grid '{text}' needs step > 0 and stop >= start")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(n)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_seeds(text):
    """``a..b`` (inclusive) or a comma-separated list of integers."""
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(v) for v in text.split(",") if v.strip()]


def _require(cond, flag, message):
    if not cond:
        raise ValidationFailed(f"{flag}: {message}", [flag])


def _parallel_map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# --------------------------------------------------------------------------
# commands


def cmd_scatter(args):
    try:
        with open(args.potential) as fh:
            data = json.load(fh)
        pot = scattering.RadialPotential.from_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValidationFailed(f"--potential: {exc}", ["--potential"]) from None
    sol = scattering.solve_zero_energy(pot, r_max=args.rmax, step=args.step)
    payload = {"a": sol.a, "born_bound": scattering.born_bound(pot), "residual": sol.residual,
               "r_matched": sol.r_matched, "potential": pot.to_dict()}
    return payload, None, None, ["a: scattering length; born_bound blank when a hard core is present"]


def cmd_ideal(args):
    _require(args.rho > 0, "--rho", "must be positive")
    _require(args.T > 0, "--T", "must be positive")
    payload = ideal_gas.thermo_point(args.rho, args.T, rtol=args.rtol).to_dict()
    if args.kernel_r is not None:
        _require(args.kernel_r >= 0, "--kernel-r", "must be >= 0")
        payload["kernel_r"] = args.kernel_r
        payload["kernel"] = ideal_gas.obdm_kernel(args.rho, args.T, args.kernel_r)
    return payload, None, None, []


def _sweep_row(task):
    rho, T, rtol = task
    p = ideal_gas.thermo_point(rho, T, rtol=rtol)
    return {"rho": p.rho, "mu_bar": p.mu_bar, "f0": p.f0, "condensate": p.condensate,
            "decay_class": p.decay_class}


def cmd_ideal_sweep(args):
    _require(args.T > 0, "--T", "must be positive")
    _require(all(r > 0 for r in args.rho_grid), "--rho-grid", "densities must be positive")
    rows = _parallel_map(_sweep_row, [(r, args.T, args.rtol) for r in args.rho_grid], args.jobs)
    rows.sort(key=lambda r: r["rho"])
    return {"rows": rows}, ["rho", "mu_bar", "f0", "condensate", "decay_class"], rows, []


def cmd_dilute(args):
    _require(args.a >= 0, "--a", "must be >= 0")
    _require(args.rho >= 0, "--rho", "must be >= 0")
    _require(args.T >= 0, "--T", "must be >= 0")
    _require(args.c > 0, "--c", "must be positive")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", dilute.DilutenessWarning)
        report = dilute.dilute_report(args.a, args.rho, args.T, c=args.c)
    payload = report.to_dict()
    payload["warnings"] = [str(w.message) for w in caught]
    return payload, None, None, [f"warning: {m}" for m in payload["warnings"]]


def cmd_tc_bound(args):
    _require(args.c > 0, "--c", "must be positive")
    _require(all(x >= 0 for x in args.grid), "--grid", "values must be >= 0")
    rows = [r.to_dict() for r in dilute.tc_bound_curve(args.grid, c=args.c, linear_slope=args.slope)]
    notes = ["x = a rho^(1/3); sqrt_bound = c sqrt(x); "
             f"linear_reference = {args.slope} x (reference line, not a bound)"]
    return {"rows": rows}, ["x", "sqrt_bound", "linear_reference"], rows, notes


def _gp_config(args, g):
    try:
        return gp.GPConfig(gp.TrapSpec(args.s, args.q), g, args.omega, args.grid, args.box, args.dim)
    except ColdGasError:
        raise
    except ValueError as exc:
        raise ValidationFailed(str(exc), ["--s", "--q", "--g", "--grid", "--box", "--dim"]) from None


def cmd_gp(args):
    config = _gp_config(args, args.g)
    state = gp.minimize_gp(config, seed=args.seed, tol=args.tol, max_iter=args.max_iter,
                           n_restarts=args.restarts)
    payload = state.to_dict()
    summary = {k: payload[k] for k in ("mu", "residual_norm", "iterations", "converged", "seed")}
    summary.update({f"energy_{k}": v for k, v in payload["energy"].items()})
    summary["angular_momentum"] = gp.angular_momentum_expectation(state.phi, config)
    payload["summary"] = summary
    return payload, list(summary), [summary], []


def cmd_gp_scan(args):
    _require(args.dim == 2, "--dim", "the symmetry-breaking scan is two-dimensional")
    _require(args.q > 0, "--q", "scan needs a quartic trap component")
    _gp_config(args, max(args.g_grid))
    rows, onset = gp.symmetry_breaking_scan(
        gp.TrapSpec(args.s, args.q), args.omega, args.g_grid, seeds=args.seeds, grid_n=args.grid,
        box_half_width=args.box, tol=args.tol, max_iter=args.max_iter, jobs=args.jobs,
    )
    rows = [r.to_dict() for r in rows]
    cols = ["g", "anisotropy", "vortex_count", "energy", "residual_norm", "converged", "seed"]
    return {"rows": rows, "onset": onset}, cols, rows, [f"anisotropy onset g: {onset}"]


def _yrast_row(task):
    N, L = task
    p = lll.yrast(N, L)
    return {"L": L, "dim": p.dim, "delta_min": p.delta_min, "degeneracy": p.degeneracy,
            "closed_form_or_blank": lll.yrast_closed_form(N, L)}


def _yrast_rows(N, L_max, jobs):
    return _parallel_map(_yrast_row, [(N, L) for L in range(L_max + 1)], jobs)


def cmd_yrast(args):
    _require(args.n >= 1, "--n", "must be >= 1")
    L_max = args.n * (args.n - 1) if args.lmax is None else args.lmax
    _require(L_max >= 0, "--lmax", "must be >= 0")
    rows = _yrast_rows(args.n, L_max, args.jobs)
    cols = ["L", "dim", "delta_min", "closed_form_or_blank"]
    return {"N": args.n, "rows": rows}, cols, rows, [lll.UNITS_NOTE]


def cmd_lll_scan(args):
    _require(args.n >= 1, "--n", "must be >= 1")
    _require(all(k >= 0 for k in args.kappa_grid), "--kappa-grid", "values must be >= 0")
    table = {r["L"]: r["delta_min"] for r in _yrast_rows(args.n, args.n * (args.n - 1), args.jobs)}
    rows = [r.to_dict() for r in lll.hll_ground_scan(args.n, args.kappa_grid, table=table)]
    return {"N": args.n, "rows": rows}, ["kappa", "L_star", "E0"], rows, [lll.UNITS_NOTE]


def cmd_laughlin(args):
    _require(args.n >= 2, "--n", "must be >= 2")
    res = lll.laughlin_residual(args.n)
    payload = {"N": args.n, "L": args.n * (args.n - 1), "residual": res}
    return payload, None, None, ["residual = ||Delta_N psi|| / ||psi||"]


def yrast_hull_rows(N, table):
    vertices, kappas = lll.hull_breakpoints(table)
    rows = []
    for L in sorted(table):
        row = {"L": L, "delta_min": table[L], "on_hull": L in vertices,
               "kappa_min": None, "kappa_max": None}
        if L in vertices:
            i = vertices.index(L)
            # vertex i is the ground state for kappa in [kappas[i], kappas[i-1]]
            row["kappa_min"] = kappas[i] if i < len(kappas) else 0.0
            row["kappa_max"] = kappas[i - 1] if i > 0 else None
        rows.append(row)
    return rows


def cmd_figure(args):
    if args.figure == "tc_bound":
        return cmd_tc_bound(args)
    _require(args.n >= 1, "--n", "must be >= 1")
    table = {r["L"]: r["delta_min"] for r in _yrast_rows(args.n, args.n * (args.n - 1), args.jobs)}
    rows = yrast_hull_rows(args.n, table)
    notes = [lll.UNITS_NOTE, "kappa_min..kappa_max: range where L is the ground angular momentum "
             "(blank kappa_max means unbounded)"]
    return {"N": args.n, "rows": rows}, ["L", "delta_min", "on_hull", "kappa_min", "kappa_max"], rows, notes


# --------------------------------------------------------------------------


def _add_gp_flags(p, scan):
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--s", type=float, default=0.25, help="quadratic trap coefficient")
    p.add_argument("--q", type=float, default=0.01 if scan else 0.0, help="quartic trap coefficient")
    p.add_argument("--omega", type=float, default=0.9 if scan else 0.0)
    p.add_argument("--grid", type=int, default=64 if scan else 128)
    p.add_argument("--box", type=float, default=8.0 if scan else 12.0, help="box half width")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=20000)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--out", default="json",
                        help="'json' or 'csv' for stdout, '-' for stdout, or an output path")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    parser = _Parser(prog="coldgas", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scatter", parents=[common], help="scattering length of a radial potential")
    p.add_argument("--potential", required=True, help="potential JSON file")
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--step", type=float, default=None)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("ideal", parents=[common], help="ideal-gas thermodynamic point")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--kernel-r", type=float, default=None)
    p.add_argument("--rtol", type=float, default=1e-12, help="relative band for the critical class")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("ideal-sweep", parents=[common], help="ideal gas over a density grid")
    p.add_argument("--rho-grid", type=parse_grid, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--rtol", type=float, default=1e-12)
    p.set_defaults(func=cmd_ideal_sweep)

    p = sub.add_parser("dilute", parents=[common], help="dilute-gas energies and bounds")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--T", type=float, default=0.0)
    p.add_argument("--c", type=float, default=1.0)
    p.set_defaults(func=cmd_dilute)

    def tc_flags(p):
        p.add_argument("--c", type=float, default=1.0)
        p.add_argument("--grid", type=parse_grid, default=parse_grid("0:0.01:0.001"))
        p.add_argument("--slope", type=float, default=dilute.DEFAULT_LINEAR_SLOPE)

    p = sub.add_parser("tc-bound", parents=[common], help="relative Tc shift bound curve")
    tc_flags(p)
    p.set_defaults(func=cmd_tc_bound)

    p = sub.add_parser("gp", parents=[common], help="Gross-Pitaevskii minimizer")
    _add_gp_flags(p, scan=False)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--restarts", type=int, default=5)
    p.set_defaults(func=cmd_gp)

    p = sub.add_parser("gp-scan", parents=[common], help="symmetry-breaking scan in g")
    _add_gp_flags(p, scan=True)
    p.add_argument("--g-grid", type=parse_grid, required=True)
    p.add_argument("--seeds", type=parse_seeds, default=list(range(5)))
    p.set_defaults(func=cmd_gp_scan)

    p = sub.add_parser("yrast", parents=[common], help="yrast table by exact diagonalization")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lmax", type=int, default=None)
    p.set_defaults(func=cmd_yrast)

    p = sub.add_parser("lll-scan", parents=[common], help="ground state of the LLL Hamiltonian vs kappa")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa-grid", type=parse_grid, required=True)
    p.set_defaults(func=cmd_lll_scan)

    p = sub.add_parser("laughlin", parents=[common], help="interaction residual of the Laughlin state")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_laughlin)

    p = sub.add_parser("figure", parents=[common], help="data for replotting the figures")
    p.add_argument("figure", choices=["tc_bound", "yrast_hull"])
    p.add_argument("--n", type=int, default=4)
    tc_flags(p)
    p.set_defaults(func=cmd_figure)
    return parser


def _resolve_output(args):
    out = args.out
    if out in ("json", "csv", "-"):
        fmt = args.format or (out if out != "-" else "json")
        return {"format": fmt, "path": None}
    fmt = args.format or ("csv" if out.lower().endswith(".csv") else "json")
    return {"format": fmt, "path": out}


def _error_json(exc, code):
    module = getattr(exc, "module", "coldgas")
    body = {"error": type(exc).__name__, "module": module, "message": f"{module}: {exc}", "exit_code": code}
    if isinstance(exc, ValidationFailed):
        body["fields"] = exc.fields
    return json.dumps(body, sort_keys=True)


def run(argv=None):
    """Parse, dispatch and serialize; returns ``(text, output_target)``."""
    args = build_parser().parse_args(argv)
    _require(args.jobs >= 1, "--jobs", "must be >= 1")
    output = _resolve_output(args)
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "command", "out", "format", "seed", "jobs")}
    config = RunConfig(args.command, params, output, args.seed, args.jobs)
    payload, columns, rows, notes = args.func(args)
    env = ResultEnvelope(config, payload, columns, rows, notes)
    text = env.to_csv() if output["format"] == "csv" else env.to_json()
    return text, output


def main(argv=None):
    try:
        text, output = run(argv)
    except ValidationFailed as exc:
        print(_error_json(exc, 2), file=sys.stderr)
        return 2
    except ColdGasError as exc:
        print(_error_json(exc, 1), file=sys.stderr)
        return 1
    if output["path"] is None:
        sys.stdout.write(text)
    else:
        with open(output["path"], "w", newline="\n") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
