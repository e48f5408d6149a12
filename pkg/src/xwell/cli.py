"""
Command-line entry point.

    xwell spectrum        exact bound states of the open well (+ psi(x) tables)
    xwell wkb             f(E) table and WKB levels
    xwell scatter         R(E), T(E) of the barrier
    xwell tunnel-compare  exact vs WKB transmission
    xwell poles           continued R, T of the well and their poles
    xwell crossover       energy where R = T = 1/2
    xwell selfcheck       oracle comparisons

Exit status: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import bound, oracle, scatter, semiclassical
from .curves import CurveTable, emit
from .errors import DomainError, XWellError
from .model import BarrierParams, EnergyGridSpec, WellParams

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

WELL_DEFAULTS = {"v0": 1.0, "a": 1.0}
BARRIER_DEFAULTS = {"u0": 5.0, "a": 1.0}

GRID_DEFAULTS = {
    "spectrum": None,
    "wkb": (0.0, 22.0, 221),
    "scatter": (-10.0, 10.0, 401),
    "tunnel-compare": (-10.0, 10.0, 401),
    "poles": (-0.95, 22.0, 460),
    "crossover": (-5.0, 5.0, None),
}

CONFIG_KEYS = {"potential", "v0", "u0", "a", "two_mu_over_hbar2"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def read_config(path: str | Path) -> dict:
    """key=value lines; '#' starts a comment."""
    cfg = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: bad config line {line!r}")
        cfg[key] = value if key == "potential" else float(value)
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xwell", description="Exponential open well and bottomless barrier solver")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, well: bool, grid: bool):
        if well:
            p.add_argument("--v0", type=float)
        else:
            p.add_argument("--u0", type=float)
        p.add_argument("--a", type=float)
        p.add_argument("--two-mu-over-hbar2", dest="two_mu_over_hbar2", type=float)
        p.add_argument("--config")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", "-o", help="file to write (default: standard output)")
        if grid:
            p.add_argument("--emin", type=float)
            p.add_argument("--emax", type=float)
            p.add_argument("--points", type=int)

    p = sub.add_parser("spectrum", help="exact bound states")
    common(p, True, False)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--psi-prefix", help="also write psi_n(x) tables to PREFIX<n>.<format>")
    p.add_argument("--psi-points", type=int, default=401)
    p.add_argument("--normalize", action="store_true")

    p = sub.add_parser("wkb", help="WKB action f(E) and levels")
    common(p, True, True)
    p.add_argument("--nmax", type=int, default=3)

    p = sub.add_parser("scatter", help="R(E), T(E) sweep")
    common(p, False, True)

    p = sub.add_parser("tunnel-compare", help="exact vs WKB transmission")
    common(p, False, True)

    p = sub.add_parser("poles", help="continued R, T and their poles")
    common(p, True, True)
    p.add_argument("--nmax", type=int, default=3)

    p = sub.add_parser("crossover", help="energy with R = T = 1/2")
    common(p, False, False)
    p.add_argument("--emin", type=float)
    p.add_argument("--emax", type=float)

    p = sub.add_parser("selfcheck", help="run oracle comparisons")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _params(args, well: bool):
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    if "potential" in cfg and cfg["potential"] not in ("well", "barrier"):
        raise UsageError(f"unknown potential {cfg['potential']!r}")
    if "potential" in cfg and (cfg["potential"] == "well") != well:
        raise UsageError(f"config describes a {cfg['potential']}, command needs the other potential")
    vals = dict(WELL_DEFAULTS if well else BARRIER_DEFAULTS)
    vals["two_mu_over_hbar2"] = 1.0
    vals.update({k: v for k, v in cfg.items() if k in vals})
    for k in list(vals):
        if getattr(args, k, None) is not None:
            vals[k] = getattr(args, k)
    try:
        if well:
            return WellParams(vals["v0"], vals["a"], vals["two_mu_over_hbar2"])
        return BarrierParams(vals["u0"], vals["a"], vals["two_mu_over_hbar2"])
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _grid(args) -> EnergyGridSpec:
    emin, emax, points = GRID_DEFAULTS[args.command]
    emin = args.emin if args.emin is not None else emin
    emax = args.emax if args.emax is not None else emax
    points = args.points if args.points is not None else points
    try:
        return EnergyGridSpec(emin, emax, points)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _write(table: CurveTable, args, out):
    text = emit(table, args.format, args.output)
    if args.output is None:
        out.write(text)


def _cmd_spectrum(args, out):
    params = _params(args, True)
    states = bound.solve_spectrum(params, args.nmax)
    rows = []
    for s in states:
        rows.append((s.n, 0 if s.parity is bound.Parity.EVEN else 1, s.energy, s.k))
    table = CurveTable(
        columns=[("n", "1"), ("parity", "0=even,1=odd"), ("E", "energy"), ("k", "1/length")],
        rows=rows,
        metadata={"params": {"v0": params.v0, "a": params.a, "two_mu_over_hbar2": params.two_mu_over_hbar2}},
    )
    _write(table, args, out)
    if args.psi_prefix:
        for s in states:
            if args.normalize:
                s = bound.normalize(params, s)
            xs, ps = bound.sample(params, s, args.psi_points)
            psi = CurveTable(
                columns=[("x", "length"), ("psi", "1")],
                rows=list(zip(xs.tolist(), ps.tolist())),
                metadata={"n": s.n, "E": s.energy, "parity": s.parity.value,
                          "normalized": bool(args.normalize), "norm_constant": s.norm_constant},
            )
            emit(psi, args.format, f"{args.psi_prefix}{s.n}.{args.format}")


def _cmd_wkb(args, out):
    _write(semiclassical.action_table(_params(args, True), _grid(args), args.nmax), args, out)


def _cmd_scatter(args, out):
    _write(scatter.sweep(_params(args, False), _grid(args)), args, out)


def _cmd_tunnel(args, out):
    _write(semiclassical.tunnel_compare_table(_params(args, False), _grid(args)), args, out)


def _cmd_poles(args, out):
    _write(scatter.continued_sweep(_params(args, True), _grid(args), args.nmax), args, out)


def _cmd_crossover(args, out):
    params = _params(args, False)
    emin = -5.0 if args.emin is None else args.emin
    emax = 5.0 if args.emax is None else args.emax
    ec = scatter.find_crossover(params, (emin, emax))
    if args.format == "json":
        text = json.dumps({"u0": params.u0, "a": params.a, "E_c": ec}, sort_keys=True) + "\n"
    else:
        text = format(ec, ".17g") + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)


def _cmd_selfcheck(args, out):
    results = oracle.run_selfcheck(args.seed)
    for r in results:
        out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "wkb": _cmd_wkb,
    "scatter": _cmd_scatter,
    "tunnel-compare": _cmd_tunnel,
    "poles": _cmd_poles,
    "crossover": _cmd_crossover,
    "selfcheck": _cmd_selfcheck,
}


def dispatch(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        code = COMMANDS[args.command](args, out)
        return EXIT_OK if code is None else code
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except (XWellError, ArithmeticError) as exc:
        err.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
