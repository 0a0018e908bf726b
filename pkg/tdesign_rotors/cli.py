"""Command-line front end.

    tdesign-rotors verify   --t 2 [--points FILE] [--out-csv FILE]
    tdesign-rotors solve    --t 5 --n 12 --seed sweep --out FILE
    tdesign-rotors scaling  --config scenarios/charged.toml [--out-csv F] [--out-svg F]
    tdesign-rotors entangle --config scenarios/electrostatic.toml
    tdesign-rotors gravity  --t 1 [--separation X Y Z] [--total-mass KG] [--noise-mass KG]
    tdesign-rotors spin     --t 2 --field-order 3

Exit codes: 0 success, 1 check failed, 2 bad input, 3 numerical
non-convergence.
"""

from __future__ import annotations

import dataclasses
import argparse
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from tdesign_rotors.config import OUTPUT_DIR_ENV, ScenarioConfig, load_config
from tdesign_rotors.constants import MAX_DEGREE
from tdesign_rotors.design_factory import get_design_source, load_design_safe
from tdesign_rotors.designs import Provenance, TDesign, catalog_design, verify_design
from tdesign_rotors.entangle import GravityParams, electrostatic_study, gravitational_scenario
from tdesign_rotors.errors import OptimizationError, SolverError
from tdesign_rotors.geometry import random_rotation
from tdesign_rotors.optimize import OptimizerConfig
from tdesign_rotors.phases import ScalingRow, scaling_study
from tdesign_rotors.pointfile import read_points, write_design
from tdesign_rotors.reports import (
    atomic_write_text,
    dfs_frame,
    scaling_frame,
    scenario_summary,
    verification_frame,
    write_csv,
)
from tdesign_rotors.spindfs import dfs_check
from tdesign_rotors.svgplot import Series, log_chart

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_NO_CONVERGENCE = 3


def _output_path(path: str | None) -> Path | None:
    """Relative output paths land in ``TDESIGN_ROTORS_OUTPUT_DIR`` when it is set."""
    if path is None:
        return None
    p = Path(path)
    env_dir = os.environ.get(OUTPUT_DIR_ENV)
    return Path(env_dir) / p if env_dir and not p.is_absolute() else p


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    cfg = load_config(args.config)
    return cfg if args.seed is None else cfg.with_seed(args.seed)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    if args.points:
        points = read_points(args.points)
    else:
        points = catalog_design(args.t).points
    t_max = min(args.t + 1, MAX_DEGREE)
    report = verify_design(points, t_max, args.tol)
    print(f"certified_t = {report.certified_t}")
    for l, r in report.rows():
        print(f"  l = {l:2d}  residual = {r!r}")
    if args.out_csv:
        write_csv(verification_frame(report), _output_path(args.out_csv))
    return EXIT_OK if report.certified_t >= args.t else EXIT_CHECK_FAILED


def cmd_solve(args: argparse.Namespace) -> int:
    if args.seed == "sweep":
        source = get_design_source(
            "solver", n=args.n, seed=0, restarts=args.restarts, sweep=args.sweep
        )
    else:
        try:
            seed = int(args.seed)
        except ValueError:
            msg = f"--seed must be an integer or 'sweep', got {args.seed!r}"
            raise ValueError(msg) from None
        source = get_design_source("solver", n=args.n, seed=seed, restarts=args.restarts)
    try:
        design = source.load(args.t)
    except SolverError as exc:
        print(f"best residual = {exc.best_residual!r}", file=sys.stderr)
        raise
    print(f"solved t = {design.t} with N = {design.n_points}, residual = {design.residual!r}")
    if args.out:
        write_design(_output_path(args.out), design)
    return EXIT_OK


def _scaling_svg(rows: list[ScalingRow], title: str) -> str:
    ts = [r.t for r in rows]
    return log_chart(
        [
            Series("signal", ts, [r.delta_signal for r in rows]),
            Series("noise", ts, [r.delta_noise for r in rows]),
        ],
        title=title,
    )


def cmd_scaling(args: argparse.Namespace) -> int:
    cfg = _scenario(args)
    rows = scaling_study(cfg.phase_scenario(), cfg.design.t_list, optimize=cfg.optimize)
    for r in rows:
        if r.missing:
            print(f"t = {r.t}: missing")
        else:
            print(
                f"t = {r.t}: signal {r.delta_signal:.6g} Hz, "
                f"noise {r.delta_noise:.6g} Hz, ratio {r.ratio:.6g}"
            )
    write_csv(scaling_frame(rows), _output_path(args.out_csv) or cfg.csv_path)
    svg_path = _output_path(args.out_svg) or cfg.svg_path
    if svg_path is not None:
        atomic_write_text(svg_path, _scaling_svg(rows, "Phase rate vs design order"))
    return EXIT_OK


def cmd_entangle(args: argparse.Namespace) -> int:
    cfg = _scenario(args)
    results = electrostatic_study(
        cfg.phase_scenario(), cfg.design.t_list, cfg.separation, cfg.time_s
    )
    reports = [r for _, r in results if r is not None]
    summary = scenario_summary(reports)
    print(summary, end="")
    rows = [ScalingRow.missing_row(t) if r is None else r.to_row() for t, r in results]
    write_csv(scaling_frame(rows), _output_path(args.out_csv) or cfg.csv_path)
    summary_path = _output_path(args.summary) or cfg.summary_path
    if summary_path is not None:
        atomic_write_text(summary_path, summary)
    return EXIT_OK


def _gravity_params(args: argparse.Namespace) -> GravityParams:
    """GravityParams defaults, overridden by whichever geometry flags were given."""
    overrides = {
        name: getattr(args, name)
        for name in (
            "density", "central_radius", "total_mass", "noise_mass", "noise_distance"
        )
        if getattr(args, name) is not None
    }
    if args.separation is not None:
        overrides["separation"] = tuple(args.separation)
    return dataclasses.replace(
        GravityParams(),
        time_s=args.time,
        optimizer=OptimizerConfig(restarts=args.restarts, seed=args.seed or 0),
        **overrides,
    )


def cmd_gravity(args: argparse.Namespace) -> int:
    params = _gravity_params(args)
    design: TDesign | None = None
    if args.points:
        points = read_points(args.points)
        design = TDesign.certify(points, args.t, Provenance.FILE, tol=1e-9)
    report = gravitational_scenario(args.t, params, design)
    print(scenario_summary([report]), end="")
    if args.out_csv:
        write_csv(scaling_frame([report.to_row()]), _output_path(args.out_csv))
    return EXIT_OK


def cmd_spin(args: argparse.Namespace) -> int:
    design = load_design_safe(args.t, seed=args.seed or 0)
    seed = args.seed or 0
    report = dfs_check(design, random_rotation(seed), args.field_order, args.trials, seed)
    for row in report.rows:
        print(
            f"degree {row.degree}: max phase rate {row.max_phase_rate:.6g} rad/s "
            f"(relative {row.max_relative:.3g})"
        )
    if args.out_csv:
        write_csv(dfs_frame(report), _output_path(args.out_csv))
    return EXIT_OK if report.protected else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdesign-rotors",
        description=(
            "Spherical t-design rotors: design verification, phase scaling "
            "and entanglement studies."
        ),
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="certify a catalog design or a point file")
    p.add_argument("--t", type=int, required=True, help="requested design order")
    p.add_argument("--points", help="point file to verify instead of the catalog design")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out-csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="search for a t-design numerically")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="number of points (default from t)")
    p.add_argument("--seed", default="0", help="integer seed, or 'sweep'")
    p.add_argument("--sweep", type=int, default=8, help="seeds tried with --seed sweep")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--out", help="point file to write")
    p.set_defaults(func=cmd_solve)

    for name, func, help_text in (
        ("scaling", cmd_scaling, "signal/noise phase rates across design orders"),
        ("entangle", cmd_entangle, "two-body electrostatic entanglement study"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="TOML scenario file")
        p.add_argument("--seed", type=int, default=None, help="override every config seed")
        p.add_argument("--out-csv")
        if name == "scaling":
            p.add_argument("--out-svg")
        else:
            p.add_argument("--summary", help="text summary file")
        p.set_defaults(func=func)

    p = sub.add_parser("gravity", help="gravitational entanglement of two sphere composites")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--points", help="point file for the design (default: catalog or solver)")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--time", type=float, default=1.0, help="evolution time T in seconds")
    p.add_argument(
        "--separation", type=float, nargs=3, metavar=("X", "Y", "Z"),
        help="centre-to-centre separation in m (default 0 0 200e-6)",
    )
    p.add_argument("--density", type=float, help="material density in kg/m^3 (default diamond)")
    p.add_argument("--central-radius", type=float, help="central sphere radius in m")
    p.add_argument("--total-mass", type=float, help="mass budget per composite in kg")
    p.add_argument("--noise-mass", type=float, help="perturbing mass in kg")
    p.add_argument("--noise-distance", type=float, help="distance of the perturbing mass in m")
    p.add_argument("--out-csv")
    p.set_defaults(func=cmd_gravity)

    p = sub.add_parser("spin", help="decoherence-free spin subspace check")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--field-order", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out-csv")
    p.set_defaults(func=cmd_spin)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.func(args)
    except (SolverError, OptimizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
