"""Command line front end: ``sweep``, ``verify`` and ``simulate``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 simulation
blow-up.
"""
from __future__ import annotations

import argparse
import sys

from . import dgsem, sweep as sweep_mod, verification
from .errors import BlowUp, ConfigParseError, InvalidRange, WallfluxError
from .wall import WallFluxKind

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BLOWUP = 3


def _parse_kinds(spec: str) -> tuple[WallFluxKind, ...]:
    if spec.strip().lower() == "all":
        return tuple(WallFluxKind)
    return tuple(WallFluxKind.from_name(part) for part in spec.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallflux",
        description="Slip-wall boundary fluxes for the compressible Euler equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser(
        "sweep", help="tabulate wall pressure ratio and entropy contribution over Ma_n"
    )
    p_sweep.add_argument("--gamma", type=float, default=1.4)
    p_sweep.add_argument("--ma-min", type=float, default=-5.0 + 1e-3)
    p_sweep.add_argument("--ma-max", type=float, default=5.0)
    p_sweep.add_argument("--samples", type=int, default=2001)
    p_sweep.add_argument(
        "--kinds",
        default="all",
        help="comma separated wall flux kinds, or 'all' (default)",
    )
    p_sweep.add_argument("--out", default="sweep.csv", help="output file path")
    p_sweep.add_argument("--format", choices=("csv", "svg"), default="csv")

    p_verify = sub.add_parser("verify", help="run the property suite")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=1)
    p_verify.add_argument(
        "--inject-fault",
        choices=verification.KNOWN_FAULTS,
        default=None,
        help=argparse.SUPPRESS,
    )

    p_sim = sub.add_parser("simulate", help="run the 1D DGSEM and write the entropy budget")
    p_sim.add_argument("--config", required=True, help="key=value config file")
    p_sim.add_argument("--out", default="budget.csv", help="entropy budget CSV path")
    return parser


def cmd_sweep(args) -> int:
    try:
        spec = sweep_mod.SweepSpec(
            gamma=args.gamma,
            ma_min=args.ma_min,
            ma_max=args.ma_max,
            samples=args.samples,
            kinds=_parse_kinds(args.kinds),
        )
        result = sweep_mod.run_sweep(spec)
        if args.format == "svg":
            sweep_mod.write_sweep_svg(result, args.out)
        else:
            sweep_mod.write_sweep_csv(result, args.out)
    except (InvalidRange, ValueError, WallfluxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    total = sum(len(curve.ma) for curve in result.curves)
    print(f"wrote {args.out}: {len(result.curves)} kinds, {total} rows")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        results = verification.run_all(seed=args.seed, trials=args.trials, fault=args.inject_fault)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    failures = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failures += not res.passed
        print(f"{status} {res.name} ({res.detail})")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def cmd_simulate(args) -> int:
    try:
        config = dgsem.config_from_file(args.config)
    except ConfigParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        budget, field = dgsem.run_simulation(config)
    except BlowUp as exc:
        if exc.budget is not None and len(exc.budget.t):
            exc.budget.write_csv(args.out)
            print(f"wrote partial budget to {args.out}")
        print(f"blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP

    budget.write_csv(args.out)
    import numpy as np

    max_defect = float(np.max(np.abs(budget.defect)))
    min_boundary = float(min(np.min(budget.boundary_left), np.min(budget.boundary_right)))
    print(f"wrote {args.out}: {len(budget.t)} rows, t_end = {field.t:.6g}")
    print(f"max |defect| = {max_defect:.3e}")
    print(f"min boundary entropy contribution = {min_boundary:.3e}")
    print("blow-up: none")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        return cmd_sweep(args)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "simulate":
        return cmd_simulate(args)
    raise AssertionError(f"unhandled command {args.command}")  # pragma: no cover


if __name__ == "__main__":
    raise SystemExit(main())
