"""Command-line interface.

Subcommands: spectrum (level table), partition (log partition function
and derived state quantities), cycle (one full cycle), sweep (grid to
CSV), validate (physics self-checks).

Exit codes: 0 on success, 1 when a requested computation or validation
did not pass (uncertified series truncation, failed self-checks), 2 for
configuration and usage errors.
"""

import argparse
import sys
import time

from . import constants
from .cycle import CycleConfig, run_cycle
from .kernels import active_backend
from .spectrum import WellSpec, d_alpha, levels
from .sweep import ConfigError, default_config, parse_config, run_sweep, write_csv
from .thermo import (
    SeriesTruncationError,
    ThermalContext,
    helmholtz_free_energy,
    internal_energy,
    log_partition,
)
from .validation import run_all_checks

EXIT_OK = 0
EXIT_COMPUTATION_FAILED = 1
EXIT_CONFIG_ERROR = 2


def _add_well_arguments(parser, with_divided=True):
    parser.add_argument("--alpha", type=float, required=True,
                        help="kinetic exponent, in (0, 2]")
    parser.add_argument("--a-nm", type=float, required=True,
                        help="half width of the box in nm (walls at -a and +a)")
    parser.add_argument("--mass-kg", type=float, default=constants.ELECTRON_MASS,
                        help="particle mass in kg")
    parser.add_argument("--chi", type=float, default=constants.DEFAULT_CHI,
                        help="dimensionless kinetic coefficient scale")
    if with_divided:
        parser.add_argument("--divided", action="store_true",
                            help="evaluate the box with the central wall inserted")


def _add_series_arguments(parser):
    parser.add_argument("--tolerance", type=float, default=constants.DEFAULT_TOLERANCE,
                        help="certified relative tail budget of the spectral sums")
    parser.add_argument("--term-cap", type=int, default=constants.DEFAULT_TERM_CAP,
                        help="hard cap on summed terms")


def _well_from_args(args, divided=None):
    return WellSpec(
        alpha=args.alpha,
        half_width_m=args.a_nm * 1e-9,
        mass_kg=args.mass_kg,
        chi=args.chi,
        divided=args.divided if divided is None else divided,
    )


def _cmd_spectrum(args):
    well = _well_from_args(args)
    print(f"alpha={well.alpha:g}  a={args.a_nm:g} nm  divided={well.divided}")
    print(f"kinetic coefficient D = {d_alpha(well.alpha, well.mass_kg, well.chi):.12e}")
    print(f"{'n':>4}  {'E_n [J]':>24}  {'degeneracy':>10}")
    for level in levels(well, args.n_max):
        print(f"{level.n:>4}  {level.energy_j:>24.15e}  {level.degeneracy:>10}")
    return EXIT_OK


def _cmd_partition(args):
    well = _well_from_args(args)
    ctx = ThermalContext.from_temperature(args.temp_k)
    part = log_partition(well, ctx, tol=args.tolerance, term_cap=args.term_cap)
    print(f"alpha={well.alpha:g}  a={args.a_nm:g} nm  T={args.temp_k:g} K  "
          f"divided={well.divided}  backend={active_backend()}")
    print(f"theta (ground exponent)     = {part.theta:.15e}")
    print(f"ln Z                        = {part.log_z:.15e}")
    print(f"internal energy U [J]       = {internal_energy(part):.15e}")
    print(f"free energy F [J]           = {helmholtz_free_energy(part):.15e}")
    print(f"terms summed                = {part.n_terms}")
    print(f"certified relative tail     = {part.tail_rel:.3e}")
    return EXIT_OK


def _cmd_cycle(args):
    config = CycleConfig(
        alpha=args.alpha,
        half_width_m=args.a_nm * 1e-9,
        t_hot_k=args.th_k,
        t_cold_k=args.tc_k,
        mass_kg=args.mass_kg,
        chi=args.chi,
        tolerance=args.tolerance,
        term_cap=args.term_cap,
    )
    result = run_cycle(config)
    kbth = constants.BOLTZMANN * args.th_k
    print(f"alpha={args.alpha:g}  a={args.a_nm:g} nm  T_hot={args.th_k:g} K  "
          f"T_cold={args.tc_k:g} K  backend={active_backend()}")
    for label, value in (("Q_AB (divide, hot)", result.q_ab_j),
                         ("Q_BC (cool)", result.q_bc_j),
                         ("Q_CD (merge, cold)", result.q_cd_j),
                         ("Q_DA (heat)", result.q_da_j)):
        print(f"{label:<22} = {value:+.15e} J")
    print(f"{'net work W':<22} = {result.work_j:+.15e} J "
          f"({result.work_j / kbth:+.6f} kB T_hot)")
    if result.efficiency is not None:
        print(f"{'efficiency W/Q_in':<22} = {result.efficiency:.12f}")
    else:
        print(f"{'efficiency W/Q_in':<22} = undefined (not operating as an engine)")
    print(f"{'energy audit residual':<22} = {result.first_law_residual_j:+.3e} J")
    return EXIT_OK


def _cmd_sweep(args):
    if args.config is not None:
        config = parse_config(args.config)
    else:
        config = default_config()
    out_path = args.out or config.output_path or "sweep.csv"
    t0 = time.perf_counter()
    records = run_sweep(config, workers=args.workers)
    elapsed = time.perf_counter() - t0
    write_csv(records, out_path)
    counts = {}
    for rec in records:
        counts[rec.status] = counts.get(rec.status, 0) + 1
    summary = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
    print(f"{len(records)} points in {elapsed:.2f}s ({summary}) -> {out_path}")
    return EXIT_OK


def _cmd_validate(args):
    results = run_all_checks(fast=not args.full)
    width = max(len(r.name) for r in results)
    failures = 0
    for res in results:
        mark = "PASS" if res.passed else "FAIL"
        print(f"[{mark}] {res.name:<{width}}  {res.detail}")
        if not res.passed:
            failures += 1
    print(f"{len(results) - failures}/{len(results)} checks passed "
          f"(backend={active_backend()})")
    return EXIT_OK if failures == 0 else EXIT_COMPUTATION_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fracszilard",
        description=(
            "Stirling-cycle thermodynamics of one particle in a fractional "
            "infinite well: spectra, log partition functions, cycle heats, "
            "work and efficiency, and (alpha, size) sweeps to CSV."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="print the first levels of one well")
    _add_well_arguments(p)
    p.add_argument("--n-max", type=int, default=8, help="levels to print")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("partition", help="log partition function of one well")
    _add_well_arguments(p)
    p.add_argument("--temp-k", type=float, required=True, help="bath temperature in K")
    _add_series_arguments(p)
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("cycle", help="run one full division cycle")
    _add_well_arguments(p, with_divided=False)
    p.add_argument("--th-k", type=float, default=2.0, help="hot bath temperature in K")
    p.add_argument("--tc-k", type=float, default=1.0, help="cold bath temperature in K")
    _add_series_arguments(p)
    p.set_defaults(func=_cmd_cycle)

    p = sub.add_parser("sweep", help="evaluate a grid of cycles and write CSV")
    p.add_argument("--config", help="JSON sweep configuration file")
    p.add_argument("--out", help="output CSV path (overrides the config)")
    p.add_argument("--workers", type=int, default=1,
                   help="worker threads; results are identical for any count")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("validate", help="run the physics self-checks")
    p.add_argument("--full", action="store_true",
                   help="acceptance-sized grids instead of the quick set")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SeriesTruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION_FAILED
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
