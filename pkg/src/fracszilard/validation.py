"""Self-checks of the physics stack, shared by the CLI and the test suite.

Each check returns a CheckResult with a pass flag, a one-line human
summary, and a data dict carrying the measured numbers so callers can
apply their own thresholds or report with their own formatting.  The
checks are self-contained: they build their own grids and random points
from explicit seeds, so a given call is reproducible bit for bit.

The random-point checks draw parameters one point at a time, so a run
with fewer points probes a prefix of the same sequence a longer run
probes.
"""

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from . import constants
from .cycle import CycleConfig, run_cycle
from .spectrum import WellSpec, energy_level, reduced_gap
from .sweep import SweepConfig, default_config, run_sweep, write_csv
from .thermo import (
    SeriesTruncationError,
    ThermalContext,
    internal_energy,
    log_partition,
)

LN2 = math.log(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    data: dict


def _warm_kernels():
    """One tiny evaluation so compile time stays out of the timings."""
    run_cycle(CycleConfig(2.0, 1e-9, 2.0, 1.0))


def _random_points(seed, n_points, with_divided=False):
    """n_points draws of (alpha, a_m, T) in the validation envelope.

    alpha in [0.6, 2], half width in [0.5, 50] nm, T in {1, 2} K; one
    point per generator pass, so shorter runs are prefixes of longer
    ones.
    """
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(n_points):
        alpha = float(rng.uniform(0.6, 2.0))
        a_m = float(rng.uniform(0.5, 50.0)) * 1e-9
        temp = float(rng.choice((1.0, 2.0)))
        if with_divided:
            divided = bool(rng.choice((False, True)))
            points.append((alpha, a_m, temp, divided))
        else:
            points.append((alpha, a_m, temp))
    return points


def count_peak_runs(values, rel_tol=1e-9):
    """Number of local maxima of a sampled curve, robust to plateaus.

    Negative samples are clipped to zero (the engine-off region carries
    no peak structure), adjacent samples within rel_tol of the global
    scale are merged into one run, and a run counts as a peak when it is
    strictly higher than every neighbouring run; boundary runs qualify
    via their single neighbour.  A strict pointwise count would report
    spurious peaks from round-off jitter on the deep-quantum plateau.
    """
    vals = [max(float(v), 0.0) for v in values]
    scale = max(abs(v) for v in vals)
    if scale == 0.0:
        return 0
    tol = rel_tol * scale
    runs = [[vals[0]]]
    for prev, cur in zip(vals, vals[1:]):
        if abs(cur - prev) <= tol:
            runs[-1].append(cur)
        else:
            runs.append([cur])
    heights = [sum(r) / len(r) for r in runs]
    peaks = 0
    for i, h in enumerate(heights):
        left_ok = i == 0 or h > heights[i - 1]
        right_ok = i == len(heights) - 1 or h > heights[i + 1]
        if left_ok and right_ok:
            peaks += 1
    return peaks


def check_quadratic_limit(a_list_nm=(0.5, 2.0, 50.0), n_levels=6, rel_tol=1e-14):
    """At alpha = 2 the spectrum must match hbar^2 k^2 / 2m to rel_tol."""
    worst = 0.0
    for a_nm in a_list_nm:
        for divided in (False, True):
            well = WellSpec(2.0, a_nm * 1e-9, divided=divided)
            for n in range(1, n_levels + 1):
                n_eff = 2 * n if divided else n
                k = n_eff * math.pi * constants.HBAR / (2.0 * well.half_width_m)
                reference = k * k / (2.0 * well.mass_kg)
                worst = max(worst, abs(energy_level(well, n) - reference) / reference)
    passed = worst <= rel_tol
    return CheckResult(
        name="quadratic-limit",
        passed=passed,
        detail=f"worst rel deviation {worst:.3e} (budget {rel_tol:g})",
        data={"worst_rel": worst, "rel_tol": rel_tol},
    )


def check_oracle_equivalence(
    n_points=20,
    seed=0,
    lnz_rel=1e-12,
    mean_energy_rel=1e-10,
    work_rel=1e-10,
    efficiency_rel=1e-10,
    oracle_budget_s=60.0,
    main_budget_s=1.0,
):
    """Production stack vs the arbitrary-precision oracle on random points.

    Compares ln Z (divided and undivided), mean energy, and the cycle's
    work and efficiency at each drawn point; also requires the two
    implementations to agree on where efficiency is defined, and both
    loops to finish inside their time budgets.
    """
    from . import oracle

    _warm_kernels()
    points = _random_points(seed, n_points)

    t0 = time.perf_counter()
    main = []
    for alpha, a_m, temp in points:
        well = WellSpec(alpha, a_m)
        ctx = ThermalContext(temp)
        part_u = log_partition(well, ctx)
        part_d = log_partition(well.with_divider(), ctx)
        cyc = run_cycle(CycleConfig(alpha, a_m, 2.0, 1.0))
        main.append((part_u.log_z, part_d.log_z, internal_energy(part_u),
                     cyc.work_j, cyc.efficiency))
    main_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    reference = []
    for alpha, a_m, temp in points:
        lz_u = oracle.oracle_log_partition(alpha, a_m, temp, divided=False)
        lz_d = oracle.oracle_log_partition(alpha, a_m, temp, divided=True)
        u = oracle.oracle_internal_energy(alpha, a_m, temp, divided=False)
        cyc = oracle.oracle_cycle(alpha, a_m, 2.0, 1.0)
        reference.append((lz_u, lz_d, u, cyc["work"], cyc["efficiency"]))
    oracle_s = time.perf_counter() - t0

    import mpmath

    worst = {"lnz": 0.0, "mean_energy": 0.0, "work": 0.0, "efficiency": 0.0}
    eta_defined_agree = True
    for got, ref in zip(main, reference):
        worst["lnz"] = max(
            worst["lnz"],
            float(abs((mpmath.mpf(got[0]) - ref[0]) / ref[0])),
            float(abs((mpmath.mpf(got[1]) - ref[1]) / ref[1])),
        )
        worst["mean_energy"] = max(
            worst["mean_energy"], float(abs((mpmath.mpf(got[2]) - ref[2]) / ref[2]))
        )
        worst["work"] = max(
            worst["work"], float(abs((mpmath.mpf(got[3]) - ref[3]) / ref[3]))
        )
        if (got[4] is None) != (ref[4] is None):
            eta_defined_agree = False
        elif got[4] is not None:
            worst["efficiency"] = max(
                worst["efficiency"], float(abs((mpmath.mpf(got[4]) - ref[4]) / ref[4]))
            )
    passed = (
        worst["lnz"] <= lnz_rel
        and worst["mean_energy"] <= mean_energy_rel
        and worst["work"] <= work_rel
        and worst["efficiency"] <= efficiency_rel
        and eta_defined_agree
        and oracle_s < oracle_budget_s
        and main_s < main_budget_s
    )
    return CheckResult(
        name="oracle-equivalence",
        passed=passed,
        detail=(
            f"{n_points} points: worst rel lnZ {worst['lnz']:.2e}, "
            f"mean energy {worst['mean_energy']:.2e}, work {worst['work']:.2e}, "
            f"efficiency {worst['efficiency']:.2e}; oracle {oracle_s:.2f}s "
            f"(<{oracle_budget_s:g}s), main {main_s:.3f}s (<{main_budget_s:g}s)"
        ),
        data={
            "worst": worst,
            "eta_defined_agree": eta_defined_agree,
            "oracle_s": oracle_s,
            "main_s": main_s,
            "n_points": n_points,
        },
    )


def _grid_cycles(config):
    """CycleResults over a sweep grid, alpha-major then ascending size."""
    results = []
    for alpha in config.alpha_list:
        for a_nm in sorted(config.a_list_nm):
            cfg = CycleConfig(
                alpha=alpha,
                half_width_m=a_nm * 1e-9,
                t_hot_k=config.t_hot_k,
                t_cold_k=config.t_cold_k,
                mass_kg=config.mass_kg,
                chi=config.chi,
                tolerance=config.tolerance,
                term_cap=config.term_cap,
            )
            results.append((alpha, a_nm, run_cycle(cfg)))
    return results


def check_first_law(config=None, rel_budget=1e-10, time_budget_s=5.0):
    """Closed-cycle energy audit over a sweep grid, with a time budget.

    The residual W - sum(Q) must stay below rel_budget of
    max(|W|, k_B T_h) at every grid point.
    """
    if config is None:
        config = default_config()
    _warm_kernels()
    t0 = time.perf_counter()
    results = _grid_cycles(config)
    elapsed = time.perf_counter() - t0
    worst = 0.0
    for _, _, res in results:
        scale = max(abs(res.work_j), constants.BOLTZMANN * config.t_hot_k)
        worst = max(worst, abs(res.first_law_residual_j) / scale)
    passed = worst <= rel_budget and elapsed < time_budget_s
    return CheckResult(
        name="first-law",
        passed=passed,
        detail=(
            f"{len(results)} grid points: worst residual ratio {worst:.3e} "
            f"(budget {rel_budget:g}), {elapsed:.2f}s (<{time_budget_s:g}s)"
        ),
        data={"worst_ratio": worst, "elapsed_s": elapsed, "n_points": len(results)},
    )


def check_work_curve_shape(
    config=None,
    alpha=2.0,
    far_a_nm=500.0,
    far_rel=0.02,
    peak_rel_tol=1e-9,
):
    """Shape of W(a) on the default grid at the quadratic exponent.

    The engine-on region (W > 0) must be one contiguous band that ends
    inside the grid, the curve must have exactly one peak in the
    plateau-robust sense of count_peak_runs, and far outside the band
    |W| must fall below far_rel * k_B T_h.
    """
    if config is None:
        config = default_config()
    config = replace(config, alpha_list=(alpha,))
    results = _grid_cycles(config)
    w = [res.work_j for _, _, res in results]
    positive = [x > 0.0 for x in w]
    n_pos = sum(positive)
    first_pos = positive.index(True) if n_pos else -1
    contiguous = n_pos > 0 and all(positive[first_pos:first_pos + n_pos]) and not any(
        positive[first_pos + n_pos:]
    )
    ends_inside = n_pos > 0 and not positive[-1]
    peaks = count_peak_runs(w, rel_tol=peak_rel_tol)
    far = run_cycle(CycleConfig(
        alpha=alpha,
        half_width_m=far_a_nm * 1e-9,
        t_hot_k=config.t_hot_k,
        t_cold_k=config.t_cold_k,
        mass_kg=config.mass_kg,
        chi=config.chi,
        tolerance=config.tolerance,
        term_cap=config.term_cap,
    ))
    far_bound = far_rel * constants.BOLTZMANN * config.t_hot_k
    far_ok = abs(far.work_j) < far_bound
    passed = contiguous and ends_inside and peaks == 1 and far_ok
    return CheckResult(
        name="work-curve-shape",
        passed=passed,
        detail=(
            f"alpha={alpha}: {n_pos} positive points "
            f"(contiguous={contiguous}, ends inside grid={ends_inside}), "
            f"{peaks} peak(s), |W({far_a_nm:g} nm)|={abs(far.work_j):.3e} J "
            f"< {far_bound:.3e} J: {far_ok}"
        ),
        data={
            "n_positive": n_pos,
            "contiguous": contiguous,
            "ends_inside": ends_inside,
            "peaks": peaks,
            "far_work_j": far.work_j,
            "far_bound_j": far_bound,
        },
    )


def check_szilard_limit(cases=((2.0, 1.0), (1.5, 1.0)), rel_tol=1e-4,
                        t_hot_k=2.0, t_cold_k=1.0, min_theta=100.0):
    """Deep-quantum work must reach the two-state splitting value.

    For configurations whose cold-bath ground exponent exceeds min_theta
    the net work must equal k_B (T_h - T_c) ln 2 to rel_tol.  cases is a
    sequence of (alpha, half width in nm).
    """
    expected = constants.BOLTZMANN * (t_hot_k - t_cold_k) * LN2
    worst = 0.0
    min_theta_seen = math.inf
    for alpha, a_nm in cases:
        well = WellSpec(alpha, a_nm * 1e-9)
        theta_c = reduced_gap(well, ThermalContext(t_cold_k))
        min_theta_seen = min(min_theta_seen, theta_c)
        res = run_cycle(CycleConfig(alpha, a_nm * 1e-9, t_hot_k, t_cold_k))
        worst = max(worst, abs(res.work_j - expected) / expected)
    deep_enough = min_theta_seen >= min_theta
    passed = deep_enough and worst <= rel_tol
    return CheckResult(
        name="two-state-limit",
        passed=passed,
        detail=(
            f"{len(cases)} deep-quantum cases (min theta_cold "
            f"{min_theta_seen:.3g} >= {min_theta:g}: {deep_enough}): worst rel "
            f"deviation from kB dT ln2 is {worst:.3e} (budget {rel_tol:g})"
        ),
        data={"worst_rel": worst, "min_theta": min_theta_seen},
    )


def check_fractional_persistence(
    config=None,
    alpha_ref=2.0,
    alpha_frac=1.5,
    band=(2.0, 5.0),
    plateau_rel=1e-9,
):
    """Lower exponent must keep the engine strong past the quadratic peak.

    The reference size a* is the rightmost grid point still on the
    quadratic work plateau (within plateau_rel of the maximum; the
    literal argmax inside a flat plateau is round-off lottery).  On
    every grid point in [band[0] * a*, band[1] * a*] the fractional work
    must exceed the quadratic work, and the fractional efficiency must
    exceed the quadratic one wherever both are defined.
    """
    if config is None:
        config = default_config()
    a_grid = tuple(sorted(config.a_list_nm))
    base = replace(config, a_list_nm=a_grid)
    ref = [res for _, _, res in _grid_cycles(replace(base, alpha_list=(alpha_ref,)))]
    frac = [res for _, _, res in _grid_cycles(replace(base, alpha_list=(alpha_frac,)))]
    w_ref = [r.work_j for r in ref]
    w_max = max(w_ref)
    plateau = [i for i, w in enumerate(w_ref) if w >= (1.0 - plateau_rel) * w_max]
    a_star = a_grid[max(plateau)]
    in_band = [i for i, a in enumerate(a_grid)
               if band[0] * a_star <= a <= band[1] * a_star]
    work_margins = [frac[i].work_j - ref[i].work_j for i in in_band]
    eta_pairs = [(frac[i].efficiency, ref[i].efficiency) for i in in_band
                 if frac[i].efficiency is not None and ref[i].efficiency is not None]
    work_ok = bool(in_band) and all(m > 0.0 for m in work_margins)
    eta_ok = all(ef > er for ef, er in eta_pairs)
    passed = work_ok and eta_ok
    min_margin = min(work_margins) if work_margins else math.nan
    return CheckResult(
        name="fractional-persistence",
        passed=passed,
        detail=(
            f"a*={a_star:.4g} nm, band [{band[0]:g}a*, {band[1]:g}a*] holds "
            f"{len(in_band)} grid points: work margin "
            f"min {min_margin:.3e} J all positive: {work_ok}; efficiency "
            f"ordering holds on {len(eta_pairs)} defined pairs: {eta_ok}"
        ),
        data={
            "a_star_nm": a_star,
            "n_band": len(in_band),
            "min_work_margin_j": min_margin,
            "n_eta_pairs": len(eta_pairs),
            "work_ok": work_ok,
            "eta_ok": eta_ok,
        },
    )


def check_carnot(config=None, slack=1e-9):
    """No grid efficiency may exceed 1 - T_c / T_h (plus float slack)."""
    if config is None:
        config = default_config()
    records = run_sweep(config)
    carnot = 1.0 - config.t_cold_k / config.t_hot_k
    defined = [r.efficiency for r in records if r.efficiency is not None]
    worst = max(defined) if defined else -math.inf
    passed = worst <= carnot + slack
    return CheckResult(
        name="carnot-bound",
        passed=passed,
        detail=(
            f"max efficiency {worst:.12f} vs bound {carnot:g} (+{slack:g}) "
            f"over {len(defined)} defined points"
        ),
        data={"max_efficiency": worst, "carnot": carnot, "n_defined": len(defined)},
    )


def check_derivative_consistency(n_points=30, seed=7, rel_tol=1e-5, rel_step=1e-6):
    """U must match the central difference of -ln Z over beta.

    The step is rel_step * beta; the comparison tolerance leaves room
    for the O(step^2) truncation and the subtraction noise of the
    difference quotient.
    """
    _warm_kernels()
    worst = 0.0
    for alpha, a_m, temp, divided in _random_points(seed, n_points, with_divided=True):
        well = WellSpec(alpha, a_m, divided=divided)
        ctx = ThermalContext(temp)
        beta = ctx.beta
        delta = rel_step * beta
        u = internal_energy(log_partition(well, ctx))
        log_z_plus = log_partition(well, ThermalContext.from_beta(beta + delta)).log_z
        log_z_minus = log_partition(well, ThermalContext.from_beta(beta - delta)).log_z
        u_fd = -(log_z_plus - log_z_minus) / (2.0 * delta)
        worst = max(worst, abs(u_fd - u) / u)
    passed = worst <= rel_tol
    return CheckResult(
        name="derivative-consistency",
        passed=passed,
        detail=(
            f"{n_points} random points: worst rel difference {worst:.3e} "
            f"(budget {rel_tol:g})"
        ),
        data={"worst_rel": worst, "n_points": n_points},
    )


def check_determinism(config=None, workers=4):
    """Sweeps must be bitwise reproducible, serially and threaded.

    Runs the grid twice serially and once with a thread pool and
    requires the three CSV payloads to be byte-identical.
    """
    import io

    if config is None:
        config = default_config()
    _warm_kernels()

    def csv_bytes(records):
        buf = io.StringIO()
        write_csv(records, buf)
        return buf.getvalue().encode("utf-8")

    first = csv_bytes(run_sweep(config, workers=1))
    second = csv_bytes(run_sweep(config, workers=1))
    threaded = csv_bytes(run_sweep(config, workers=workers))
    rerun_ok = first == second
    thread_ok = first == threaded
    passed = rerun_ok and thread_ok
    return CheckResult(
        name="determinism",
        passed=passed,
        detail=(
            f"{len(config.alpha_list) * len(config.a_list_nm)} points, "
            f"{len(first)} CSV bytes: rerun identical: {rerun_ok}, "
            f"{workers}-thread run identical: {thread_ok}"
        ),
        data={"rerun_ok": rerun_ok, "thread_ok": thread_ok, "n_bytes": len(first)},
    )


def check_truncation_reporting(alpha=2.0, a_nm=50.0, temp_k=2.0, term_cap=10):
    """A hopeless term cap must fail loudly and carry its diagnostics."""
    well = WellSpec(alpha, a_nm * 1e-9)
    ctx = ThermalContext(temp_k)
    try:
        log_partition(well, ctx, term_cap=term_cap)
    except SeriesTruncationError as exc:
        sane = (
            exc.n_terms == term_cap
            and exc.s0 > 0.0
            and (exc.tail_rel > exc.tol or math.isinf(exc.tail_rel))
        )
        return CheckResult(
            name="truncation-reporting",
            passed=sane,
            detail=(
                f"cap {term_cap} failed as required; payload n_terms="
                f"{exc.n_terms}, tail_rel={exc.tail_rel:.3g}, consistent: {sane}"
            ),
            data={"raised": True, "payload_ok": sane, "tail_rel": exc.tail_rel},
        )
    return CheckResult(
        name="truncation-reporting",
        passed=False,
        detail=f"cap {term_cap} unexpectedly succeeded",
        data={"raised": False, "payload_ok": False},
    )


def _fast_sweep_config():
    """A reduced grid for the CLI validate path: same envelope, fewer points."""
    return replace(
        default_config(),
        alpha_list=(2.0, 1.5),
        a_list_nm=tuple(float(a) for a in np.geomspace(0.5, 200.0, 40)),
    )


def run_all_checks(fast=True):
    """Every check with either quick (CLI) or full (acceptance) settings."""
    if fast:
        small = _fast_sweep_config()
        return [
            check_quadratic_limit(),
            check_oracle_equivalence(n_points=5),
            check_first_law(config=small),
            check_work_curve_shape(),
            check_szilard_limit(),
            check_fractional_persistence(),
            check_carnot(config=small),
            check_derivative_consistency(n_points=5),
            check_determinism(config=small),
            check_truncation_reporting(),
        ]
    return [
        check_quadratic_limit(),
        check_oracle_equivalence(),
        check_first_law(),
        check_work_curve_shape(),
        check_szilard_limit(),
        check_fractional_persistence(),
        check_carnot(),
        check_derivative_consistency(),
        check_determinism(),
        check_truncation_reporting(),
    ]
