"""Four-stroke Stirling cycle of a particle in a dividable fractional well.

Corner labels, all at fixed box size:

    A  undivided, hot bath      B  divided, hot bath
    C  divided, cold bath       D  undivided, cold bath

The legs are A->B (isothermal division at T_h), B->C (isochoric cooling),
C->D (isothermal merge at T_c) and D->A (isochoric heating).  Heats are
positive into the particle:

    Q_AB = U_B - U_A + k_B T_h ln(Z_B / Z_A)
    Q_BC = U_C - U_B
    Q_CD = U_D - U_C + k_B T_c ln(Z_D / Z_C)
    Q_DA = U_A - U_D
    W    = k_B T_h ln(Z_B / Z_A) - k_B T_c ln(Z_C / Z_D)

Naive assembly from ln Z loses up to ~8 digits here: ln Z is dominated by
-theta (theta reaches 1e7 on physical grids) while W is of order k_B T.
The identity k_B T theta = E_1, exact by construction, lets every theta
cancel analytically.  With ls_X = ln S0 at corner X and u_X = U_X - E_1,X
the assembled forms are

    Q_AB = (u_B - u_A) + k_B T_h (ln 2 + ls_B - ls_A)
    Q_BC = u_C - u_B
    Q_CD = (u_D - u_C) + k_B T_c (ls_D - ls_C - ln 2)
    Q_DA = u_A - u_D
    W    = k_B (T_h - T_c) ln 2
           + k_B (T_h (ls_B - ls_A) - T_c (ls_C - ls_D))

in which every operand is O(k_B T).  The u_X are computed once and shared
between the heats, so the closed-cycle identity W = sum(Q) holds in
floating point to ~1e-16 relative, far inside the audited budget.

Efficiency is defined as W over the absorbed heat Q_DA + Q_AB, and only
when both that sum and W are positive; otherwise it is None.
"""

import math
from dataclasses import dataclass
from typing import Optional

from . import constants
from .spectrum import WellSpec
from .thermo import LN2, ThermalContext, excess_energy, log_partition

# Relative budget for the closed-cycle energy audit in run_cycle.
FIRST_LAW_REL = 1e-10


class FirstLawViolationError(RuntimeError):
    """The assembled heats and work failed the closed-cycle audit.

    This cannot be triggered by unusual physical inputs; it indicates a
    defect in the cycle assembly and is therefore never swallowed.
    """

    def __init__(self, residual_j, bound_j):
        self.residual_j = residual_j
        self.bound_j = bound_j
        super().__init__(
            f"cycle energy residual {residual_j:.6g} J exceeds audit bound "
            f"{bound_j:.6g} J"
        )


@dataclass(frozen=True)
class CycleConfig:
    """One cycle evaluation: well geometry plus the two bath temperatures."""

    alpha: float
    half_width_m: float
    t_hot_k: float
    t_cold_k: float
    mass_kg: float = constants.ELECTRON_MASS
    chi: float = constants.DEFAULT_CHI
    tolerance: float = constants.DEFAULT_TOLERANCE
    term_cap: int = constants.DEFAULT_TERM_CAP

    def __post_init__(self):
        if not (self.t_hot_k > 0.0) or not math.isfinite(self.t_hot_k):
            raise ValueError(f"t_hot_k must be positive and finite, got {self.t_hot_k}")
        if not (self.t_cold_k > 0.0) or not math.isfinite(self.t_cold_k):
            raise ValueError(
                f"t_cold_k must be positive and finite, got {self.t_cold_k}"
            )
        # geometry parameters are validated by WellSpec
        WellSpec(self.alpha, self.half_width_m, self.mass_kg, self.chi)


@dataclass(frozen=True)
class Heats:
    """Per-leg heats of one cycle, in joules, positive into the particle."""

    q_ab_j: float
    q_bc_j: float
    q_cd_j: float
    q_da_j: float

    @property
    def total_j(self):
        return self.q_ab_j + self.q_bc_j + self.q_cd_j + self.q_da_j

    @property
    def absorbed_j(self):
        """Heat taken in over the two heating legs, Q_DA + Q_AB."""
        return self.q_da_j + self.q_ab_j


@dataclass(frozen=True)
class CycleResult:
    """Heats, work, efficiency and audit residual of one cycle."""

    config: CycleConfig
    q_ab_j: float
    q_bc_j: float
    q_cd_j: float
    q_da_j: float
    work_j: float
    efficiency: Optional[float]
    heat_in_j: float
    first_law_residual_j: float
    corners: tuple


def _check_corners(pa, pb, pc, pd):
    wa, wb, wc, wd = pa.well, pb.well, pc.well, pd.well
    if wa.divided or wd.divided or not (wb.divided and wc.divided):
        raise ValueError("corners must be A undivided, B divided, C divided, D undivided")
    base = (wa.alpha, wa.half_width_m, wa.mass_kg, wa.chi)
    for w in (wb, wc, wd):
        if (w.alpha, w.half_width_m, w.mass_kg, w.chi) != base:
            raise ValueError("all four corners must share one well geometry")
    if pa.context.temperature_k != pb.context.temperature_k:
        raise ValueError("corners A and B must share the hot bath")
    if pc.context.temperature_k != pd.context.temperature_k:
        raise ValueError("corners C and D must share the cold bath")


def heats(pa, pb, pc, pd):
    """Per-leg heats assembled from the four corner partition results.

    Uses the cancelled forms described in the module docstring; the
    shared excess energies make the four heats telescope exactly against
    the work in the closed-cycle sum.
    """
    _check_corners(pa, pb, pc, pd)
    ua = excess_energy(pa)
    ub = excess_energy(pb)
    uc = excess_energy(pc)
    ud = excess_energy(pd)
    kth = constants.BOLTZMANN * pa.context.temperature_k
    ktc = constants.BOLTZMANN * pc.context.temperature_k
    q_ab = (ub - ua) + kth * (LN2 + (pb.log_s0 - pa.log_s0))
    q_bc = uc - ub
    q_cd = (ud - uc) + ktc * ((pd.log_s0 - pc.log_s0) - LN2)
    q_da = ua - ud
    return Heats(q_ab, q_bc, q_cd, q_da)


def work(pa, pb, pc, pd):
    """Net work output of the cycle, in joules, from the corner results."""
    _check_corners(pa, pb, pc, pd)
    th = pa.context.temperature_k
    tc = pc.context.temperature_k
    return constants.BOLTZMANN * (th - tc) * LN2 + constants.BOLTZMANN * (
        th * (pb.log_s0 - pa.log_s0) - tc * (pc.log_s0 - pd.log_s0)
    )


def efficiency(work_j, heat_in_j):
    """W / Q_in when the device runs as an engine, otherwise None.

    Engine operation requires positive net work and positive absorbed
    heat; outside that region the ratio has no efficiency meaning.
    """
    if work_j > 0.0 and heat_in_j > 0.0:
        return work_j / heat_in_j
    return None


def run_cycle(config):
    """Evaluate the full cycle for one configuration.

    Raises SeriesTruncationError if any corner's spectral sums cannot be
    certified, and FirstLawViolationError if the assembled heats fail the
    closed-cycle energy audit (a code defect, not a physical regime).
    """
    well_u = WellSpec(config.alpha, config.half_width_m, config.mass_kg, config.chi)
    well_d = well_u.with_divider()
    ctx_h = ThermalContext.from_temperature(config.t_hot_k)
    ctx_c = ThermalContext.from_temperature(config.t_cold_k)
    tol = config.tolerance
    cap = config.term_cap
    pa = log_partition(well_u, ctx_h, tol, cap)
    pb = log_partition(well_d, ctx_h, tol, cap)
    pc = log_partition(well_d, ctx_c, tol, cap)
    pd = log_partition(well_u, ctx_c, tol, cap)
    q = heats(pa, pb, pc, pd)
    w = work(pa, pb, pc, pd)
    residual = w - q.total_j
    bound = FIRST_LAW_REL * max(abs(w), constants.BOLTZMANN * config.t_hot_k)
    if not (abs(residual) <= bound):
        raise FirstLawViolationError(residual, bound)
    return CycleResult(
        config=config,
        q_ab_j=q.q_ab_j,
        q_bc_j=q.q_bc_j,
        q_cd_j=q.q_cd_j,
        q_da_j=q.q_da_j,
        work_j=w,
        efficiency=efficiency(w, q.absorbed_j),
        heat_in_j=q.absorbed_j,
        first_law_residual_j=residual,
        corners=(pa, pb, pc, pd),
    )
