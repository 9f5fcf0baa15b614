"""Canonical-ensemble quantities of one particle in a fractional well.

Everything is evaluated in log space through the shifted spectral sums

    S0 = sum_{n>=1} exp(-theta * (n**alpha - 1))
    S1 = sum_{n>=1} (n**alpha - 1) * exp(-theta * (n**alpha - 1))

with theta = beta * E_1 the ground-level exponent, so that

    ln Z = -theta + ln g + ln S0          (g = level degeneracy)
    U    = -d ln Z / d beta = E_1 * (1 + S1 / S0)
    F    = -ln Z / beta.

The shift keeps ln Z finite for theta up to ~1e8, far past where Z itself
underflows.  Truncation of the sums is certified by integral tail bounds;
a sum that cannot be certified within the term cap raises
SeriesTruncationError carrying the partial result, so callers can either
propagate the failure or report it per point.
"""

import math
from dataclasses import dataclass

from . import constants, kernels
from .spectrum import energy_level, reduced_gap

LN2 = math.log(2.0)


@dataclass(frozen=True)
class ThermalContext:
    """A heat bath, held as its temperature in kelvin."""

    temperature_k: float

    def __post_init__(self):
        if not (self.temperature_k > 0.0) or not math.isfinite(self.temperature_k):
            raise ValueError(
                f"temperature_k must be positive and finite, got {self.temperature_k}"
            )

    @property
    def beta(self):
        """Inverse thermal energy 1 / (k_B T), in 1/J."""
        return 1.0 / (constants.BOLTZMANN * self.temperature_k)

    @classmethod
    def from_temperature(cls, temperature_k):
        return cls(float(temperature_k))

    @classmethod
    def from_beta(cls, beta):
        """Context at inverse thermal energy beta (1/J).

        The bath is stored as a temperature, so the beta property of the
        result reproduces the argument only to rounding (two float
        divisions); thermodynamic derivatives taken at the 1e-6 relative
        scale are unaffected.
        """
        if not (beta > 0.0) or not math.isfinite(beta):
            raise ValueError(f"beta must be positive and finite, got {beta}")
        return cls(1.0 / (constants.BOLTZMANN * beta))


class SeriesTruncationError(RuntimeError):
    """The spectral sums hit the term cap before the tail was certified.

    Carries the partial sums and the best certified relative tail bound
    (inf when none could be established), so the failure is inspectable.
    """

    def __init__(self, theta, alpha, s0, s1, n_terms, tail_rel, tol):
        self.theta = theta
        self.alpha = alpha
        self.s0 = s0
        self.s1 = s1
        self.n_terms = n_terms
        self.tail_rel = tail_rel
        self.tol = tol
        super().__init__(
            f"spectral sums not certified to tol={tol:g} within {n_terms} terms "
            f"(theta={theta:.6g}, alpha={alpha:g}, best tail_rel={tail_rel:.3g})"
        )


@dataclass(frozen=True)
class LogPartitionResult:
    """Log partition function of one well at one temperature.

    Attributes
    ----------
    well : WellSpec
        The evaluated configuration.
    context : ThermalContext
        The bath.
    theta : float
        Ground-level exponent beta * E_1 (divided wells include the
        index doubling in E_1).
    s0, s1 : float
        The shifted spectral sums.
    log_s0 : float
        ln S0, kept explicitly because the cycle algebra consumes it.
    log_z : float
        ln Z = -theta + ln(degeneracy) + ln S0.
    n_terms : int
        Terms summed before the tail was certified.
    tail_rel : float
        Certified relative bound on either discarded tail.
    """

    well: object
    context: ThermalContext
    theta: float
    s0: float
    s1: float
    log_s0: float
    log_z: float
    n_terms: int
    tail_rel: float


def log_partition(
    well,
    context,
    tol=constants.DEFAULT_TOLERANCE,
    term_cap=constants.DEFAULT_TERM_CAP,
):
    """ln Z of the well in the bath, with certified series truncation.

    Raises SeriesTruncationError if the tail cannot be certified below
    tol * S0 within term_cap terms.
    """
    theta = reduced_gap(well, context)
    s0, s1, n_terms, tail_rel, ok = kernels.series_sums(theta, well.alpha, tol, term_cap)
    if not ok:
        raise SeriesTruncationError(theta, well.alpha, s0, s1, n_terms, tail_rel, tol)
    log_s0 = math.log(s0)
    log_g = LN2 if well.divided else 0.0
    return LogPartitionResult(
        well=well,
        context=context,
        theta=theta,
        s0=s0,
        s1=s1,
        log_s0=log_s0,
        log_z=-theta + log_g + log_s0,
        n_terms=n_terms,
        tail_rel=tail_rel,
    )


def internal_energy(partition):
    """Mean energy U = E_1 * (1 + S1 / S0) of the evaluated well, in J.

    Equal to -d ln Z / d beta; degeneracy drops out of the ratio.
    """
    e1 = energy_level(partition.well, 1)
    return e1 * (1.0 + partition.s1 / partition.s0)


def excess_energy(partition):
    """Mean energy above the ground level, U - E_1 = E_1 * S1 / S0, in J.

    The cycle algebra is assembled from this quantity instead of U so
    that ground-level contributions cancel analytically rather than
    numerically.
    """
    e1 = energy_level(partition.well, 1)
    return e1 * (partition.s1 / partition.s0)


def helmholtz_free_energy(partition):
    """Free energy F = -ln Z / beta, in J."""
    return -partition.log_z / partition.context.beta


def integral_tail_bound(theta, alpha, n_terms):
    """Log-space upper bounds on the discarded tails of S0 and S1.

    Returns (log_s0_tail, log_s1_tail); see kernels.log_tail_bounds for
    the validity condition on the S1 component.
    """
    return kernels.log_tail_bounds(theta, alpha, n_terms)
