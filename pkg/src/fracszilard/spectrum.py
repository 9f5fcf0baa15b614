"""Energy levels of a single particle in a fractional infinite well.

The well has impermeable walls at -a and +a (total width 2a) and a
kinetic term with a tunable power alpha of the momentum magnitude,
0 < alpha <= 2.  The bound-state energies are

    E_n = D_alpha * (n * pi * hbar / (2 a))**alpha,        n = 1, 2, ...

with the kinetic coefficient D_alpha = chi * m * c**2 / (m * c)**alpha.
At alpha = 2 and chi = 1/2 this reduces to the ordinary quadratic well
spectrum hbar**2 k**2 / (2 m).

Inserting an impermeable wall at the centre splits the box into two
half-width wells.  The spectrum of each half is that of the full well
restricted to even n, so each divided level is E at 2n and carries a
2-fold degeneracy (one copy per side).  ``divided=True`` selects that
configuration; the doubling runs through the same code path as the
undivided spectrum so the two agree bit for bit where they overlap.
"""

import math
from dataclasses import dataclass, replace

from . import constants


def d_alpha(alpha, mass_kg=constants.ELECTRON_MASS, chi=constants.DEFAULT_CHI):
    """Kinetic coefficient D_alpha = chi * m * c**2 / (m * c)**alpha.

    Carries units J / (J s / m)**alpha so that E = D_alpha * k**alpha is
    an energy for a wavenumber-times-hbar argument k.
    """
    if not (0.0 < alpha <= 2.0):
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    if not (mass_kg > 0.0) or not math.isfinite(mass_kg):
        raise ValueError(f"mass_kg must be positive and finite, got {mass_kg}")
    if not (chi > 0.0) or not math.isfinite(chi):
        raise ValueError(f"chi must be positive and finite, got {chi}")
    c = constants.SPEED_OF_LIGHT
    return chi * mass_kg * c * c / (mass_kg * c) ** alpha


@dataclass(frozen=True)
class WellSpec:
    """Geometry and material parameters of one well configuration.

    Attributes
    ----------
    alpha : float
        Exponent of the kinetic term, in (0, 2].  alpha = 2 is the
        ordinary quadratic dispersion.
    half_width_m : float
        Half of the box width; the walls sit at +-half_width_m.
    mass_kg : float
        Particle mass.
    chi : float
        Dimensionless scale of the kinetic coefficient.
    divided : bool
        True once an impermeable wall at the centre splits the box into
        two half-width wells.  Levels are then doubled in index and carry
        degeneracy 2.
    """

    alpha: float
    half_width_m: float
    mass_kg: float = constants.ELECTRON_MASS
    chi: float = constants.DEFAULT_CHI
    divided: bool = False

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise ValueError(f"alpha must lie in (0, 2], got {self.alpha}")
        if not (self.half_width_m > 0.0) or not math.isfinite(self.half_width_m):
            raise ValueError(
                f"half_width_m must be positive and finite, got {self.half_width_m}"
            )
        if not (self.mass_kg > 0.0) or not math.isfinite(self.mass_kg):
            raise ValueError(f"mass_kg must be positive and finite, got {self.mass_kg}")
        if not (self.chi > 0.0) or not math.isfinite(self.chi):
            raise ValueError(f"chi must be positive and finite, got {self.chi}")

    @property
    def degeneracy(self):
        """Multiplicity of each level: 2 for a divided box, else 1."""
        return 2 if self.divided else 1

    def with_divider(self):
        """The same well with the central wall inserted."""
        return replace(self, divided=True)

    def without_divider(self):
        """The same well with the central wall removed."""
        return replace(self, divided=False)


@dataclass(frozen=True)
class EnergyLevel:
    """One bound level: quantum number, energy, and multiplicity."""

    n: int
    energy_j: float
    degeneracy: int


def energy_level(well, n):
    """Energy of level n (n >= 1) of the given well, in joules.

    For a divided well the effective index is 2n, evaluated through the
    identical expression used for the undivided spectrum, so
    energy_level(divided, n) == energy_level(undivided, 2n) exactly.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"quantum number n starts at 1, got {n}")
    n_eff = 2 * n if well.divided else n
    k = n_eff * math.pi * constants.HBAR / (2.0 * well.half_width_m)
    return d_alpha(well.alpha, well.mass_kg, well.chi) * k**well.alpha


def levels(well, n_max):
    """The first n_max levels of the well as EnergyLevel records."""
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    g = well.degeneracy
    return [EnergyLevel(n, energy_level(well, n), g) for n in range(1, n_max + 1)]


def reduced_gap(well, context):
    """Dimensionless ground-level exponent theta = beta * E_1 of the well.

    This is the natural convergence parameter of the Boltzmann series:
    theta >> 1 is the deep-quantum regime where a handful of levels
    carries the whole ensemble, theta << 1 the quasi-classical one.
    """
    return context.beta * energy_level(well, 1)
