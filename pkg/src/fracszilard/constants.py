"""Physical constants (exact SI 2019 values where defined) and solver defaults.

All quantities are SI. The electron mass here is the rounded value used
throughout the validation suite rather than the CODATA best estimate; keeping
it as a module attribute lets callers substitute another mass without touching
the solvers.
"""

import math

PLANCK = 6.62607015e-34           # J s, exact by definition
HBAR = PLANCK / (2.0 * math.pi)   # J s
BOLTZMANN = 1.380649e-23          # J / K, exact by definition
SPEED_OF_LIGHT = 299792458.0      # m / s, exact by definition

ELECTRON_MASS = 9.11e-31          # kg

# Dimensionless scale factor in the fractional kinetic coefficient.
DEFAULT_CHI = 0.5

# Relative tail tolerance for the Boltzmann series and the hard cap on the
# number of terms summed before the solver gives up.
DEFAULT_TOLERANCE = 1e-14
DEFAULT_TERM_CAP = 10**7
