"""Stirling-cycle thermodynamics of one particle in a fractional infinite well.

The package evaluates the bound-state spectrum of an infinite well whose
kinetic term carries a tunable momentum power alpha in (0, 2], the
canonical partition function and internal energy in log space with
certified series truncation, and the heats, work and efficiency of a
four-stroke cycle that inserts and removes a central wall between two
heat baths.  A sweep driver maps work and efficiency over (alpha, box
size) grids to CSV.

Numerical kernels run compiled with numba by default, with a plain numpy
fallback selected by the FRACSZILARD_BACKEND environment variable.
"""

from .constants import (
    BOLTZMANN,
    DEFAULT_CHI,
    DEFAULT_TERM_CAP,
    DEFAULT_TOLERANCE,
    ELECTRON_MASS,
    HBAR,
    PLANCK,
    SPEED_OF_LIGHT,
)
from .cycle import (
    FIRST_LAW_REL,
    CycleConfig,
    CycleResult,
    FirstLawViolationError,
    Heats,
    efficiency,
    heats,
    run_cycle,
    work,
)
from .kernels import active_backend, log_upper_gamma, series_sums
from .spectrum import EnergyLevel, WellSpec, d_alpha, energy_level, levels, reduced_gap
from .sweep import (
    ConfigError,
    SweepConfig,
    SweepRecord,
    default_config,
    parse_config,
    read_csv,
    run_sweep,
    write_csv,
)
from .thermo import (
    LogPartitionResult,
    SeriesTruncationError,
    ThermalContext,
    excess_energy,
    helmholtz_free_energy,
    integral_tail_bound,
    internal_energy,
    log_partition,
)

__version__ = "0.1.0"

__all__ = [
    "BOLTZMANN",
    "DEFAULT_CHI",
    "DEFAULT_TERM_CAP",
    "DEFAULT_TOLERANCE",
    "ELECTRON_MASS",
    "HBAR",
    "PLANCK",
    "SPEED_OF_LIGHT",
    "FIRST_LAW_REL",
    "CycleConfig",
    "CycleResult",
    "FirstLawViolationError",
    "Heats",
    "efficiency",
    "heats",
    "run_cycle",
    "work",
    "active_backend",
    "log_upper_gamma",
    "series_sums",
    "EnergyLevel",
    "WellSpec",
    "d_alpha",
    "energy_level",
    "levels",
    "reduced_gap",
    "ConfigError",
    "SweepConfig",
    "SweepRecord",
    "default_config",
    "parse_config",
    "read_csv",
    "run_sweep",
    "write_csv",
    "LogPartitionResult",
    "SeriesTruncationError",
    "ThermalContext",
    "excess_energy",
    "helmholtz_free_energy",
    "integral_tail_bound",
    "internal_energy",
    "log_partition",
    "__version__",
]
