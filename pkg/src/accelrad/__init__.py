"""Photon emission rates from mechanically driven two-level atoms.

Closed-form first-order sideband rates for an atom shaken in free space,
next to a mirror, or inside a cavity, together with a brute-force
oscillatory-integral oracle that cross-validates every formula, special
functions (Bessel / Anger / rational-period integrals), figure-data sweeps
and a reproducible CLI.
"""

__version__ = "0.1.0"

from .errors import (ApproximationDomainError, ConfigError, ConvergenceError,
                     NoSidebandError, OffResonanceError, OracleMismatchError,
                     PhysicsDomainError)
from .specfun import (DEFAULT_BUDGET, AccuracyBudget, anger_j, bessel_j,
                      bessel_j_orders, rational_period_integral)
from .rates import (ABSORB_DEEXCITE, EMIT_EXCITE, PARALLEL, PERPENDICULAR,
                    RESONANCE_TOL, AtomParams, Cavity, FreeSpace,
                    GeneralPeriodicMotion, Mirror, RotationMotion, ShoMotion,
                    Sideband, allowed_sidebands, cavity_mode_frequency,
                    cavity_rate, dimensionless_amplitude, emission_frequency,
                    free_space_rate, mirror_rate, small_amplitude_rate)
from .oracle import (DEFAULT_CONFIG, OracleResult, QuadratureConfig,
                     equivalence_cases, equivalence_report,
                     general_trajectory_spectrum, one_period_amplitude,
                     selection_rule_report, verify_selection_rule)
from .sweep import (SweepGrid, SweepResult, fig2_surface, fig3_surface,
                    rate_surface, spectrum)

__all__ = [
    "__version__",
    # errors
    "ApproximationDomainError", "ConfigError", "ConvergenceError",
    "NoSidebandError", "OffResonanceError", "OracleMismatchError",
    "PhysicsDomainError",
    # special functions
    "AccuracyBudget", "DEFAULT_BUDGET", "anger_j", "bessel_j",
    "bessel_j_orders", "rational_period_integral",
    # domain model and rates
    "ABSORB_DEEXCITE", "EMIT_EXCITE", "PARALLEL", "PERPENDICULAR",
    "RESONANCE_TOL", "AtomParams", "Cavity", "FreeSpace",
    "GeneralPeriodicMotion", "Mirror", "RotationMotion", "ShoMotion",
    "Sideband", "allowed_sidebands", "cavity_mode_frequency", "cavity_rate",
    "dimensionless_amplitude", "emission_frequency", "free_space_rate",
    "mirror_rate", "small_amplitude_rate",
    # oracle
    "DEFAULT_CONFIG", "OracleResult", "QuadratureConfig",
    "equivalence_cases", "equivalence_report", "general_trajectory_spectrum",
    "one_period_amplitude", "selection_rule_report", "verify_selection_rule",
    # sweeps
    "SweepGrid", "SweepResult", "fig2_surface", "fig3_surface",
    "rate_surface", "spectrum",
]
