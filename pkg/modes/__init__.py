"""Mode dynamics: exact parametric evolution, WKB modes, Bogoliubov coefficients."""

from .bogoliubov import (BogoliubovPair, BogoliubovTrajectory, LowFreqCoeffs, ModeBackground,
                         bogoliubov_rhs, evolve_bogoliubov, lowfreq_alpha_beta, lowfreq_coeffs,
                         mode_quantity)
from .parametric import (DEFAULT_NONADIABATIC_THRESHOLD, ModeTrajectory, adiabatic_initial_data,
                         adiabaticity, adiabaticity_conformal, evolve_mode_exact, is_nonadiabatic,
                         squared_frequency, wkb_frequency_at, wkb_mode_solution, wkb_phase)

__all__ = [
    "BogoliubovPair", "BogoliubovTrajectory", "DEFAULT_NONADIABATIC_THRESHOLD", "LowFreqCoeffs",
    "ModeBackground", "ModeTrajectory", "adiabatic_initial_data", "adiabaticity",
    "adiabaticity_conformal", "bogoliubov_rhs", "evolve_bogoliubov", "evolve_mode_exact",
    "is_nonadiabatic", "lowfreq_alpha_beta", "lowfreq_coeffs", "mode_quantity",
    "squared_frequency", "wkb_frequency_at", "wkb_mode_solution", "wkb_phase",
]
