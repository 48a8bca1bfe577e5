"""1+1D ring: adiabatic modes, Casimir energy and backreacted collapse."""

from .adiabatic import (AdiabaticFrequency, RingKinematics, RingParams, adiabatic_frequency,
                        mode_frequency, omega_ddot, omega_ddot_fd, rho2_closed, rho2_integrand,
                        rho2_quadrature, sigma_term, wkb_frequency)
from .casimir import (casimir_density_closed, casimir_density_numeric, casimir_energy,
                      default_lambda_seq, field_energy)
from .dynamics import (CollapseComparison, compare_collapse, el_residual, energy_drift, ring_accel,
                       ring_energy, ring_lagrangian, simulate_ring, time_to_reach)

__all__ = [
    "AdiabaticFrequency", "CollapseComparison", "RingKinematics", "RingParams",
    "adiabatic_frequency", "casimir_density_closed", "casimir_density_numeric", "casimir_energy",
    "compare_collapse", "default_lambda_seq", "el_residual", "energy_drift", "field_energy", "mode_frequency",
    "omega_ddot", "omega_ddot_fd", "rho2_closed", "rho2_integrand", "rho2_quadrature",
    "ring_accel", "ring_energy", "ring_lagrangian", "sigma_term", "simulate_ring",
    "time_to_reach", "wkb_frequency",
]
