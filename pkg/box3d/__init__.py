"""3+1D mirror box: conformal kinematics, creation energy and mirror dynamics."""

from .creation import (PEE_TAYLOR_HALFWIDTH, CreationEnergyModel, classify_discrepancy,
                       creation_integrand, matter_density, pee, pee_prime, rho_creation,
                       rho_creation_closed, rho_creation_quadrature, rho_creation_reconciled)
from .dynamics import (EnergyPartials, box_accel, box_partials, creation_energy,
                       creation_partials, effective_mass, el_acceleration, fd_energy_partials,
                       lagrangian_accel, lenz_property, matter_energy_bound, matter_energy_direct,
                       simulate_box)
from .kinematics import (BoxKinematics, BoxParams, CreationForm, KVector, PartialsMode,
                         TimeConvention, conformal_time_map, cosmic_frequency, in_region,
                         omega_conformal, q_anisotropy)
from .mode_sum import ModeBankResult, k_lattice, mode_bank, static_vacuum_modes, t00_mode_sum

__all__ = [
    "PEE_TAYLOR_HALFWIDTH", "BoxKinematics", "BoxParams", "CreationEnergyModel", "CreationForm",
    "EnergyPartials", "KVector", "ModeBankResult", "PartialsMode", "TimeConvention", "box_accel",
    "box_partials", "classify_discrepancy", "conformal_time_map", "cosmic_frequency",
    "creation_energy", "creation_integrand", "creation_partials", "effective_mass",
    "el_acceleration", "fd_energy_partials", "in_region", "k_lattice", "lagrangian_accel",
    "lenz_property", "matter_density", "matter_energy_bound", "matter_energy_direct", "mode_bank",
    "omega_conformal", "pee", "pee_prime", "q_anisotropy", "rho_creation", "rho_creation_closed",
    "rho_creation_quadrature", "rho_creation_reconciled", "simulate_box", "static_vacuum_modes",
    "t00_mode_sum",
]
