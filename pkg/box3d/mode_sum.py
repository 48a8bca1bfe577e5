"""Truncated lattice mode sums and Bogoliubov mode banks for the box."""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from modes import BogoliubovPair, ModeBackground, evolve_bogoliubov
from sim_core import ModeState, SampledTrajectory, SimulationRecord

from .kinematics import BoxKinematics, BoxParams, KVector, omega_conformal, q_anisotropy

logger = logging.getLogger(__name__)


def k_lattice(n_max: int, l: float) -> List[KVector]:
    """All k = 2 pi n / l with |n_i| <= n_max, excluding the null vector."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    span = range(-n_max, n_max + 1)
    return [KVector.from_indices(n, l) for n in itertools.product(span, span, span) if any(n)]


def static_vacuum_modes(n_max: int, l: float, a: float = 1.0, m_field: float = 0.0) -> List[ModeState]:
    """chi = 1/sqrt(2 Omega), chi' = -i Omega chi for every lattice vector."""
    states = []
    for k in k_lattice(n_max, l):
        Omega, _ = omega_conformal(k, a, m_field)
        chi = 1.0 / math.sqrt(2.0 * Omega)
        states.append(ModeState(k=(k.kx, k.ky, k.kz), amplitude=complex(chi),
                                derivative=complex(-1j * Omega * chi)))
    return states


def t00_mode_sum(modes: Iterable[ModeState], kin: BoxKinematics, l: float,
                 m_field: float = 0.0) -> float:
    """(1/2l^3) a^(-4/3) sum_k [|chi'|^2 + (Omega^2 - Q)|chi|^2] over the given modes."""
    Q = q_anisotropy(kin)
    total = 0.0
    for mode in modes:
        Omega, _ = omega_conformal(KVector(*mode.k), kin.a, m_field)
        total += abs(mode.derivative) ** 2 + (Omega * Omega - Q) * abs(mode.amplitude) ** 2
    return total * kin.a ** (-4.0 / 3.0) / (2.0 * l ** 3)


@dataclass
class ModeBankResult:
    k_vectors: List[KVector]
    particle_numbers: np.ndarray
    wronskian_drifts: np.ndarray
    eta_span: Tuple[float, float]

    @property
    def worst_wronskian_drift(self) -> float:
        return float(np.max(self.wronskian_drifts)) if self.wronskian_drifts.size else 0.0

    def summary(self) -> Dict[str, float]:
        return {"modes": len(self.k_vectors),
                "worst_wronskian_drift": self.worst_wronskian_drift,
                "max_particle_number": float(np.max(self.particle_numbers, initial=0.0))}


def _box_background(k: KVector, trajectory: SampledTrajectory, t_of_eta, m_field: float) -> ModeBackground:
    def Omega(eta):
        a = trajectory.a(float(t_of_eta(eta)))
        return omega_conformal(k, a, m_field)[0]

    def Omega_prime(eta):
        t = float(t_of_eta(eta))
        a, a_dot = trajectory.a(t), trajectory.a_dot(t)
        w = math.sqrt(k.kx ** 2 / a ** 2 + k.k_yz ** 2 + m_field ** 2)
        dw_dt = -k.kx ** 2 * a_dot / (a ** 3 * w)
        dOmega_dt = a ** (-2.0 / 3.0) * a_dot * w / 3.0 + a ** (1.0 / 3.0) * dw_dt
        return dOmega_dt * a ** (1.0 / 3.0)

    def Q(eta):
        t = float(t_of_eta(eta))
        return q_anisotropy(BoxKinematics(trajectory.a(t), trajectory.a_dot(t)))

    return ModeBackground(Omega=Omega, Q=Q, eta0=0.0, Omega_prime=Omega_prime)


def mode_bank(record: SimulationRecord, params: BoxParams, k_vectors: Sequence[KVector],
              tol: float = 1e-10, dense_dt: float = 1e-2) -> ModeBankResult:
    """Evolve vacuum Bogoliubov pairs for each k along a simulated box trajectory."""
    if "eta" not in record.aux:
        raise ValueError("record carries no conformal time series")
    trajectory = SampledTrajectory.from_record(record, params.l)
    eta = record.aux["eta"]
    t_of_eta = PchipInterpolator(eta, record.t)
    span = (float(eta[0]), float(eta[-1]))

    numbers, drifts = [], []
    for k in k_vectors:
        background = _box_background(k, trajectory, t_of_eta, params.m_field)
        evolution = evolve_bogoliubov(background, BogoliubovPair(), span, tol=tol, dense_dt=dense_dt)
        numbers.append(evolution.particle_number()[-1])
        drifts.append(evolution.wronskian_drift())
    result = ModeBankResult(list(k_vectors), np.array(numbers), np.array(drifts), span)
    logger.info("Mode bank of %d modes: worst Wronskian drift %.3e",
                len(result.k_vectors), result.worst_wronskian_drift)
    return result
