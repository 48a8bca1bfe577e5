"""Conformal variables of the mirror box.

The box has transverse coordinate side ``l`` and one moving face at
L = a*l. With chi = a^(1/3) phi and d(eta) = a^(-1/3) dt each mode obeys
chi'' + (Omega^2 + Q) chi = 0, primes denoting d/d(eta).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from numkit import QuadSpec, quad_adaptive
from sim_core import ScaleTrajectory, ZeroFrequency

logger = logging.getLogger(__name__)


class TimeConvention(Enum):
    COSMIC = "cosmic"
    CONFORMAL = "conformal"


class CreationForm(Enum):
    CLOSED = "closed"
    RECONCILED = "reconciled"


class PartialsMode(Enum):
    FD = "fd"
    ANALYTIC = "analytic"


@dataclass(frozen=True)
class BoxParams:
    l: float = 50.0
    m_mirror: float = 10.0
    t0: float = 1.0
    a0: float = 1.0
    m_field: float = 0.0
    time_convention: TimeConvention = TimeConvention.COSMIC
    creation_form: CreationForm = CreationForm.CLOSED
    partials: PartialsMode = PartialsMode.FD

    def __post_init__(self):
        if self.l <= 0:
            raise ValueError(f"l must be positive, got {self.l}")
        if self.m_mirror <= 0:
            raise ValueError(f"mirror mass must be positive, got {self.m_mirror}")
        if self.t0 <= 0:
            raise ValueError(f"t0 must be positive, got {self.t0}")
        if self.a0 != 1.0:
            raise ValueError("the box starts from a(t0) = 1")
        if self.m_field < 0:
            raise ValueError(f"field mass must be non-negative, got {self.m_field}")

    @property
    def L0(self) -> float:
        return self.a0 * self.l


@dataclass(frozen=True)
class BoxKinematics:
    """Scale factor and its cosmic-time rate; a' and Q are derived."""
    a: float
    a_dot: float = 0.0

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"scale factor must be positive, got {self.a}")

    @classmethod
    def from_conformal(cls, a: float, a_prime: float) -> "BoxKinematics":
        return cls(a, a_prime * a ** (-1.0 / 3.0))

    @classmethod
    def from_length(cls, L: float, L_dot: float, l: float) -> "BoxKinematics":
        return cls(L / l, L_dot / l)

    @property
    def a_prime(self) -> float:
        return self.a ** (1.0 / 3.0) * self.a_dot

    @property
    def Q(self) -> float:
        return q_anisotropy(self)

    def length(self, l: float) -> Tuple[float, float]:
        return self.a * l, self.a_dot * l


@dataclass(frozen=True)
class KVector:
    kx: float
    ky: float = 0.0
    kz: float = 0.0

    @classmethod
    def from_indices(cls, n: Sequence[int], l: float) -> "KVector":
        step = 2.0 * math.pi / l
        return cls(step * n[0], step * n[1], step * n[2])

    @property
    def k_yz(self) -> float:
        return math.hypot(self.ky, self.kz)

    @property
    def norm(self) -> float:
        return math.sqrt(self.kx ** 2 + self.ky ** 2 + self.kz ** 2)


def q_anisotropy(kin: BoxKinematics) -> float:
    return (kin.a_prime / kin.a) ** 2 / 9.0


def omega_conformal(k: KVector, a: float, m_field: float = 0.0) -> Tuple[float, float]:
    """(Omega, Omega0): the conformal frequency at a and at a = 1."""
    if a <= 0:
        raise ValueError(f"scale factor must be positive, got {a}")
    transverse = k.k_yz ** 2 + m_field ** 2
    if k.kx == 0 and transverse == 0:
        raise ZeroFrequency("null mode of a massless field")
    Omega = a ** (1.0 / 3.0) * math.sqrt(k.kx ** 2 / a ** 2 + transverse)
    Omega0 = math.sqrt(k.kx ** 2 + transverse)
    return Omega, Omega0


def cosmic_frequency(k: KVector, a: float, m_field: float = 0.0) -> float:
    """omega_k = Omega / a^(1/3), the frequency in cosmic time."""
    return math.sqrt(k.kx ** 2 / a ** 2 + k.k_yz ** 2 + m_field ** 2)


def in_region(k: KVector, a: float, t: float) -> bool:
    """Membership in the nonadiabatic ellipsoid k_yz^2 + (k_x/a)^2 <= 1/t^2."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    return k.k_yz ** 2 + (k.kx / a) ** 2 <= 1.0 / (t * t)


def conformal_time_map(trajectory: ScaleTrajectory, t0: float, times: Sequence[float],
                       rel_tol: float = 1e-11) -> np.ndarray:
    """eta(t) = int_{t0}^{t} a^(-1/3) ds at each of ``times`` (ascending)."""
    times = np.asarray(times, dtype=float)
    if times.size and np.any(np.diff(times) < 0):
        raise ValueError("times must be ascending")
    eta = np.empty_like(times)
    previous_t, previous_eta = t0, 0.0
    for i, t in enumerate(times):
        segment = QuadSpec(lambda s: trajectory.a(s) ** (-1.0 / 3.0), previous_t, t,
                           rel_tol=rel_tol, abs_tol=1e-14)
        previous_eta += quad_adaptive(segment)
        previous_t = t
        eta[i] = previous_eta
    return eta
