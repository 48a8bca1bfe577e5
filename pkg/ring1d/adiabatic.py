"""Adiabatic mode frequencies and the second-order energy density on the ring.

Units are hbar = c = 1. A ring of coordinate circumference ``l`` has physical
circumference L = a*l; a mode of wave number k oscillates at
omega_k = sqrt(k^2/a^2 + m^2).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from numkit import QuadSpec, fd_partial, quad_adaptive
from sim_core import ScaleTrajectory, ZeroFrequency

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RingParams:
    M: float = 1.0
    l: float = 1.0
    m_field: float = 0.0

    def __post_init__(self):
        if self.M <= 0:
            raise ValueError(f"mirror mass M must be positive, got {self.M}")
        if self.l <= 0:
            raise ValueError(f"circumference l must be positive, got {self.l}")
        if self.m_field < 0:
            raise ValueError(f"field mass must be non-negative, got {self.m_field}")

    @property
    def critical_length(self) -> float:
        """L* = 1/(12 pi M), where the backreacted effective mass vanishes."""
        return 1.0 / (12.0 * math.pi * self.M)


@dataclass(frozen=True)
class RingKinematics:
    a: float
    a_dot: float = 0.0
    a_ddot: float = 0.0

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"scale factor must be positive, got {self.a}")

    @classmethod
    def from_length(cls, L: float, L_dot: float, L_ddot: float, l: float) -> "RingKinematics":
        return cls(L / l, L_dot / l, L_ddot / l)

    @classmethod
    def at(cls, trajectory: ScaleTrajectory, t: float) -> "RingKinematics":
        a, a_dot, a_ddot = trajectory.kinematics(t)
        return cls(float(a), float(a_dot), float(a_ddot))

    def length(self, l: float) -> float:
        return self.a * l


@dataclass
class AdiabaticFrequency:
    k: float
    omega: float
    omega_dot: float
    sigma: Optional[float] = None
    W2: Optional[float] = None

    def slowness(self, timescale: float) -> float:
        """epsilon = 1/(omega*T) for an externally supplied timescale T."""
        return 1.0 / (self.omega * timescale)


def mode_frequency(k: float, kin: RingKinematics, m: float) -> AdiabaticFrequency:
    if k == 0 and m == 0:
        raise ZeroFrequency("k = 0 mode of a massless field has no frequency")
    a = kin.a
    omega = math.sqrt(k * k / (a * a) + m * m)
    omega_dot = -(k * k * kin.a_dot) / (a ** 3 * omega)
    return AdiabaticFrequency(k=k, omega=omega, omega_dot=omega_dot)


def omega_ddot(k: float, kin: RingKinematics, m: float) -> float:
    """Second time derivative of omega_k from (a, a_dot, a_ddot)."""
    freq = mode_frequency(k, kin, m)
    a, a_dot, w, w_dot = kin.a, kin.a_dot, freq.omega, freq.omega_dot
    return -k * k * (kin.a_ddot / (a ** 3 * w)
                     - 3.0 * a_dot * a_dot / (a ** 4 * w)
                     - a_dot * w_dot / (a ** 3 * w * w))


def omega_ddot_fd(k: float, trajectory: ScaleTrajectory, t: float, m: float,
                  step: Optional[float] = None) -> float:
    """Finite-difference cross-check of omega_ddot along a trajectory."""
    def omega_dot_at(x):
        return mode_frequency(k, RingKinematics.at(trajectory, x[0]), m).omega_dot
    return fd_partial(omega_dot_at, [t], 0, order=1, step=step)


def sigma_term(kin: RingKinematics) -> float:
    a = kin.a
    return -0.5 * (kin.a_ddot / a - kin.a_dot ** 2 / (2.0 * a * a))


def wkb_frequency(k: float, kin: RingKinematics, m: float,
                  omega_ddot_value: Optional[float] = None) -> float:
    """Second-order adiabatic frequency W_k.

    ``omega_ddot_value`` overrides the analytic second derivative (used to
    feed a finite-difference estimate through the same formula).
    """
    freq = mode_frequency(k, kin, m)
    w, w_dot = freq.omega, freq.omega_dot
    w_ddot = omega_ddot(k, kin, m) if omega_ddot_value is None else omega_ddot_value
    sigma = sigma_term(kin)
    return w - (w_ddot / w - 1.5 * w_dot * w_dot / (w * w) - 2.0 * sigma) / (4.0 * w)


def adiabatic_frequency(k: float, kin: RingKinematics, m: float) -> AdiabaticFrequency:
    """mode_frequency with the sigma and W2 fields filled in."""
    freq = mode_frequency(k, kin, m)
    freq.sigma = sigma_term(kin)
    freq.W2 = wkb_frequency(k, kin, m)
    return freq


def rho2_integrand(k: float, kin: RingKinematics, m: float) -> float:
    """Second adiabatic order energy density per unit k.

    Written as the perfect square
    (1/(8 pi a omega)) * (a_dot/(2a) + omega_dot/(2 omega))^2,
    which avoids the cancellation between its three expanded terms.
    """
    freq = mode_frequency(k, kin, m)
    bracket = kin.a_dot / (2.0 * kin.a) + freq.omega_dot / (2.0 * freq.omega)
    return bracket * bracket / (8.0 * math.pi * kin.a * freq.omega)


def rho2_quadrature(kin: RingKinematics, m: float, rel_tol: float = 1e-9,
                    abs_tol: float = 1e-13) -> float:
    """Full-line integral of rho2_integrand over k (needs m > 0)."""
    if m <= 0:
        raise ValueError("rho2_quadrature needs a positive field mass; the massless integrand vanishes")
    if kin.a_dot == 0:
        return 0.0
    spec = QuadSpec(lambda k: rho2_integrand(k, kin, m), -math.inf, math.inf,
                    abs_tol=abs_tol, rel_tol=rel_tol, scale=kin.a * m)
    value = quad_adaptive(spec)
    logger.debug("rho2 quadrature a=%s a_dot=%s m=%s -> %s", kin.a, kin.a_dot, m, value)
    return value


def rho2_closed(kin: RingKinematics) -> float:
    return (kin.a_dot / kin.a) ** 2 / (24.0 * math.pi)
