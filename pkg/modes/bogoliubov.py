"""Bogoliubov coefficients of a mode obeying chi'' + (Omega^2 + Q) chi = 0.

The mode is written chi = (alpha e^{-i theta} + beta e^{+i theta}) / sqrt(2 Omega)
with theta' = Omega, which turns the second-order equation into the
first-order system

    alpha' = 1/2 (Omega'/Omega - i Q/Omega) beta e^{2 i theta} - i Q/(2 Omega) alpha
    beta'  = 1/2 (Omega'/Omega + i Q/Omega) alpha e^{-2 i theta} + i Q/(2 Omega) beta

The accumulated phase theta is integrated alongside alpha and beta.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from numkit import OdeProblem, fd_partial, integrate_ode
from sim_core import SingularSystem

logger = logging.getLogger(__name__)


@dataclass
class BogoliubovPair:
    alpha: complex = 1.0 + 0.0j
    beta: complex = 0.0j
    phase_integral: float = 0.0

    @property
    def wronskian(self) -> float:
        return abs(self.alpha) ** 2 - abs(self.beta) ** 2

    @property
    def particle_number(self) -> float:
        return abs(self.beta) ** 2


@dataclass
class LowFreqCoeffs:
    c1: complex
    c2: complex
    Omega0: float

    @property
    def normalization(self) -> float:
        """c1 conj(c2) + c2 conj(c1); 1/2 for a valid pair."""
        return (self.c1 * self.c2.conjugate() + self.c2 * self.c1.conjugate()).real


@dataclass
class ModeBackground:
    Omega: Callable[[float], float]
    Q: Callable[[float], float]
    eta0: float = 0.0
    Omega_prime: Optional[Callable[[float], float]] = None

    def omega_slope(self, eta: float) -> float:
        if self.Omega_prime is not None:
            return self.Omega_prime(eta)
        return fd_partial(lambda x: self.Omega(x[0]), [eta], 0)

    def reversed(self) -> "ModeBackground":
        """The time-mirrored profile eta -> -eta."""
        prime = None
        if self.Omega_prime is not None:
            prime = lambda eta: -self.Omega_prime(-eta)
        return ModeBackground(Omega=lambda eta: self.Omega(-eta), Q=lambda eta: self.Q(-eta),
                              eta0=-self.eta0, Omega_prime=prime)


@dataclass
class BogoliubovTrajectory:
    eta: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    phase: np.ndarray

    def wronskian(self) -> np.ndarray:
        return np.abs(self.alpha) ** 2 - np.abs(self.beta) ** 2

    def wronskian_drift(self) -> float:
        return float(np.max(np.abs(self.wronskian() - 1.0)))

    def particle_number(self) -> np.ndarray:
        return np.abs(self.beta) ** 2

    def pair(self, index: int = -1) -> BogoliubovPair:
        return BogoliubovPair(complex(self.alpha[index]), complex(self.beta[index]),
                              float(self.phase[index]))


def bogoliubov_rhs(background: ModeBackground):
    def rhs(eta, y):
        Omega = background.Omega(eta)
        if not Omega > 0:
            return np.full(5, math.nan)
        Q = background.Q(eta)
        slope = background.omega_slope(eta) / Omega
        alpha = complex(y[0], y[1])
        beta = complex(y[2], y[3])
        rotor = cmath.exp(2j * y[4])
        q = Q / Omega
        d_alpha = 0.5 * (slope - 1j * q) * beta * rotor - 0.5j * q * alpha
        d_beta = 0.5 * (slope + 1j * q) * alpha * rotor.conjugate() + 0.5j * q * beta
        return np.array([d_alpha.real, d_alpha.imag, d_beta.real, d_beta.imag, Omega])
    return rhs


def evolve_bogoliubov(background: ModeBackground, ic: BogoliubovPair, span: Tuple[float, float],
                      tol: float = 1e-10, dense_dt: float = 1e-2,
                      method: str = "DOP853") -> BogoliubovTrajectory:
    eta_start, eta_end = span
    if background.Omega(eta_start) <= 0:
        raise ValueError(f"Omega must be positive at eta={eta_start}")
    problem = OdeProblem(
        rhs=bogoliubov_rhs(background), t0=eta_start, t1=eta_end,
        y0=[ic.alpha.real, ic.alpha.imag, ic.beta.real, ic.beta.imag, ic.phase_integral],
    )
    result = integrate_ode(problem, tol=tol, dense_dt=dense_dt, method=method)
    y = result.y
    trajectory = BogoliubovTrajectory(eta=result.t, alpha=y[:, 0] + 1j * y[:, 1],
                                      beta=y[:, 2] + 1j * y[:, 3], phase=y[:, 4])
    logger.debug("Bogoliubov evolution over %s: |beta|^2=%.3e, drift=%.3e", span,
                 trajectory.particle_number()[-1], trajectory.wronskian_drift())
    return trajectory


def lowfreq_coeffs(Omega0: float, ic: Optional[BogoliubovPair] = None) -> LowFreqCoeffs:
    """c1, c2 matching the low-frequency solution to ``ic`` at eta0.

    At eta0 the solution reads alpha + beta = 2 c1 sqrt(Omega0) and
    alpha - beta = 2 c2 / sqrt(Omega0).
    """
    if not Omega0 > 0:
        raise SingularSystem(f"low-frequency coefficients need Omega0 > 0, got {Omega0}")
    ic = ic or BogoliubovPair()
    root = math.sqrt(Omega0)
    c1 = (ic.alpha + ic.beta) / (2.0 * root)
    c2 = (ic.alpha - ic.beta) * root / 2.0
    return LowFreqCoeffs(complex(c1), complex(c2), Omega0)


def lowfreq_alpha_beta(coeffs: LowFreqCoeffs, Omega: float, Q_int: float) -> BogoliubovPair:
    """Low-frequency (alpha, beta) with the oscillating phase set to zero."""
    if Omega <= 0:
        raise ValueError(f"Omega must be positive, got {Omega}")
    root = math.sqrt(Omega)
    alpha = coeffs.c1 * (root - 1j * Q_int / root) + coeffs.c2 / root
    beta = coeffs.c1 * (root + 1j * Q_int / root) - coeffs.c2 / root
    return BogoliubovPair(complex(alpha), complex(beta), 0.0)


def mode_quantity(pair, kind: str) -> float:
    """Named scalar of a BogoliubovPair or ModeTrajectory sample.

    ``kind`` is ``particle_number`` or ``wronskian``.
    """
    if kind == "wronskian":
        if isinstance(pair, BogoliubovPair):
            return pair.wronskian
        return float(2.0 * np.imag(pair.amplitude * np.conj(pair.derivative)))
    if kind == "particle_number":
        if not isinstance(pair, BogoliubovPair):
            raise TypeError("particle number is defined for Bogoliubov pairs")
        return pair.particle_number
    raise ValueError(f"unknown mode quantity {kind!r}")
