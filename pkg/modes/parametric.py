"""Single-mode parametric oscillator on the ring and its WKB approximation.

Modes are normalized so that f * conj(f_dot) - conj(f) * f_dot = i, which for
a static frequency w gives f = exp(-i w t) / sqrt(2 w).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from numkit import OdeProblem, QuadSpec, fd_partial, integrate_ode, quad_adaptive
from ring1d import RingKinematics, adiabatic_frequency, mode_frequency
from sim_core import ModeState, ScaleTrajectory

logger = logging.getLogger(__name__)

DEFAULT_NONADIABATIC_THRESHOLD = 1.0


@dataclass
class ModeTrajectory:
    k: float
    t: np.ndarray
    f: np.ndarray
    f_dot: np.ndarray

    def wronskian(self) -> np.ndarray:
        """2 Im(f conj(f_dot)), identically 1 for a normalized mode."""
        return 2.0 * np.imag(self.f * np.conj(self.f_dot))

    def wronskian_drift(self) -> float:
        return float(np.max(np.abs(self.wronskian() - 1.0)))

    def state(self, index: int = -1) -> ModeState:
        return ModeState(k=(self.k,), amplitude=complex(self.f[index]),
                         derivative=complex(self.f_dot[index]))


def squared_frequency(k: float, trajectory: ScaleTrajectory, t: float, m: float) -> float:
    """w_k^2 = omega_k^2 + sigma, the frequency of the rescaled mode equation."""
    freq = adiabatic_frequency(k, RingKinematics.at(trajectory, t), m)
    return freq.omega ** 2 + freq.sigma


def wkb_frequency_at(k: float, trajectory: ScaleTrajectory, t: float, m: float) -> float:
    return adiabatic_frequency(k, RingKinematics.at(trajectory, t), m).W2


def adiabatic_initial_data(k: float, trajectory: ScaleTrajectory, t: float,
                           m: float) -> Tuple[complex, complex]:
    """(f, f_dot) of the second-order adiabatic vacuum at time t."""
    W = wkb_frequency_at(k, trajectory, t, m)
    if W <= 0:
        raise ValueError(f"WKB frequency not positive at t={t}: {W}")
    W_dot = fd_partial(lambda x: wkb_frequency_at(k, trajectory, x[0], m), [t], 0)
    f = 1.0 / math.sqrt(2.0 * W)
    f_dot = (-1j * W - W_dot / (2.0 * W)) * f
    return complex(f), complex(f_dot)


def evolve_mode_exact(k: float, trajectory: ScaleTrajectory, m: float, span: Tuple[float, float],
                      tol: float = 1e-10, dense_dt: float = 1e-2,
                      initial: Optional[Tuple[complex, complex]] = None,
                      method: str = "DOP853") -> ModeTrajectory:
    """Integrate f'' + w_k(t)^2 f = 0 over ``span``.

    Without explicit ``initial`` data the mode starts in the adiabatic
    vacuum at span[0].
    """
    t_start, t_end = span
    f0, f_dot0 = initial if initial is not None else adiabatic_initial_data(k, trajectory, t_start, m)

    def rhs(t, y):
        w2 = squared_frequency(k, trajectory, t, m)
        return np.array([y[2], y[3], -w2 * y[0], -w2 * y[1]])

    problem = OdeProblem(rhs=rhs, t0=t_start, t1=t_end,
                         y0=[f0.real, f0.imag, f_dot0.real, f_dot0.imag])
    result = integrate_ode(problem, tol=tol, dense_dt=dense_dt, method=method)
    y = result.y
    modes = ModeTrajectory(k=k, t=result.t, f=y[:, 0] + 1j * y[:, 1], f_dot=y[:, 2] + 1j * y[:, 3])
    logger.debug("Mode k=%s evolved over %s, Wronskian drift %.3e", k, span, modes.wronskian_drift())
    return modes


def wkb_phase(k: float, trajectory: ScaleTrajectory, m: float, t_start: float, t: float,
              rel_tol: float = 1e-11) -> float:
    spec = QuadSpec(lambda s: wkb_frequency_at(k, trajectory, s, m), t_start, t,
                    rel_tol=rel_tol, abs_tol=1e-13)
    return quad_adaptive(spec)


def wkb_mode_solution(k: float, trajectory: ScaleTrajectory, m: float, t: float,
                      t_start: float) -> complex:
    """(2W)^(-1/2) exp(-i int_{t_start}^t W dt')"""
    W = wkb_frequency_at(k, trajectory, t, m)
    phase = wkb_phase(k, trajectory, m, t_start, t)
    return complex(np.exp(-1j * phase) / math.sqrt(2.0 * W))


def adiabaticity(k: float, trajectory: ScaleTrajectory, t: float, m: float) -> float:
    """omega_dot / omega^2 for a ring mode in cosmic time."""
    freq = mode_frequency(k, RingKinematics.at(trajectory, t), m)
    return freq.omega_dot / freq.omega ** 2


def adiabaticity_conformal(Omega: Callable[[float], float], eta: float,
                           Omega_prime: Optional[Callable[[float], float]] = None) -> float:
    """Omega'/Omega^2 in conformal time."""
    value = Omega(eta)
    if value <= 0:
        raise ValueError(f"frequency must be positive, got {value}")
    if Omega_prime is not None:
        slope = Omega_prime(eta)
    else:
        slope = fd_partial(lambda x: Omega(x[0]), [eta], 0)
    return slope / value ** 2


def is_nonadiabatic(parameter: float, threshold: float = DEFAULT_NONADIABATIC_THRESHOLD) -> bool:
    return abs(parameter) > threshold
