"""Scale-factor histories a(t) with their first two time derivatives."""

import logging
from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from numkit import QuadSpec, quad_adaptive

from .state_types import SimulationRecord


class ScaleTrajectory(ABC):
    """A prescribed or reconstructed scale factor a(t) > 0."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    @abstractmethod
    def a(self, t: float) -> float:
        pass

    @abstractmethod
    def a_dot(self, t: float) -> float:
        pass

    @abstractmethod
    def a_ddot(self, t: float) -> float:
        pass

    def kinematics(self, t: float) -> Tuple[float, float, float]:
        return self.a(t), self.a_dot(t), self.a_ddot(t)

    def conformal_time(self, t: float, t0: float, rel_tol: float = 1e-11,
                       abs_tol: float = 1e-13) -> float:
        """eta(t) = int_{t0}^{t} a(s)^(-1/3) ds."""
        if t == t0:
            return 0.0
        spec = QuadSpec(lambda s: self.a(s) ** (-1.0 / 3.0), t0, t,
                        abs_tol=abs_tol, rel_tol=rel_tol)
        return quad_adaptive(spec)


class StaticTrajectory(ScaleTrajectory):
    def __init__(self, value: float = 1.0):
        super().__init__()
        if value <= 0:
            raise ValueError(f"scale factor must be positive, got {value}")
        self.value = value

    def a(self, t):
        return self.value

    def a_dot(self, t):
        return 0.0

    def a_ddot(self, t):
        return 0.0


class TanhRampTrajectory(ScaleTrajectory):
    """a(t) = 1 + delta*(1 + tanh(t/T))/2: a smooth step of height delta."""

    def __init__(self, delta: float, timescale: float):
        super().__init__()
        if timescale <= 0:
            raise ValueError(f"timescale must be positive, got {timescale}")
        self.delta = delta
        self.timescale = timescale

    def a(self, t):
        return 1.0 + 0.5 * self.delta * (1.0 + np.tanh(t / self.timescale))

    def a_dot(self, t):
        sech2 = 1.0 / np.cosh(t / self.timescale) ** 2
        return 0.5 * self.delta * sech2 / self.timescale

    def a_ddot(self, t):
        x = t / self.timescale
        sech2 = 1.0 / np.cosh(x) ** 2
        return -self.delta * sech2 * np.tanh(x) / self.timescale ** 2


class SinusoidTrajectory(ScaleTrajectory):
    """a(t) = 1 + delta*sin(t/T)"""

    def __init__(self, delta: float, timescale: float):
        super().__init__()
        if abs(delta) >= 1:
            raise ValueError(f"|delta| must be below 1 to keep a positive, got {delta}")
        self.delta = delta
        self.timescale = timescale

    def a(self, t):
        return 1.0 + self.delta * np.sin(t / self.timescale)

    def a_dot(self, t):
        return self.delta * np.cos(t / self.timescale) / self.timescale

    def a_ddot(self, t):
        return -self.delta * np.sin(t / self.timescale) / self.timescale ** 2


class PowerLawTrajectory(ScaleTrajectory):
    """a(t) = (c0 + rate*(t - t_ref))**power"""

    def __init__(self, power: float, rate: float = 1.0, c0: float = 1.0, t_ref: float = 0.0):
        super().__init__()
        self.power = power
        self.rate = rate
        self.c0 = c0
        self.t_ref = t_ref

    def _base(self, t):
        base = self.c0 + self.rate * (t - self.t_ref)
        if np.any(np.asarray(base) <= 0):
            raise ValueError(f"power-law base non-positive at t={t}")
        return base

    def a(self, t):
        return self._base(t) ** self.power

    def a_dot(self, t):
        return self.power * self.rate * self._base(t) ** (self.power - 1.0)

    def a_ddot(self, t):
        p = self.power
        return p * (p - 1.0) * self.rate ** 2 * self._base(t) ** (p - 2.0)


class SampledTrajectory(ScaleTrajectory):
    """Cubic-Hermite reconstruction of a sampled a(t).

    When accelerations are supplied, a second Hermite spline through
    (a_dot, a_ddot) supplies the derivatives so that a_dot and a_ddot are
    as accurate as the samples rather than differentiated interpolants.
    """

    def __init__(self, t: np.ndarray, a: np.ndarray, a_dot: np.ndarray,
                 a_ddot: Optional[np.ndarray] = None):
        super().__init__()
        t = np.asarray(t, dtype=float)
        a = np.asarray(a, dtype=float)
        if t.size < 2:
            raise ValueError("need at least two samples")
        if np.any(a <= 0):
            raise ValueError("sampled scale factor must stay positive")
        self.t_min = float(t[0])
        self.t_max = float(t[-1])
        self._a = CubicHermiteSpline(t, a, np.asarray(a_dot, dtype=float))
        if a_ddot is not None:
            self._a_dot = CubicHermiteSpline(t, np.asarray(a_dot, dtype=float),
                                             np.asarray(a_ddot, dtype=float))
        else:
            self._a_dot = self._a.derivative()
        self._a_ddot = self._a_dot.derivative()

    @classmethod
    def from_record(cls, record: SimulationRecord, l: float) -> "SampledTrajectory":
        """a = L/l from a simulated mirror trajectory."""
        return cls(record.t, record.L / l, record.L_dot / l, record.L_ddot / l)

    def _check(self, t):
        lo, hi = np.min(t), np.max(t)
        span = self.t_max - self.t_min
        if lo < self.t_min - 1e-12 * span or hi > self.t_max + 1e-12 * span:
            self.logger.debug("Extrapolating sampled trajectory to t in [%s, %s]", lo, hi)

    def a(self, t):
        self._check(t)
        return float(self._a(t)) if np.ndim(t) == 0 else self._a(t)

    def a_dot(self, t):
        return float(self._a_dot(t)) if np.ndim(t) == 0 else self._a_dot(t)

    def a_ddot(self, t):
        return float(self._a_ddot(t)) if np.ndim(t) == 0 else self._a_ddot(t)

