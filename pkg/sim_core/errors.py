from typing import Optional


class BackreactionError(Exception):
    """Base class for model-level failures"""


class ZeroFrequency(BackreactionError):
    """The null mode (k = 0 with zero field mass) has no oscillation frequency"""


class CriticalLength(BackreactionError):
    """The ring's effective mass M - 1/(12 pi L) is no longer positive"""

    def __init__(self, L: float, L_star: float):
        super().__init__(f"ring length {L!r} at or below critical length {L_star!r}")
        self.L = L
        self.L_star = L_star


class SingularSystem(BackreactionError):
    """A linear system for mode coefficients has no unique solution"""


class EffectiveMassSingular(BackreactionError):
    """The Euler-Lagrange denominator m + d2E/dV2 vanished"""

    def __init__(self, denominator: float, t: Optional[float] = None):
        where = f" at t={t!r}" if t is not None else ""
        super().__init__(f"effective mass {denominator!r} too small{where}")
        self.denominator = denominator
        self.t = t
