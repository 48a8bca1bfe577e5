from typing import Any, Optional


class NumkitError(Exception):
    """Base class for numerical kernel failures"""


class StepUnderflow(NumkitError):
    """The step-size controller fell below the representable minimum.

    Usually a singularity of the right-hand side (e.g. an effective mass
    crossing zero). ``partial`` holds the trajectory integrated so far.
    """

    def __init__(self, message: str, t: float, partial: Optional[Any] = None):
        super().__init__(message)
        self.t = t
        self.partial = partial


class NonConvergence(NumkitError):
    """Adaptive quadrature exhausted its subdivision budget"""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class ExtrapolationUnstable(NumkitError):
    """Successive Richardson extrapolants disagree beyond tolerance"""

    def __init__(self, message: str, table: Any):
        super().__init__(message)
        self.table = table
