"""Numerical kernel: ODE integration, adaptive quadrature, finite differences."""

from .differences import extrapolate_to_zero, fd_mixed_partial, fd_partial
from .errors import ExtrapolationUnstable, NonConvergence, NumkitError, StepUnderflow
from .ode import HaltEvent, OdeProblem, OdeResult, dense_grid, integrate_ode
from .quadrature import QuadSpec, quad_adaptive

__all__ = [
    "ExtrapolationUnstable", "HaltEvent", "extrapolate_to_zero", "NonConvergence", "NumkitError", "OdeProblem",
    "OdeResult", "QuadSpec", "StepUnderflow", "dense_grid", "fd_mixed_partial", "fd_partial",
    "integrate_ode", "quad_adaptive",
]
