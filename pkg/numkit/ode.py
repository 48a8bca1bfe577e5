"""Adaptive ODE integration with dense sampling on a uniform grid."""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StepUnderflow

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_METHOD = "DOP853"
_EMBEDDED_METHODS = ("RK45", "RK23", "DOP853")


@dataclass
class HaltEvent:
    """Terminal event: integration stops when ``fn(t, y)`` crosses zero.

    ``direction`` follows solve_ivp: -1 only on falling crossings.
    """
    name: str
    fn: Callable[[float, np.ndarray], float]
    direction: float = -1.0


@dataclass
class OdeProblem:
    rhs: Callable[[float, np.ndarray], np.ndarray]
    t0: float
    t1: float
    y0: Sequence[float]
    events: List[HaltEvent] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return int(np.size(self.y0))

    def validate(self) -> None:
        if self.dimension < 1:
            raise ValueError("ODE dimension must be at least 1")
        if not (np.isfinite(self.t0) and np.isfinite(self.t1)):
            raise ValueError(f"non-finite time bounds ({self.t0}, {self.t1})")


@dataclass
class OdeResult:
    t: np.ndarray
    y: np.ndarray                      # shape (len(t), dimension)
    halt_event: Optional[str] = None
    t_halt: Optional[float] = None
    y_halt: Optional[np.ndarray] = None
    nfev: int = 0

    @property
    def final_state(self) -> np.ndarray:
        if self.y_halt is not None:
            return self.y_halt
        return self.y[-1]


def dense_grid(t0: float, t1: float, dense_dt: float) -> np.ndarray:
    """Multiples of dense_dt from t0 towards t1 (inclusive when it lands)."""
    span = t1 - t0
    count = int(np.floor(abs(span) / dense_dt + 1e-9)) + 1
    grid = t0 + np.sign(span) * dense_dt * np.arange(count)
    if span > 0:
        return np.minimum(grid, t1)
    return np.maximum(grid, t1)


def integrate_ode(problem: OdeProblem, tol: float = DEFAULT_TOL, dense_dt: float = 1e-2,
                  method: str = DEFAULT_METHOD, atol: Optional[float] = None) -> OdeResult:
    """Integrate ``problem`` and sample the solution every ``dense_dt``.

    The embedded error estimate of each accepted step is held below ``tol``
    (relative) and ``atol`` (absolute, defaults to ``tol``). A terminal
    event stops the run; its name and exact state are reported on the
    result. Raises StepUnderflow when the controller collapses.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if dense_dt <= 0:
        raise ValueError(f"dense_dt must be positive, got {dense_dt}")
    if method not in _EMBEDDED_METHODS:
        raise ValueError(f"unsupported method {method!r}; expected one of {_EMBEDDED_METHODS}")
    problem.validate()

    y0 = np.asarray(problem.y0, dtype=float).reshape(-1)
    if problem.t1 == problem.t0:
        return OdeResult(t=np.array([problem.t0]), y=y0[np.newaxis, :].copy())

    event_fns = []
    for event in problem.events:
        def fn(t, y, _event=event):
            return _event.fn(t, y)
        fn.terminal = True
        fn.direction = event.direction
        event_fns.append(fn)

    grid = dense_grid(problem.t0, problem.t1, dense_dt)
    logger.debug("Integrating dim=%d over [%s, %s] with %s, tol=%g",
                 problem.dimension, problem.t0, problem.t1, method, tol)

    solution = solve_ivp(
        problem.rhs,
        (problem.t0, problem.t1),
        y0,
        method=method,
        t_eval=grid,
        events=event_fns or None,
        rtol=tol,
        atol=tol if atol is None else atol,
    )

    result = OdeResult(t=solution.t, y=solution.y.T, nfev=int(solution.nfev))

    if solution.status == -1:
        t_fail = float(solution.t[-1]) if solution.t.size else problem.t0
        logger.warning("Integration failed near t=%s: %s", t_fail, solution.message)
        raise StepUnderflow(solution.message, t_fail, partial=result)

    if solution.status == 1:
        for event, times, states in zip(problem.events, solution.t_events, solution.y_events):
            if len(times):
                result.halt_event = event.name
                result.t_halt = float(times[0])
                result.y_halt = np.asarray(states[0], dtype=float)
                logger.debug("Halt event %s at t=%s", event.name, result.t_halt)
                break

    return result
