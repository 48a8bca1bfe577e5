"""Central finite differences with one level of Richardson extrapolation."""

from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ExtrapolationUnstable

_EPS = np.finfo(float).eps
FIRST_ORDER_STEP = _EPS ** 0.25
SECOND_ORDER_STEP = _EPS ** (1.0 / 6.0)


def base_step(x_i: float, order: int) -> float:
    factor = FIRST_ORDER_STEP if order == 1 else SECOND_ORDER_STEP
    return factor * max(1.0, abs(x_i))


def _shifted(x: np.ndarray, index: int, delta: float) -> np.ndarray:
    moved = x.copy()
    moved[index] += delta
    return moved


def _central(f, x, index, order, h):
    if order == 1:
        return (f(_shifted(x, index, h)) - f(_shifted(x, index, -h))) / (2.0 * h)
    return (f(_shifted(x, index, h)) - 2.0 * f(x) + f(_shifted(x, index, -h))) / (h * h)


def _richardson(estimate: Callable[[float], float], h: float) -> float:
    coarse = estimate(h)
    fine = estimate(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def fd_partial(f: Callable[[np.ndarray], float], x: Sequence[float], index: int,
               order: int = 1, step: Optional[float] = None) -> float:
    """Partial derivative of ``f`` along ``x[index]`` (first or second order).

    Error is O(h^4) in the base step ``h``, which defaults to
    eps^(1/4)*max(1, |x_i|) for order 1 and eps^(1/6)*max(1, |x_i|) for
    order 2.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    point = np.array(x, dtype=float).reshape(-1)
    if not 0 <= index < point.size:
        raise IndexError(f"index {index} out of range for a {point.size}-vector")
    h = base_step(point[index], order) if step is None else float(step)
    return float(_richardson(lambda hh: _central(f, point, index, order, hh), h))


def fd_mixed_partial(f: Callable[[np.ndarray], float], x: Sequence[float], i: int, j: int,
                     step: Optional[float] = None) -> float:
    """Mixed second partial d^2 f / dx_i dx_j by the four-point stencil."""
    if i == j:
        return fd_partial(f, x, i, order=2, step=step)
    point = np.array(x, dtype=float).reshape(-1)
    h_i = base_step(point[i], 2) if step is None else float(step)
    h_j = base_step(point[j], 2) if step is None else float(step)

    def stencil(scale: float) -> float:
        di, dj = h_i * scale, h_j * scale
        pp = f(_shifted(_shifted(point, i, di), j, dj))
        pm = f(_shifted(_shifted(point, i, di), j, -dj))
        mp = f(_shifted(_shifted(point, i, -di), j, dj))
        mm = f(_shifted(_shifted(point, i, -di), j, -dj))
        return (pp - pm - mp + mm) / (4.0 * di * dj)

    return float(_richardson(stencil, 1.0))


def extrapolate_to_zero(steps: Sequence[float], values: Sequence[float], power: int = 2,
                        tol: float = 1e-6) -> float:
    """Neville extrapolation of ``values(step)`` to step -> 0.

    ``values`` are assumed to have an expansion in powers of step**power.
    The estimate from all points is compared with the one that drops the
    coarsest point; a relative disagreement above ``tol`` raises
    ExtrapolationUnstable.
    """
    h = np.asarray(steps, dtype=float) ** power
    n = h.size
    if n < 3 or n != len(values):
        raise ValueError("need at least three (step, value) pairs of equal length")
    table = np.zeros((n, n))
    table[:, 0] = np.asarray(values, dtype=float)
    for j in range(1, n):
        for i in range(n - j):
            table[i, j] = (h[i] * table[i + 1, j - 1] - h[i + j] * table[i, j - 1]) / (h[i] - h[i + j])

    best = table[0, n - 1]
    previous = table[1, n - 2]
    if abs(best - previous) > tol * max(abs(best), np.finfo(float).tiny):
        raise ExtrapolationUnstable(
            f"extrapolants {previous!r} and {best!r} disagree beyond {tol}", table)
    return float(best)
