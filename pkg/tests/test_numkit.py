#!/usr/bin/env python3
"""
Numerical kernel tests: ODE integration, quadrature, finite differences
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

import numpy as np
from numpy.testing import assert_allclose

from numkit import (ExtrapolationUnstable, HaltEvent, NonConvergence, OdeProblem, QuadSpec,
                    StepUnderflow, dense_grid, extrapolate_to_zero, fd_mixed_partial, fd_partial,
                    integrate_ode, quad_adaptive)


def test_dense_grid_is_uniform_and_clipped():
    grid = dense_grid(0.0, 1.0, 0.25)
    assert_allclose(grid, [0.0, 0.25, 0.5, 0.75, 1.0])
    grid = dense_grid(0.0, 2.0 * math.pi, 0.01)
    assert grid.size == 629
    assert grid[-1] <= 2.0 * math.pi
    backwards = dense_grid(1.0, 0.0, 0.5)
    assert_allclose(backwards, [1.0, 0.5, 0.0])


def test_exponential_decay_matches_closed_form():
    problem = OdeProblem(rhs=lambda t, y: -y, t0=0.0, t1=5.0, y0=[1.0])
    result = integrate_ode(problem, tol=1e-10, dense_dt=0.1)
    assert_allclose(result.y[:, 0], np.exp(-result.t), rtol=1e-7, atol=1e-10)
    assert result.halt_event is None
    assert result.nfev > 0


def test_harmonic_oscillator_returns_after_one_period():
    problem = OdeProblem(rhs=lambda t, y: np.array([y[1], -y[0]]), t0=0.0, t1=2.0 * math.pi,
                         y0=[1.0, 0.0])
    result = integrate_ode(problem, tol=1e-11, dense_dt=2.0 * math.pi / 8.0)
    assert_allclose(result.final_state, [1.0, 0.0], atol=1e-8)
    energy = 0.5 * (result.y[:, 0] ** 2 + result.y[:, 1] ** 2)
    assert np.max(np.abs(energy - 0.5)) < 1e-9
    print("✓ harmonic oscillator closes after one period")


def test_zero_span_returns_initial_state():
    problem = OdeProblem(rhs=lambda t, y: -y, t0=1.0, t1=1.0, y0=[3.0, 4.0])
    result = integrate_ode(problem)
    assert result.t.tolist() == [1.0]
    assert result.y.tolist() == [[3.0, 4.0]]


def test_halt_event_reports_exact_crossing():
    problem = OdeProblem(rhs=lambda t, y: np.array([y[1], -1.0]), t0=0.0, t1=5.0, y0=[1.0, 0.0],
                         events=[HaltEvent("ground", lambda t, y: y[0])])
    result = integrate_ode(problem, tol=1e-10, dense_dt=0.01)
    assert result.halt_event == "ground"
    assert math.isclose(result.t_halt, math.sqrt(2.0), rel_tol=1e-8)
    assert abs(result.final_state[0]) < 1e-8
    assert result.t[-1] <= result.t_halt


def test_blow_up_raises_step_underflow_with_partial_result():
    problem = OdeProblem(rhs=lambda t, y: y * y, t0=0.0, t1=2.0, y0=[1.0])
    try:
        integrate_ode(problem, tol=1e-10, dense_dt=0.01)
    except StepUnderflow as e:
        assert e.t < 1.0 + 1e-6
        assert e.partial is not None
        assert e.partial.t[-1] < 1.0
    else:
        raise AssertionError("expected StepUnderflow for y' = y^2")


def test_integrate_rejects_bad_arguments():
    problem = OdeProblem(rhs=lambda t, y: -y, t0=0.0, t1=1.0, y0=[1.0])
    for kwargs in ({"tol": 0.0}, {"dense_dt": -1.0}, {"method": "Radau"}):
        try:
            integrate_ode(problem, **kwargs)
        except ValueError:
            continue
        raise AssertionError(f"expected ValueError for {kwargs}")


def test_quadrature_on_each_interval_kind():
    gaussian = QuadSpec(lambda x: math.exp(-x * x), -math.inf, math.inf)
    assert gaussian.kind == "full"
    assert math.isclose(quad_adaptive(gaussian), math.sqrt(math.pi), rel_tol=1e-10)

    upper = QuadSpec(lambda x: math.exp(-x), 0.0, math.inf)
    assert upper.kind == "upper"
    assert math.isclose(quad_adaptive(upper), 1.0, rel_tol=1e-10)

    lower = QuadSpec(lambda x: math.exp(x), -math.inf, 0.0)
    assert lower.kind == "lower"
    assert math.isclose(quad_adaptive(lower), 1.0, rel_tol=1e-10)

    finite = QuadSpec(math.sin, 0.0, math.pi)
    assert math.isclose(quad_adaptive(finite), 2.0, rel_tol=1e-10)

    reversed_upper = QuadSpec(lambda x: math.exp(-x), math.inf, 0.0)
    assert math.isclose(quad_adaptive(reversed_upper), -1.0, rel_tol=1e-10)


def test_quadrature_scale_places_the_turnover():
    width = 1e-3
    spec = QuadSpec(lambda x: 1.0 / (x * x + width * width), -math.inf, math.inf, scale=width)
    assert math.isclose(quad_adaptive(spec), math.pi / width, rel_tol=1e-9)


def test_quadrature_degenerate_interval_is_zero():
    assert quad_adaptive(QuadSpec(math.exp, 2.0, 2.0)) == 0.0


def test_quadrature_budget_exhaustion_raises():
    spec = QuadSpec(lambda x: math.sin(100.0 * x), 0.0, 10.0, limit=1)
    try:
        quad_adaptive(spec)
    except NonConvergence as e:
        assert e.error > 0
    else:
        raise AssertionError("expected NonConvergence with a single subdivision")


def test_quadrature_reports_interior_nan():
    """Non-finite values are only tolerated at the mapped infinite ends"""
    def gappy(x):
        return math.nan if 1.0 < x < 2.0 else math.exp(-x)

    for spec in (QuadSpec(gappy, 0.0, math.inf), QuadSpec(gappy, 0.0, 3.0),
                 QuadSpec(lambda x: gappy(abs(x)), -math.inf, math.inf)):
        try:
            quad_adaptive(spec)
        except ValueError:
            continue
        raise AssertionError(f"NaN inside the {spec.kind} interval went unnoticed")

    # 0 * inf at the far end of the map is read as a vanishing tail
    tail = QuadSpec(lambda x: x * x * math.exp(-x), 0.0, math.inf)
    assert math.isclose(quad_adaptive(tail), 2.0, rel_tol=1e-10)


def test_quadrature_validates_spec():
    try:
        quad_adaptive(QuadSpec(math.exp, 0.0, 1.0, rel_tol=0.0))
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for a zero tolerance")


def test_fd_partials_of_smooth_function():
    def f(x):
        return math.sin(x[0]) * x[1] ** 2

    point = [0.3, 2.0]
    assert math.isclose(fd_partial(f, point, 0), 4.0 * math.cos(0.3), rel_tol=1e-9)
    assert math.isclose(fd_partial(f, point, 1), 4.0 * math.sin(0.3), rel_tol=1e-9)
    assert math.isclose(fd_partial(f, point, 0, order=2), -4.0 * math.sin(0.3), rel_tol=1e-7)
    assert math.isclose(fd_mixed_partial(f, point, 0, 1), 4.0 * math.cos(0.3), rel_tol=1e-7)
    assert math.isclose(fd_mixed_partial(f, point, 1, 1), 2.0 * math.sin(0.3), rel_tol=1e-7)


def test_fd_step_scales_with_large_arguments():
    def f(x):
        return math.log(x[0])

    assert math.isclose(fd_partial(f, [1.0e4], 0), 1.0e-4, rel_tol=1e-9)


def test_fd_partial_rejects_bad_order_and_index():
    for args in (([1.0], 0, 3), ([1.0], 2, 1)):
        try:
            fd_partial(lambda x: x[0], *args)
        except (ValueError, IndexError):
            continue
        raise AssertionError(f"expected rejection for {args}")


def test_extrapolation_removes_even_powers():
    steps = [0.4, 0.2, 0.1, 0.05]
    values = [2.0 + 3.0 * h ** 2 + 5.0 * h ** 4 for h in steps]
    assert math.isclose(extrapolate_to_zero(steps, values), 2.0, rel_tol=1e-12)


def test_extrapolation_detects_unstable_tables():
    try:
        extrapolate_to_zero([1.0, 0.5, 0.25], [1.0, 5.0, -3.0])
    except ExtrapolationUnstable as e:
        assert e.table.shape == (3, 3)
    else:
        raise AssertionError("expected ExtrapolationUnstable")


if __name__ == "__main__":
    for name, func in sorted(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
    print("✅ numkit tests completed successfully!")
