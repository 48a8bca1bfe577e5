"""Equations of motion for the ring, with and without trace-anomaly backreaction.

The backreacted motion follows from the Lagrangian

    L(L, V) = M V^2 / 2 - V^2 / (24 pi L) + pi / (6 L),

whose Euler-Lagrange equation is

    (M - 1/(12 pi L)) L'' = -pi/(6 L^2) - V^2/(24 pi L^2).

Without backreaction the field contributes only the Casimir potential and
M L'' = -pi/(6 L^2).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from numkit import HaltEvent, OdeProblem, StepUnderflow, integrate_ode
from sim_core import CriticalLength, HaltReason, MirrorState, ModelKind, SimulationRecord

from .adiabatic import RingParams
from .casimir import (ANOMALY_COEFFICIENT, CASIMIR_COEFFICIENT, anomaly_kinetic_energy,
                      casimir_energy)

logger = logging.getLogger(__name__)

CRITICAL_MARGIN = 1e-6
COLLAPSE_LENGTH = 1e-6
# Ring integrations run this much tighter than the requested tolerance: near
# the critical length the energy is a difference of terms ~40x its size.
RING_TOL_FACTOR = 1e-2


def ring_accel(state: MirrorState, params: RingParams, with_backreaction: bool) -> float:
    L, V = state.L, state.L_dot
    if L <= 0:
        raise ValueError(f"ring length must be positive, got {L}")
    casimir_force = -CASIMIR_COEFFICIENT / (L * L)
    if not with_backreaction:
        return casimir_force / params.M
    effective_mass = params.M - 2.0 * ANOMALY_COEFFICIENT / L
    if L <= params.critical_length or effective_mass <= 0:
        raise CriticalLength(L, params.critical_length)
    return (casimir_force - ANOMALY_COEFFICIENT * V * V / (L * L)) / effective_mass


def ring_lagrangian(L: float, V: float, params: RingParams, with_backreaction: bool = True) -> float:
    value = 0.5 * params.M * V * V + CASIMIR_COEFFICIENT / L
    if with_backreaction:
        value -= ANOMALY_COEFFICIENT * V * V / L
    return value


def ring_energy(L: float, V: float, params: RingParams, with_backreaction: bool = True) -> float:
    """Conserved energy V dL/dV - L of the ring Lagrangian."""
    energy = 0.5 * params.M * V * V + casimir_energy(L)
    if with_backreaction:
        energy += anomaly_kinetic_energy(L, V)
    return energy


def energy_drift(e_total: np.ndarray) -> float:
    """max |E - E0| relative to |E0|, or absolute when E0 = 0."""
    deviation = float(np.max(np.abs(e_total - e_total[0])))
    scale = abs(float(e_total[0]))
    return deviation / scale if scale > 0 else deviation


def _ring_rhs(params: RingParams, with_backreaction: bool):
    def rhs(t, y):
        L, V = y[0], y[1]
        try:
            accel = ring_accel(MirrorState(t, L, V), params, with_backreaction)
        except (CriticalLength, ValueError):
            # solve_ivp rejects the step and shrinks it
            accel = math.nan
        return np.array([V, accel])
    return rhs


def _halt_events(params: RingParams, with_backreaction: bool):
    if with_backreaction:
        threshold = (1.0 + CRITICAL_MARGIN) * params.critical_length
        return [HaltEvent("critical_length", lambda t, y: y[0] - threshold)]
    return [HaltEvent("collapse", lambda t, y: y[0] - COLLAPSE_LENGTH)]


def simulate_ring(params: RingParams, ic: Tuple[float, float], t_end: float,
                  with_backreaction: bool = True, tol: float = 1e-10, dense_dt: float = 1e-3,
                  method: str = "DOP853") -> SimulationRecord:
    """Integrate the ring from (L0, V0) at t = 0 up to t_end.

    The run stops early, with ``halt_reason`` set, when the ring reaches
    (1 + 1e-6) L* (backreaction) or L = 1e-6 (no backreaction).
    """
    L0, V0 = float(ic[0]), float(ic[1])
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if L0 <= 0:
        raise ValueError(f"L0 must be positive, got {L0}")
    if with_backreaction and L0 <= params.critical_length:
        raise CriticalLength(L0, params.critical_length)

    logger.info("Simulating ring M=%s L0=%s V0=%s t_end=%s backreaction=%s",
                params.M, L0, V0, t_end, with_backreaction)
    problem = OdeProblem(rhs=_ring_rhs(params, with_backreaction), t0=0.0, t1=t_end,
                         y0=[L0, V0], events=_halt_events(params, with_backreaction))

    halt = HaltReason.COMPLETED
    halt_time = None
    halt_state = None
    try:
        result = integrate_ode(problem, tol=tol * RING_TOL_FACTOR, dense_dt=dense_dt, method=method)
        if result.halt_event is not None:
            halt = HaltReason(result.halt_event)
            halt_time = result.t_halt
            halt_state = result.y_halt
        t, y = result.t, result.y
    except StepUnderflow as e:
        logger.warning("Ring integration truncated at t=%s: %s", e.t, e)
        halt = HaltReason.STEP_UNDERFLOW
        halt_time = e.t
        t, y = e.partial.t, e.partial.y

    record = _assemble_record(t, y, params, with_backreaction)
    record.halt_reason = halt
    record.halt_time = halt_time
    record.params = {"M": params.M, "l": params.l, "L0": L0, "V0": V0, "t_end": t_end,
                     "backreaction": with_backreaction, "tol": tol, "dense_dt": dense_dt}
    if halt_state is not None:
        record.diagnostics["halt_state"] = [float(halt_state[0]), float(halt_state[1])]
    logger.info("Ring run finished: %s at t=%s after %d samples",
                halt.value, halt_time if halt_time is not None else t_end, record.n_samples)
    return record


def _assemble_record(t: np.ndarray, y: np.ndarray, params: RingParams,
                     with_backreaction: bool) -> SimulationRecord:
    L = y[:, 0]
    V = y[:, 1]
    accel = np.array([ring_accel(MirrorState(tt, LL, VV), params, with_backreaction)
                      for tt, LL, VV in zip(t, L, V)])
    e_casimir = -CASIMIR_COEFFICIENT / L
    if with_backreaction:
        e_anomaly = -ANOMALY_COEFFICIENT * V * V / L
    else:
        e_anomaly = np.zeros_like(L)
    e_total = 0.5 * params.M * V * V + e_anomaly + e_casimir

    record = SimulationRecord(
        model=ModelKind.RING, t=t, L=L, L_dot=V, L_ddot=accel,
        energies={"E_casimir": e_casimir, "E_kinetic_anomaly": e_anomaly, "E_total": e_total},
    )
    if e_total.size:
        record.diagnostics["energy_drift"] = energy_drift(e_total)
    return record


def el_residual(record: SimulationRecord, params: RingParams, with_backreaction: bool = True) -> float:
    """Discrete Euler-Lagrange residual of a recorded ring trajectory.

    The momentum p = dL/dV is differenced centrally on the uniform grid and
    compared with dL/dL at each interior sample; the maximum mismatch is
    returned.
    """
    if record.n_samples < 3:
        raise ValueError("need at least three samples for central differences")
    h = record.dt
    L, V = record.L, record.L_dot
    if with_backreaction:
        momentum = (params.M - 2.0 * ANOMALY_COEFFICIENT / L) * V
        force = ANOMALY_COEFFICIENT * V * V / (L * L) - CASIMIR_COEFFICIENT / (L * L)
    else:
        momentum = params.M * V
        force = -CASIMIR_COEFFICIENT / (L * L)
    momentum_rate = (momentum[2:] - momentum[:-2]) / (2.0 * h)
    return float(np.max(np.abs(momentum_rate - force[1:-1])))


@dataclass
class CollapseComparison:
    backreaction: SimulationRecord
    no_backreaction: SimulationRecord
    t: np.ndarray
    gap: np.ndarray             # L_bkr - L_nobkr on the common window
    first_halt: Optional[float]

    def bkr_below(self, t_min: float = 0.0) -> bool:
        mask = self.t > t_min
        return bool(np.all(self.gap[mask] < 0))


def compare_collapse(params: RingParams, ic: Tuple[float, float], t_end: float,
                     tol: float = 1e-10, dense_dt: float = 1e-3,
                     method: str = "DOP853") -> CollapseComparison:
    """Run both equations of motion and compare them up to the earlier halt."""
    with_bkr = simulate_ring(params, ic, t_end, True, tol, dense_dt, method)
    without = simulate_ring(params, ic, t_end, False, tol, dense_dt, method)
    n = min(with_bkr.n_samples, without.n_samples)
    halts = [r.halt_time for r in (with_bkr, without) if r.halt_time is not None]
    first_halt = min(halts) if halts else None
    gap = with_bkr.L[:n] - without.L[:n]
    return CollapseComparison(with_bkr, without, with_bkr.t[:n], gap, first_halt)


def time_to_reach(record: SimulationRecord, L_target: float) -> Optional[float]:
    """First sampled time at which L drops to L_target (linear interpolation)."""
    below = np.nonzero(record.L <= L_target)[0]
    if below.size == 0:
        return None
    i = int(below[0])
    if i == 0:
        return float(record.t[0])
    t0, t1 = record.t[i - 1], record.t[i]
    L0, L1 = record.L[i - 1], record.L[i]
    return float(t0 + (L_target - L0) * (t1 - t0) / (L1 - L0))
