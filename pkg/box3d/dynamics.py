"""Mirror dynamics of the box under the particle-creation energy.

The moving face follows the Euler-Lagrange equation of

    Lagrangian(L, V, tau) = m V^2 / 2 + E(L, V, tau),

    (m + E_VV) L'' = E_L - E_VL V - E_Vtau dtau/dt,

where E = L l^2 rho_creation(a = L/l, a_dot = V/l, tau) and tau is the
clock entering the creation density: cosmic time t, or t0 + eta(t) in the
conformal convention.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from numkit import HaltEvent, OdeProblem, StepUnderflow, fd_mixed_partial, fd_partial, integrate_ode
from sim_core import (EffectiveMassSingular, HaltReason, MirrorState, ModelKind,
                      SimulationRecord)

from .creation import PEE_TAYLOR_HALFWIDTH, bracket_static, matter_density, pee, pee_prime, rho_creation
from .kinematics import BoxKinematics, BoxParams, CreationForm, PartialsMode, TimeConvention

logger = logging.getLogger(__name__)

SINGULAR_MASS_FRACTION = 1e-12
LENZ_SLACK = 1e-9

# (prefactor multiple, power of tau in the anisotropy term)
_FORM_CONSTANTS = {CreationForm.CLOSED: (1.0, 3.0), CreationForm.RECONCILED: (4.0, 2.0)}


def creation_energy(L: float, L_dot: float, t: float, params: BoxParams) -> float:
    """E_creation = L l^2 rho_creation(a = L/l, a_dot = L_dot/l, t)."""
    if L <= 0 or t <= 0:
        raise ValueError(f"need L > 0 and t > 0, got L={L}, t={t}")
    kin = BoxKinematics.from_length(L, L_dot, params.l)
    return L * params.l ** 2 * rho_creation(kin, t, params.creation_form)


@dataclass
class EnergyPartials:
    E: float
    E_L: float
    E_V: float
    E_VV: float
    E_VL: float
    E_Vt: float
    E_t: float


def creation_partials(L: float, V: float, t: float, params: BoxParams,
                      halfwidth: float = PEE_TAYLOR_HALFWIDTH) -> EnergyPartials:
    """Hand-derived partials of the creation energy.

    With K = f l^3 / (576 pi^2), G = B a^(-7/3) and H = P a^(-5/3):
    E = K [G t^-4 - 4 V^2 l^-2 H t^(s-4)], where (f, s) = (1, 3) for the
    closed form and (4, 2) for the reconciled one.
    """
    l = params.l
    f, s = _FORM_CONSTANTS[params.creation_form]
    a = L / l
    P = pee(a, halfwidth)
    dP = pee_prime(a, halfwidth)
    K = f * l ** 3 / (576.0 * math.pi ** 2)

    B = bracket_static(a, P)
    dB = (36.0 * a ** 3 - 120.0 * a ** (7.0 / 3.0) + 48.0 * a ** (5.0 / 3.0) * P
          + 18.0 * a ** (8.0 / 3.0) * dP + 18.0 * a * P + 9.0 * a * a * dP)
    G = B * a ** (-7.0 / 3.0)
    dG = dB * a ** (-7.0 / 3.0) - (7.0 / 3.0) * B * a ** (-10.0 / 3.0)
    H = P * a ** (-5.0 / 3.0)
    dH = dP * a ** (-5.0 / 3.0) - (5.0 / 3.0) * P * a ** (-8.0 / 3.0)

    tau_aniso = t ** (s - 4.0)
    tau_aniso_rate = (s - 4.0) * t ** (s - 5.0)
    v2 = V * V / (l * l)

    return EnergyPartials(
        E=K * (G * t ** -4 - 4.0 * v2 * H * tau_aniso),
        E_L=K / l * (dG * t ** -4 - 4.0 * v2 * dH * tau_aniso),
        E_V=-8.0 * K * V / (l * l) * H * tau_aniso,
        E_VV=-8.0 * K / (l * l) * H * tau_aniso,
        E_VL=-8.0 * K * V / l ** 3 * dH * tau_aniso,
        E_Vt=-8.0 * K * V / (l * l) * H * tau_aniso_rate,
        E_t=K * (-4.0 * G * t ** -5 - 4.0 * v2 * H * tau_aniso_rate),
    )


def fd_energy_partials(energy: Callable[[float, float, float], float], L: float, V: float,
                       t: float) -> EnergyPartials:
    """The same partials by Richardson-extrapolated central differences."""
    def f(x):
        return energy(x[0], x[1], x[2])
    x = [L, V, t]
    return EnergyPartials(
        E=energy(L, V, t),
        E_L=fd_partial(f, x, 0),
        E_V=fd_partial(f, x, 1),
        E_VV=fd_partial(f, x, 1, order=2),
        E_VL=fd_mixed_partial(f, x, 1, 0),
        E_Vt=fd_mixed_partial(f, x, 1, 2),
        E_t=fd_partial(f, x, 2),
    )


def el_acceleration(partials: EnergyPartials, V: float, mass: float, clock_rate: float = 1.0,
                    t: Optional[float] = None) -> float:
    """Solve the Euler-Lagrange equation of m V^2/2 + E(L, V, tau) for L''."""
    denominator = mass + partials.E_VV
    if abs(denominator) < SINGULAR_MASS_FRACTION * abs(mass):
        raise EffectiveMassSingular(denominator, t)
    numerator = partials.E_L - partials.E_VL * V - partials.E_Vt * clock_rate
    return numerator / denominator


def lagrangian_accel(energy: Callable[[float, float, float], float], L: float, V: float,
                     t: float, mass: float, clock_rate: float = 1.0) -> float:
    """EL acceleration for an arbitrary energy term, partials by finite differences."""
    return el_acceleration(fd_energy_partials(energy, L, V, t), V, mass, clock_rate, t)


def _clock(t: float, eta: float, L: float, params: BoxParams):
    """(tau, dtau/dt) for the configured time convention."""
    if params.time_convention is TimeConvention.CONFORMAL:
        return params.t0 + eta, (L / params.l) ** (-1.0 / 3.0)
    return t, 1.0


def box_partials(L: float, V: float, tau: float, params: BoxParams) -> EnergyPartials:
    if params.partials is PartialsMode.ANALYTIC:
        return creation_partials(L, V, tau, params)
    return fd_energy_partials(lambda LL, VV, tt: creation_energy(LL, VV, tt, params), L, V, tau)


def box_accel(state: MirrorState, t: float, params: BoxParams, eta: Optional[float] = None) -> float:
    """L'' of the moving face at time t (eta needed for the conformal clock)."""
    if params.time_convention is TimeConvention.CONFORMAL and eta is None:
        raise ValueError("the conformal clock needs eta")
    tau, rate = _clock(t, eta or 0.0, state.L, params)
    partials = box_partials(state.L, state.L_dot, tau, params)
    return el_acceleration(partials, state.L_dot, params.m_mirror, rate, t)


def effective_mass(L: float, V: float, tau: float, params: BoxParams) -> float:
    return params.m_mirror + creation_partials(L, V, tau, params).E_VV


def simulate_box(params: BoxParams, ic: Sequence[float], t_end: float, tol: float = 1e-10,
                 dense_dt: float = 1e-2, method: str = "DOP853") -> SimulationRecord:
    """Integrate the moving face from (L0, V0) at t0 to t_end.

    The state is (L, V, eta) with eta' = a^(-1/3).
    """
    L0, V0 = float(ic[0]), float(ic[1])
    if t_end <= params.t0:
        raise ValueError(f"t_end must exceed t0={params.t0}, got {t_end}")
    if L0 <= 0:
        raise ValueError(f"L0 must be positive, got {L0}")

    logger.info("Simulating box l=%s m=%s V0=%s over [%s, %s] (%s clock, %s form, %s partials)",
                params.l, params.m_mirror, V0, params.t0, t_end, params.time_convention.value,
                params.creation_form.value, params.partials.value)
    singular: List[float] = []

    def rhs(t, y):
        L, V, eta = y
        if L <= 0:
            return np.full(3, math.nan)
        try:
            accel = box_accel(MirrorState(t, L, V), t, params, eta)
        except EffectiveMassSingular as e:
            singular.append(t)
            logger.debug("Effective mass singular: %s", e)
            accel = math.nan
        return np.array([V, accel, (L / params.l) ** (-1.0 / 3.0)])

    def mass_margin(t, y):
        tau, _ = _clock(t, y[2], y[0], params)
        return effective_mass(y[0], y[1], tau, params) - SINGULAR_MASS_FRACTION * params.m_mirror

    problem = OdeProblem(rhs=rhs, t0=params.t0, t1=t_end, y0=[L0, V0, 0.0],
                         events=[HaltEvent("effective_mass_singular", mass_margin)])
    halt, halt_time = HaltReason.COMPLETED, None
    try:
        result = integrate_ode(problem, tol=tol, dense_dt=dense_dt, method=method)
        t, y = result.t, result.y
        if result.halt_event is not None:
            halt, halt_time = HaltReason.EFFECTIVE_MASS_SINGULAR, result.t_halt
    except StepUnderflow as e:
        halt = HaltReason.EFFECTIVE_MASS_SINGULAR if singular else HaltReason.STEP_UNDERFLOW
        halt_time = e.t
        logger.warning("Box integration truncated at t=%s (%s)", e.t, halt.value)
        t, y = e.partial.t, e.partial.y

    record = _assemble_record(t, y, params)
    record.halt_reason = halt
    record.halt_time = halt_time
    record.params = {"l": params.l, "m": params.m_mirror, "t0": params.t0, "L0": L0, "V0": V0,
                     "t_end": t_end, "time_convention": params.time_convention.value,
                     "creation_form": params.creation_form.value,
                     "partials": params.partials.value, "tol": tol, "dense_dt": dense_dt}
    if record.n_samples >= 2:
        record.diagnostics["lenz"] = lenz_property(record)
        record.diagnostics["matter_bound_ratio"] = matter_energy_bound(record, params)["ratio"]
        record.diagnostics["matter_direct_ratio"] = matter_energy_direct(record, params)["ratio"]
        ratio_column = record.diagnostics["matter_bound_ratio"] * (record.t - record.t[0]) / (t[-1] - t[0])
        record.energies["ratio_matter_bound"] = ratio_column
    else:
        record.energies["ratio_matter_bound"] = np.zeros_like(record.t)
    logger.info("Box run finished: %s, %d samples", halt.value, record.n_samples)
    return record


def _assemble_record(t: np.ndarray, y: np.ndarray, params: BoxParams) -> SimulationRecord:
    L, V, eta = y[:, 0], y[:, 1], y[:, 2]
    accel = np.empty_like(L)
    creation = np.empty_like(L)
    for i in range(t.size):
        tau, _ = _clock(t[i], eta[i], L[i], params)
        accel[i] = box_accel(MirrorState(t[i], L[i], V[i]), t[i], params, eta[i])
        creation[i] = creation_energy(L[i], V[i], tau, params)
    return SimulationRecord(
        model=ModelKind.BOX, t=t, L=L, L_dot=V, L_ddot=accel,
        energies={"E_creation": creation, "E_kinetic": 0.5 * params.m_mirror * V * V},
        aux={"eta": eta},
    )


def lenz_property(record: SimulationRecord, slack: float = LENZ_SLACK) -> bool:
    """True when |L_dot| never grows by more than ``slack`` between samples."""
    speed = np.abs(record.L_dot)
    return bool(np.all(np.diff(speed) <= slack))


def matter_energy_bound(record: SimulationRecord, params: BoxParams) -> Dict[str, float]:
    """Energy-balance bound on the matter energy.

    With E_matter(t0) = 0, dE_matter/dt(t0) = -d/dt[m V^2/2 + E_creation]
    at t0 and the bound is |dE_matter/dt(t0)| (t_end - t0). ``ratio``
    compares it with max |E_creation| over the record.
    """
    L, V, A = record.L[0], record.L_dot[0], record.L_ddot[0]
    eta0 = record.aux.get("eta", np.zeros(1))[0] if record.aux else 0.0
    tau, rate = _clock(record.t[0], eta0, L, params)
    p = box_partials(L, V, tau, params)
    rate_of_change = params.m_mirror * V * A + p.E_L * V + p.E_V * A + p.E_t * rate
    bound = abs(rate_of_change) * (record.t[-1] - record.t[0])
    peak = float(np.max(np.abs(record.energies["E_creation"])))
    ratio = bound / peak if peak > 0 else 0.0
    return {"rate": -rate_of_change, "bound": bound, "peak_creation": peak, "ratio": ratio}


def matter_energy_direct(record: SimulationRecord, params: BoxParams) -> Dict[str, float]:
    """The excluded (int Q d(eta))^2 term integrated over R along the record.

    int Q d(eta) = int a_dot^2 a^(-5/3) / 9 dt by the trapezoid rule on the
    recorded samples.
    """
    a = record.L / params.l
    a_dot = record.L_dot / params.l
    q = cumulative_trapezoid(a_dot ** 2 * a ** (-5.0 / 3.0) / 9.0, record.t, initial=0.0)
    eta = record.aux.get("eta", np.zeros_like(record.t)) if record.aux else np.zeros_like(record.t)
    energy = np.empty_like(a)
    for i in range(a.size):
        tau, _ = _clock(record.t[i], eta[i], record.L[i], params)
        kin = BoxKinematics(a[i], a_dot[i])
        energy[i] = record.L[i] * params.l ** 2 * matter_density(kin, tau, q[i])
    peak = float(np.max(np.abs(record.energies["E_creation"])))
    peak_matter = float(np.max(np.abs(energy)))
    return {"peak_matter": peak_matter, "peak_creation": peak,
            "ratio": peak_matter / peak if peak > 0 else 0.0, "q_final": float(q[-1])}
