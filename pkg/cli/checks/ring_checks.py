"""Acceptance checks for the 1+1D ring."""

import itertools
import math

from box3d import lagrangian_accel
from ring1d import (RingKinematics, RingParams, casimir_density_closed, casimir_density_numeric,
                    compare_collapse, el_residual, ring_accel, ring_lagrangian, rho2_closed,
                    rho2_quadrature, simulate_ring)
from sim_core import MirrorState

from ..check_base import CheckResult, VerifyCheck

RHO2_GRID = list(itertools.product((0.5, 1.0, 2.0), (-2.0, -1.0, 1.0, 2.0)))
RHO2_MASSES = (0.1, 1.0, 10.0)
CASIMIR_GRID = list(itertools.product((0.5, 1.0, 2.0), (1.0, 2.0 * math.pi, 10.0)))
COLLAPSE_VELOCITIES = (-0.3, 0.0, 0.3)


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


class Rho2OracleCheck(VerifyCheck):
    order = 10

    def get_name(self) -> str:
        return "rho2_oracle"

    def get_anchor(self) -> str:
        return "rho2 = (1/24 pi)(a_dot/a)^2, independent of m"

    def evaluate(self) -> CheckResult:
        worst, spread = 0.0, 0.0
        for a, a_dot in RHO2_GRID:
            kin = RingKinematics(a, a_dot, 0.3)
            reference = rho2_closed(kin)
            values = [rho2_quadrature(kin, m) for m in RHO2_MASSES]
            worst = max(worst, max(_relative(v, reference) for v in values))
            spread = max(spread, (max(values) - min(values)) / abs(reference))
        return self.result(worst <= 1e-6 and spread <= 1e-6, {"max_rel_error": worst, "m_spread": spread},
                           0.0, 1e-6, f"{len(RHO2_GRID)} points x {len(RHO2_MASSES)} masses")


class CasimirOracleCheck(VerifyCheck):
    order = 20

    def get_name(self) -> str:
        return "casimir_oracle"

    def get_anchor(self) -> str:
        return "cutoff-extrapolated Casimir density = -pi/(6 a^2 l^2)"

    def evaluate(self) -> CheckResult:
        worst = 0.0
        for a, l in CASIMIR_GRID:
            kin = RingKinematics(a)
            worst = max(worst, _relative(casimir_density_numeric(kin, l), casimir_density_closed(kin, l)))
        return self.result(worst <= 1e-4, worst, 0.0, 1e-4, f"{len(CASIMIR_GRID)} (a, l) points")


class EulerLagrangeResidualCheck(VerifyCheck):
    order = 30

    def get_name(self) -> str:
        return "el_residual"

    def get_anchor(self) -> str:
        return "(M - 1/(12 pi L)) L'' equation is the Euler-Lagrange equation of the ring action"

    def evaluate(self) -> CheckResult:
        params = RingParams()
        fine = el_residual(simulate_ring(params, (1.0, 0.0), 1.0, tol=1e-10, dense_dt=1e-3), params)
        coarse = el_residual(simulate_ring(params, (1.0, 0.0), 1.0, tol=1e-12, dense_dt=1e-2), params)
        halved = el_residual(simulate_ring(params, (1.0, 0.0), 1.0, tol=1e-12, dense_dt=5e-3), params)
        ratio = coarse / halved
        passed = fine <= 1e-4 and 3.0 <= ratio <= 5.0
        return self.result(passed, {"residual": fine, "halving_ratio": ratio},
                           {"residual": 0.0, "halving_ratio": 4.0}, {"residual": 1e-4, "halving_ratio": 1.0})


class RingEnergyConservationCheck(VerifyCheck):
    order = 40

    def get_name(self) -> str:
        return "ring_energy_conservation"

    def get_anchor(self) -> str:
        return "M L_dot^2/2 - L_dot^2/(24 pi L) - pi/(6 L) is conserved"

    def evaluate(self) -> CheckResult:
        record = simulate_ring(RingParams(), (1.0, 0.0), 2.0, tol=self.tol or 1e-10)
        drift = record.diagnostics["energy_drift"]
        return self.result(drift <= 1e-8, drift, 0.0, 1e-8,
                           f"halt {record.halt_reason.value} at t={record.halt_time}")


class AcceleratedCollapseCheck(VerifyCheck):
    order = 50

    def get_name(self) -> str:
        return "accelerated_collapse"

    def get_anchor(self) -> str:
        return "backreaction accelerates the collapse for either sign of the velocity"

    def evaluate(self) -> CheckResult:
        params = RingParams()
        gaps = {}
        passed = True
        for v0 in COLLAPSE_VELOCITIES:
            comparison = compare_collapse(params, (1.0, v0), 2.0, tol=self.tol or 1e-10)
            mask = comparison.t > 0.05
            gaps[v0] = float(comparison.gap[mask].max()) if mask.any() else math.nan
            passed = passed and mask.any() and comparison.bkr_below(0.05)
        return self.result(passed, {"max_gap": gaps}, "< 0", 0.0, "gap = L_bkr - L_nobkr for t > 0.05")


class EulerLagrangeAssemblerCheck(VerifyCheck):
    order = 60

    def get_name(self) -> str:
        return "el_assembler"

    def get_anchor(self) -> str:
        return "generic Euler-Lagrange assembly reproduces the ring equation of motion"

    def evaluate(self) -> CheckResult:
        params = RingParams()

        def field_term(L, V, t):
            return ring_lagrangian(L, V, params) - 0.5 * params.M * V * V

        worst = 0.0
        grid = list(itertools.product((0.2, 0.5, 1.0, 2.0, 5.0), (-0.5, -0.1, 0.1, 0.5)))
        for L, V in grid:
            expected = ring_accel(MirrorState(0.0, L, V), params, True)
            assembled = lagrangian_accel(field_term, L, V, 1.0, params.M)
            worst = max(worst, _relative(assembled, expected))
        return self.result(worst <= 1e-6, worst, 0.0, 1e-6, f"{len(grid)} (L, L_dot) points")
