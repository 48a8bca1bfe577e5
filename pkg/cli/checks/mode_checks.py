"""Acceptance checks for mode evolution: Bogoliubov invariants and WKB order."""

import math

import numpy as np

from box3d import BoxParams, k_lattice, mode_bank, simulate_box
from modes import BogoliubovPair, evolve_mode_exact, lowfreq_alpha_beta, lowfreq_coeffs, wkb_frequency_at
from ring1d import RingKinematics, mode_frequency
from sim_core import TanhRampTrajectory

from ..check_base import CheckResult, VerifyCheck

WKB_K = 2.0 * math.pi
WKB_MASS = 2.0
WKB_DELTA = 0.5
WKB_TIMESCALES = (5.0, 10.0)


def random_valid_pair(rng: np.random.Generator) -> BogoliubovPair:
    """A pair with |alpha|^2 - |beta|^2 = 1 built from a squeeze r and two phases."""
    r = rng.uniform(0.0, 0.5)
    phase_a, phase_b = rng.uniform(0.0, 2.0 * math.pi, size=2)
    return BogoliubovPair(math.cosh(r) * complex(math.cos(phase_a), math.sin(phase_a)),
                          math.sinh(r) * complex(math.cos(phase_b), math.sin(phase_b)))


def wkb_amplitude_errors(timescale: float, tol: float = 1e-12):
    """(deviation of |f| from (2 omega)^-1/2, deviation of |f| from (2W)^-1/2) at the ramp midpoint."""
    trajectory = TanhRampTrajectory(WKB_DELTA, timescale)
    modes = evolve_mode_exact(WKB_K, trajectory, WKB_MASS, (-8.0 * timescale, 0.0), tol=tol,
                              dense_dt=0.05)
    amplitude = abs(modes.f[-1])
    omega = mode_frequency(WKB_K, RingKinematics.at(trajectory, 0.0), WKB_MASS).omega
    W = wkb_frequency_at(WKB_K, trajectory, 0.0, WKB_MASS)
    zeroth = abs(amplitude * math.sqrt(2.0 * omega) - 1.0)
    second = abs(amplitude * math.sqrt(2.0 * W) - 1.0)
    return zeroth, second


class BogoliubovInvariantsCheck(VerifyCheck):
    order = 70

    def get_name(self) -> str:
        return "bogoliubov_invariants"

    def get_anchor(self) -> str:
        return "|alpha|^2 - |beta|^2 = 1 and c1 c2* + c2 c1* = 1/2"

    def evaluate(self) -> CheckResult:
        params = BoxParams()
        record = simulate_box(params, (params.L0, 0.5), 2.0, tol=1e-10, dense_dt=1e-2)
        bank = mode_bank(record, params, k_lattice(1, params.l), tol=1e-12)

        rng = np.random.default_rng(7)
        norm_error, wronskian_error = 0.0, 0.0
        for _ in range(200):
            Omega0 = rng.uniform(0.5, 2.0)
            coeffs = lowfreq_coeffs(Omega0, random_valid_pair(rng))
            norm_error = max(norm_error, abs(coeffs.normalization - 0.5))
            pair = lowfreq_alpha_beta(coeffs, rng.uniform(0.5, 2.0), rng.uniform(0.0, 0.5))
            wronskian_error = max(wronskian_error, abs(pair.wronskian - 1.0))

        computed = {"mode_bank_drift": bank.worst_wronskian_drift, "lowfreq_wronskian": wronskian_error,
                    "normalization": norm_error}
        passed = bank.worst_wronskian_drift <= 1e-9 and wronskian_error <= 1e-12 and norm_error <= 1e-12
        return self.result(passed, computed, {"wronskian": 1.0, "normalization": 0.5},
                           {"mode_bank_drift": 1e-9, "lowfreq": 1e-12},
                           f"{len(bank.k_vectors)} lattice modes on a V0=0.5 run")


class WkbOrderCheck(VerifyCheck):
    order = 80

    def get_name(self) -> str:
        return "wkb_order"

    def get_anchor(self) -> str:
        return "|f_exact| = (2W)^-1/2 to second adiabatic order; deviation from (2 omega)^-1/2 scales as T^-2"

    def evaluate(self) -> CheckResult:
        slow_zeroth, slow_second = wkb_amplitude_errors(WKB_TIMESCALES[1])
        fast_zeroth, _ = wkb_amplitude_errors(WKB_TIMESCALES[0])
        ratio = fast_zeroth / slow_zeroth
        passed = slow_second <= 1e-3 and abs(ratio - 4.0) <= 0.6
        return self.result(passed, {"wkb_deviation": slow_second, "doubling_ratio": ratio},
                           {"wkb_deviation": 0.0, "doubling_ratio": 4.0},
                           {"wkb_deviation": 1e-3, "doubling_ratio": 0.6},
                           f"k={WKB_K:.4g}, m={WKB_MASS}, T in {WKB_TIMESCALES}")
