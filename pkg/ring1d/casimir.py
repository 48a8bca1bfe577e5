"""Casimir energy of the massless ring and the regularized field energy."""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from numkit import QuadSpec, extrapolate_to_zero, quad_adaptive

from .adiabatic import RingKinematics

logger = logging.getLogger(__name__)

CASIMIR_COEFFICIENT = math.pi / 6.0
ANOMALY_COEFFICIENT = 1.0 / (24.0 * math.pi)

_CHUNK = 4096
_MAX_MODES = 50_000_000


def default_lambda_seq(L: float, count: int = 5) -> np.ndarray:
    """Cutoffs lambda_j = (L/4 pi) * 2^-j, so lambda*omega_1 runs 1/2, 1/4, ..."""
    spacing = 2.0 * math.pi / L
    return (0.5 / spacing) * 2.0 ** -np.arange(count)


def _regulated_mode_sum(lam: float, spacing: float) -> float:
    """sum_{n>=1} omega_n exp(-lam*omega_n) with omega_n = n*spacing.

    Chunks are added until a chunk's largest term falls below machine
    precision relative to the partial sum.
    """
    total = 0.0
    start = 1
    while start < _MAX_MODES:
        n = np.arange(start, start + _CHUNK, dtype=float)
        terms = spacing * n * np.exp(-lam * spacing * n)
        total += float(np.sum(terms))
        if terms[-1] < np.finfo(float).eps * abs(total) and terms[-1] <= terms[0]:
            return total
        start += _CHUNK
    logger.warning("Casimir mode sum hit the %d-mode cap at lambda=%s", _MAX_MODES, lam)
    return total


def _regulated_continuum(lam: float, L: float, rel_tol: float) -> float:
    """(L/2 pi) int_0^inf k exp(-lam*k) dk by improper quadrature."""
    spec = QuadSpec(lambda k: k * math.exp(-lam * k), 0.0, math.inf,
                    abs_tol=1e-300, rel_tol=rel_tol, scale=1.0 / lam)
    return L / (2.0 * math.pi) * quad_adaptive(spec)


def casimir_density_numeric(kin: RingKinematics, l: float,
                            lambda_seq: Optional[Sequence[float]] = None,
                            tol: float = 1e-6, rel_tol: float = 1e-12) -> float:
    """Cutoff-regularized Casimir density extrapolated to zero cutoff.

    For each cutoff the exponentially damped mode sum minus its continuum
    counterpart is divided by the ring length; the sequence is then
    extrapolated in lambda^2.
    """
    if l <= 0:
        raise ValueError(f"l must be positive, got {l}")
    L = kin.length(l)
    spacing = 2.0 * math.pi / L
    lambdas = default_lambda_seq(L) if lambda_seq is None else np.asarray(lambda_seq, dtype=float)
    if lambdas.size < 3:
        raise ValueError("need at least three cutoffs")
    if np.any(lambdas <= 0) or np.any(np.diff(lambdas) >= 0):
        raise ValueError("cutoffs must be positive and strictly decreasing")

    densities = []
    for lam in lambdas:
        difference = _regulated_mode_sum(lam, spacing) - _regulated_continuum(lam, L, rel_tol)
        densities.append(difference / L)
    logger.debug("Casimir densities for L=%s: %s", L, densities)
    return extrapolate_to_zero(lambdas, densities, power=2, tol=tol)


def casimir_density_closed(kin: RingKinematics, l: float) -> float:
    return -CASIMIR_COEFFICIENT / (kin.a * kin.a * l * l)


def casimir_energy(L: float) -> float:
    return -CASIMIR_COEFFICIENT / L


def anomaly_kinetic_energy(L: float, L_dot: float) -> float:
    """Trace-anomaly kinetic term -(1/24 pi) L_dot^2 / L."""
    return -ANOMALY_COEFFICIENT * L_dot * L_dot / L


def field_energy(L: float, L_dot: float) -> float:
    if L <= 0:
        raise ValueError(f"L must be positive, got {L}")
    return anomaly_kinetic_energy(L, L_dot) + casimir_energy(L)
