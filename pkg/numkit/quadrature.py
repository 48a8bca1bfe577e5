"""Adaptive Gauss-Kronrod quadrature over finite and improper intervals.

Improper intervals are mapped onto finite ones before handing them to
QUADPACK:

* full line      x = s*tan(theta),     theta in (-pi/2, pi/2)
* [a, inf)       x = a + s*u/(1 - u),  u in [0, 1)
* (-inf, b]      x = b - s*u/(1 - u),  u in [0, 1)

``s`` is a length scale (``QuadSpec.scale``) that should sit where the
integrand turns over, so the transformed integrand is smooth on the map.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

from .errors import NonConvergence

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-9
DEFAULT_ABS_TOL = 1e-13
DEFAULT_LIMIT = 200
# distance in the mapped variable within which a non-finite value counts as 0
ENDPOINT_BAND = 1e-6


@dataclass
class QuadSpec:
    integrand: Callable[[float], float]
    lower: float
    upper: float
    abs_tol: float = DEFAULT_ABS_TOL
    rel_tol: float = DEFAULT_REL_TOL
    scale: float = 1.0
    limit: int = DEFAULT_LIMIT

    def validate(self) -> None:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError(f"tolerances must be positive (abs={self.abs_tol}, rel={self.rel_tol})")
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("NaN integration bound")

    @property
    def kind(self) -> str:
        low_inf = math.isinf(self.lower)
        high_inf = math.isinf(self.upper)
        if low_inf and high_inf:
            return "full"
        if high_inf:
            return "upper"
        if low_inf:
            return "lower"
        return "finite"


def _endpoint_value(value: float, gap: float, x: float) -> float:
    if math.isfinite(value):
        return value
    if gap < ENDPOINT_BAND:
        return 0.0
    raise ValueError(f"integrand is not finite at x={x!r}")


def _transformed(spec: QuadSpec):
    """Return (g, lo, hi, sign) with int f = sign * int_lo^hi g."""
    f, s = spec.integrand, spec.scale
    kind = spec.kind

    if kind == "finite":
        return f, spec.lower, spec.upper, 1.0

    if kind == "full":
        if spec.lower > 0:      # (+inf, -inf)
            sign = -1.0
        else:
            sign = 1.0

        def g(theta):
            c = math.cos(theta)
            if c == 0.0:
                return 0.0
            x = s * math.tan(theta)
            return _endpoint_value(f(x) * s / (c * c), math.pi / 2 - abs(theta), x)
        return g, -math.pi / 2, math.pi / 2, sign

    if kind == "upper":
        a = spec.lower
        sign = 1.0 if spec.upper > 0 else -1.0   # [a, +inf) or [a, -inf)

        def g(u):
            if u >= 1.0:
                return 0.0
            w = 1.0 - u
            x = a + sign * s * u / w
            return _endpoint_value(f(x) * s / (w * w), w, x)
        return g, 0.0, 1.0, sign

    b = spec.upper
    sign = 1.0 if spec.lower < 0 else -1.0       # (-inf, b] or (+inf, b]

    def g(u):
        if u >= 1.0:
            return 0.0
        w = 1.0 - u
        x = b - sign * s * u / w
        return _endpoint_value(f(x) * s / (w * w), w, x)
    return g, 0.0, 1.0, sign


def quad_adaptive(spec: QuadSpec) -> float:
    """Integrate ``spec.integrand`` between ``spec.lower`` and ``spec.upper``.

    Returns the estimate when QUADPACK's error estimate satisfies
    ``err <= max(abs_tol, rel_tol*|result|)``; raises NonConvergence
    otherwise. A non-finite integrand is read as 0 only within
    ENDPOINT_BAND of a mapped infinite end; elsewhere it raises ValueError.
    """
    spec.validate()
    if spec.lower == spec.upper:
        return 0.0

    g, lo, hi, sign = _transformed(spec)
    output = quad(g, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                  limit=spec.limit, full_output=1)
    value, error = float(output[0]), float(output[1])
    value *= sign
    if not math.isfinite(value):
        raise ValueError(f"quadrature on {spec.kind} interval produced {value!r}")

    if len(output) > 3:
        budget = max(spec.abs_tol, spec.rel_tol * abs(value))
        if error > budget:
            logger.warning("Quadrature on %s interval did not converge: %s", spec.kind, output[3])
            raise NonConvergence("adaptive quadrature exhausted its subdivision budget", value, error)
        logger.debug("Quadrature reported '%s' but err=%g is within budget", output[3], error)

    return value
