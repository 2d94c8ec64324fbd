"""
Adaptive quadrature with a tanh-sinh fallback.

Gauss-Kronrod (QUADPACK via scipy) does the work; when it reports trouble
(subdivision limit, roundoff, endpoint singularity) the integral is redone
with mpmath's tanh-sinh rule, which copes with endpoint singularities.
"""
import logging
import math
from typing import Callable

import mpmath
import numpy as np
from scipy import integrate

from curvedspec.config import QuadratureSpec
from curvedspec.errors import ConvergenceError

logger = logging.getLogger(__name__)


def adaptive_quad(f: Callable[[float], float], a: float, b: float, spec: QuadratureSpec) -> float:
    """Integrate a real function over [a, b] (b may be inf).

    Raises:
        ConvergenceError: if both QUADPACK and the tanh-sinh retry miss the tolerance.
    """
    result = integrate.quad(
        f,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    if len(result) == 3:
        return float(result[0])

    message = str(result[3]).strip().splitlines()[0] if len(result) > 3 else "unknown"
    logger.debug("⚠️ quad on [%g, %g] gave up (%s); retrying with tanh-sinh", a, b, message)
    return _tanh_sinh(f, a, b, spec)


def _tanh_sinh(f: Callable[[float], float], a: float, b: float, spec: QuadratureSpec) -> float:
    lo = -mpmath.inf if np.isneginf(a) else mpmath.mpf(a)
    hi = mpmath.inf if np.isposinf(b) else mpmath.mpf(b)
    value, error = mpmath.quad(lambda x: f(float(x)), [lo, hi], method="tanh-sinh", error=True)
    value, error = float(value), float(error)
    if not math.isfinite(value) or error > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise ConvergenceError(
            f"quadrature on [{a}, {b}] did not converge: estimate {value:.6g} +/- {error:.3g} "
            f"(rel_tol={spec.rel_tol}, max_subdivisions={spec.max_subdivisions})"
        )
    return value


def complex_quad(f: Callable[[float], complex], a: float, b: float, spec: QuadratureSpec) -> complex:
    """Real and imaginary parts integrated separately."""
    real = adaptive_quad(lambda x: f(x).real, a, b, spec)
    imag = adaptive_quad(lambda x: f(x).imag, a, b, spec)
    return complex(real, imag)
