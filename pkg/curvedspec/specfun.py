"""
Special functions behind the closed forms
=========================================

Generalized Laguerre polynomials, terminating 1F1/2F1 series, Jacobi
polynomials with arbitrary real parameters, associated Legendre functions
on the hyperbolic cut z >= 1, and the Bessel functions J0, I0, I1.

Polynomial families accept a scalar or a numpy array for x and return the
same shape.
"""
import math
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from curvedspec.errors import DomainError, OverflowGuardError

MAX_DEGREE = 60
BESSEL_SWITCH = 12.0  # series below, Miller backward recurrence above
I_OVERFLOW_GUARD = 700.0
_RESCALE_AT = 1e250

BesselKind = Literal["J0", "I0", "I1"]
HypKind = Literal["oneF1", "twoF1"]


def _out(values: np.ndarray):
    return float(values) if np.ndim(values) == 0 else values


def _check_degree(n: int) -> None:
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a non-negative integer, got {n}")
    if n > MAX_DEGREE:
        raise DomainError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")


def binom_general(r: float, j: int) -> float:
    """binom(r, j) for real r and integer j >= 0, as r(r-1)...(r-j+1)/j!."""
    result = 1.0
    for i in range(j):
        result *= (r - i) / (i + 1)
    return result


def pochhammer(a: float, k: int) -> float:
    result = 1.0
    for i in range(k):
        result *= a + i
    return result


# ============================================================
# Orthogonal polynomials
# ============================================================

def laguerre(n: int, alpha: float, x: ArrayLike):
    """L_n^alpha(x) by the three-term recurrence.

    Args:
        n: degree, 0 <= n <= 60
        alpha: order, must exceed -1
        x: evaluation point(s)
    """
    _check_degree(n)
    if alpha <= -1:
        raise DomainError(f"Laguerre order alpha must exceed -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    previous = np.ones_like(x)
    if n == 0:
        return _out(previous)
    current = 1.0 + alpha - x
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 + alpha - x) * current - (k + alpha) * previous) / (k + 1)
    return _out(current)


def _terminating_terms(n: int, b: float, c: float, x: np.ndarray, kind: HypKind) -> list[np.ndarray]:
    _check_degree(n)
    if kind not in ("oneF1", "twoF1"):
        raise DomainError(f"unknown hypergeometric kind {kind!r}")
    if float(c).is_integer() and -n + 1 <= c <= 0:
        raise DomainError(f"c = {c} is a non-positive integer hit before the series terminates (n = {n})")
    term = np.ones_like(x)
    terms = [term]
    for k in range(n):
        ratio = (-n + k) / ((c + k) * (k + 1))
        if kind == "twoF1":
            ratio *= b + k
        term = term * ratio * x
        terms.append(term)
    return terms


def hyp_terminating(n: int, b: float, c: float, x: ArrayLike, kind: HypKind):
    """1F1(-n; c; x) or 2F1(-n, b; c; x) as the exact (n+1)-term sum; b is ignored for oneF1."""
    x = np.asarray(x, dtype=float)
    return _out(np.sum(_terminating_terms(n, b, c, x, kind), axis=0))


def hyp_terminating_scale(n: int, b: float, c: float, x: ArrayLike, kind: HypKind):
    """Sum of |terms|: the cancellation scale against which series values are compared."""
    x = np.asarray(x, dtype=float)
    return _out(np.sum(np.abs(_terminating_terms(n, b, c, x, kind)), axis=0))


def jacobi(n: int, alpha: float, beta: float, x: ArrayLike):
    """P_n^(alpha, beta)(x) from the explicit sum

        sum_k binom(n+alpha, n-k) binom(n+beta, k) ((x-1)/2)^k ((x+1)/2)^(n-k)

    which stays valid for the negative, n-dependent parameters of the
    hyperbolic solutions (alpha = -l - 1/2).
    """
    _check_degree(n)
    x = np.asarray(x, dtype=float)
    lower = (x - 1.0) / 2.0
    upper = (x + 1.0) / 2.0
    total = np.zeros_like(x)
    for k in range(n + 1):
        total = total + binom_general(n + alpha, n - k) * binom_general(n + beta, k) * lower**k * upper ** (n - k)
    return _out(total)


def assoc_legendre_hyp(l: int, m: int, z: ArrayLike):
    """P_l^m(z) = (z^2 - 1)^(m/2) d^m P_l / dz^m for z >= 1, no Condon-Shortley sign.

    Upward recurrence in l, which is the dominant direction on z > 1.
    """
    _check_degree(l)
    if not 0 <= m <= l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")
    z = np.asarray(z, dtype=float)
    if np.any(z < 1.0):
        raise DomainError("associated Legendre functions are evaluated on the cut z >= 1 only")
    double_factorial = math.prod(range(1, 2 * m, 2))
    p_mm = double_factorial * (z * z - 1.0) ** (m / 2.0)
    if l == m:
        return _out(p_mm)
    p_next = z * (2 * m + 1) * p_mm
    for ll in range(m + 2, l + 1):
        p_mm, p_next = p_next, ((2 * ll - 1) * z * p_next - (ll + m - 1) * p_mm) / (ll - m)
    return _out(p_next)


def legendre_jacobi_constant(l: int, m: int) -> float:
    """C with P_l^m(cosh rho) = C * sinh^l(rho) * P_{l-m}^(a,a)(coth rho), a = -l - 1/2.

    Matches the leading z^l coefficients: (2l)!/(2^l (l!)^2) * l!/(l-m)! on
    the left, P_n^(a,a)(1) = binom(n+a, n) on the right.
    """
    n = l - m
    alpha = -l - 0.5
    leading = math.factorial(2 * l) / (2**l * math.factorial(l) ** 2) * math.factorial(l) / math.factorial(n)
    return leading / binom_general(n + alpha, n)


def legendre_via_jacobi(l: int, m: int, rho: ArrayLike, with_constant: bool = True):
    """Right-hand side of the Legendre-Jacobi identity at z = cosh(rho)."""
    rho = np.asarray(rho, dtype=float)
    alpha = -l - 0.5
    value = np.sinh(rho) ** (-alpha - 0.5) * jacobi(l - m, alpha, alpha, 1.0 / np.tanh(rho))
    if with_constant:
        value = legendre_jacobi_constant(l, m) * value
    return _out(value)


# ============================================================
# Bessel functions
# ============================================================

def bessel(kind: BesselKind, x: ArrayLike):
    """J0, I0 or I1 at real x.

    Power series for |x| < 12; Miller's backward recurrence above, normalized
    with J0 + 2*sum J_2k = 1 or I0 + 2*sum I_k = e^x.

    Raises:
        OverflowGuardError: |x| > 700 for I0, I1.
    """
    if kind not in ("J0", "I0", "I1"):
        raise DomainError(f"unknown Bessel kind {kind!r}")
    if np.ndim(x) == 0:
        return _bessel_scalar(kind, float(x))
    return np.vectorize(lambda v: _bessel_scalar(kind, v), otypes=[float])(np.asarray(x, dtype=float))


def _bessel_scalar(kind: BesselKind, x: float) -> float:
    ax = abs(x)
    if kind != "J0" and ax > I_OVERFLOW_GUARD:
        raise OverflowGuardError(f"{kind}({x}) exceeds the overflow guard |x| <= {I_OVERFLOW_GUARD}")
    if ax < BESSEL_SWITCH:
        value = _bessel_series(kind, ax)
    elif kind == "J0":
        value = _j0_miller(ax)
    else:
        value = _i_miller(kind, ax)
    return -value if kind == "I1" and x < 0 else value


def _bessel_series(kind: BesselKind, ax: float) -> float:
    quarter = ax * ax / 4.0
    q = -quarter if kind == "J0" else quarter
    term = 1.0 if kind != "I1" else ax / 2.0
    total = term
    k = 0
    while True:
        k += 1
        if kind == "I1":
            term *= q / (k * (k + 1))
        else:
            term *= q / (k * k)
        total += term
        if abs(term) < 1e-17 * abs(total) or term == 0.0:
            return total


def _miller_start(ax: float) -> int:
    return 2 * ((int(ax) + 30 + int(10 * ax ** (1 / 3))) // 2)


def _j0_miller(ax: float) -> float:
    top = _miller_start(ax)
    j_above, j_here = 0.0, 1e-30
    even_sum = j_here  # J_top, top is even
    for k in range(top, 0, -1):
        j_above, j_here = j_here, (2 * k / ax) * j_here - j_above
        if abs(j_here) > _RESCALE_AT:
            j_here /= _RESCALE_AT
            j_above /= _RESCALE_AT
            even_sum /= _RESCALE_AT
        if (k - 1) % 2 == 0 and k - 1 > 0:
            even_sum += j_here
    return j_here / (j_here + 2.0 * even_sum)


def _i_miller(kind: BesselKind, ax: float) -> float:
    top = _miller_start(ax)
    i_above, i_here = 0.0, 1e-30
    tail_sum = i_here
    i_one = 0.0
    for k in range(top, 0, -1):
        i_above, i_here = i_here, (2 * k / ax) * i_here + i_above
        if abs(i_here) > _RESCALE_AT:
            i_here /= _RESCALE_AT
            i_above /= _RESCALE_AT
            tail_sum /= _RESCALE_AT
            i_one /= _RESCALE_AT
        if k - 1 >= 1:
            tail_sum += i_here
        if k - 1 == 1:
            i_one = i_here
    scale = math.exp(ax) / (i_here + 2.0 * tail_sum)
    return (i_here if kind == "I0" else i_one) * scale
