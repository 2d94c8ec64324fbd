"""
Proton charge form factor on the hyperbolic plane
=================================================

Shapiro plane waves, the Fourier-Helgason double integral over the squared
ground state, its Hankel-transform reduction, the printed Bessel closed form
and an independent table-derived closed form. Adaptive quadrature is the
ground truth; closed forms are compared against it, never the other way round.

Q is in fm^-1 internally; FormFactorCurve carries the GeV conversion.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Literal, Optional, Sequence

import numpy as np
from scipy import optimize
from tqdm import tqdm

from curvedspec import config
from curvedspec.config import QuadratureSpec
from curvedspec.errors import DomainError, MissingOriginError, OverflowGuardError, UnboundStateError
from curvedspec.hyperbolic import PTIIConfig, bound_state_count, surface_normalization_constant
from curvedspec.quadrature import adaptive_quad, complex_quad
from curvedspec.rosenmorse import RMParams, rmt_formfactor
from curvedspec.specfun import I_OVERFLOW_GUARD, bessel

__all__ = [
    "QuadratureSpec",
    "FormFactorCurve",
    "shapiro",
    "shapiro_exponential",
    "angular_reduction",
    "fourier_helgason",
    "ff_exact",
    "ff_hankel",
    "ff_closed",
    "ff_reference_closed",
    "ff_closed_sign_change",
    "kernel_weight",
    "integrand_exact",
    "integrand_hankel",
    "normalize_curve",
    "ff_curve",
]

logger = logging.getLogger(__name__)

Method = Literal["exact_fh", "hankel", "closed_form", "rosen_morse", "reference"]
Angular = Literal["exact", "frozen", "linear"]
KernelStage = Literal["exact", "printed", "tanh_unit", "tanh_linear", "gaussian"]

# Gaussian moments of the s = 5/2 kernel e^(-3 rho^2/2)(1 + rho/2) rho
HANKEL_FIRST = 1.0 / 3.0
HANKEL_SECOND = math.sqrt(math.pi) / (8.0 * 1.5**1.5)
PRINTED_COEFFICIENT = math.sqrt(math.pi / 6.0) / 12.0


@dataclass(frozen=True, eq=False)
class FormFactorCurve:
    Q: np.ndarray  # fm^-1
    G: np.ndarray
    method: Method
    normalized: bool = False
    imag_diagnostic: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "Q", np.asarray(self.Q, dtype=float))
        object.__setattr__(self, "G", np.asarray(self.G, dtype=float))
        if self.Q.shape != self.G.shape:
            raise DomainError("Q and G must have equal length")
        if self.imag_diagnostic is not None:
            object.__setattr__(self, "imag_diagnostic", np.asarray(self.imag_diagnostic, dtype=float))
            if self.imag_diagnostic.shape != self.Q.shape:
                raise DomainError("imag_diagnostic must match Q")

    @property
    def Q_gev(self) -> np.ndarray:
        return self.Q * config.HBAR_C_GEV_FM

    def q4g(self) -> np.ndarray:
        """Q^4 G with Q in GeV."""
        return self.Q_gev**4 * self.G


# ============================================================
# Shapiro functions and the angular integral
# ============================================================

def shapiro(rho: float, phi: float, p: float, R: float) -> complex:
    """(cosh rho - cos phi sinh rho)^(-1/2 - i p R)."""
    base = math.cosh(rho) - math.cos(phi) * math.sinh(rho)
    return complex(base ** complex(-0.5, -p * R))


def shapiro_exponential(rho: float, phi: float, p: float, R: float) -> complex:
    """Leading small-rho form e^(rho cos phi / 2) e^(i rho p R cos phi)."""
    c = math.cos(phi)
    return math.exp(rho * c / 2) * complex(math.cos(rho * p * R * c), math.sin(rho * p * R * c))


def angular_reduction(x: float, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """(1/2 pi) int_0^(2 pi) e^(i x cos phi) dphi by quadrature; equals J0(x)."""
    value = complex_quad(lambda phi: complex(math.cos(x * math.cos(phi)), math.sin(x * math.cos(phi))), 0.0, 2 * math.pi, quad)
    return value.real / (2 * math.pi)


def _angular_part(rho: float, b: float, angular: Angular, part: Literal["real", "imag"], quad: QuadratureSpec) -> float:
    """int_(-pi)^(pi) A(rho, phi) e^(i b rho cos phi) dphi, real or imaginary part (even in phi)."""
    trig = math.cos if part == "real" else math.sin
    if angular == "exact":
        def integrand(phi):
            c = math.cos(phi)
            return math.exp(rho * c / 2) * trig(b * rho * c)
        return 2 * adaptive_quad(integrand, 0.0, math.pi, quad)
    prefactor = math.exp(rho / 2) if angular == "frozen" else 1.0 + rho / 2
    return 2 * prefactor * adaptive_quad(lambda phi: trig(b * rho * math.cos(phi)), 0.0, math.pi, quad)


def fourier_helgason(
    Q: float,
    R: float,
    radial: Callable[[float], float],
    angular: Angular,
    quad: QuadratureSpec,
    rho_max: Optional[float] = None,
) -> complex:
    """R^2 int_0^rho_max radial(rho) int_(-pi)^(pi) A(rho, phi) e^(i Q R rho cos phi) dphi drho.

    A is e^(rho cos phi / 2) (exact), e^(rho/2) (frozen) or 1 + rho/2 (linear).
    Nested adaptive quadrature, phi inner.
    """
    upper = quad.rho_max if rho_max is None else rho_max
    b = Q * R
    real = adaptive_quad(lambda r: radial(r) * _angular_part(r, b, angular, "real", quad), 0.0, upper, quad)
    imag = adaptive_quad(lambda r: radial(r) * _angular_part(r, b, angular, "imag", quad), 0.0, upper, quad)
    return R**2 * complex(real, imag)


# ============================================================
# Kernels
# ============================================================

def kernel_weight(rho, stage: KernelStage, cfg: Optional[PTIIConfig] = None):
    """Radial weight of the form-factor integral at each reduction stage.

    exact: tanh(rho) |psi_0|^2 / sinh(rho) = C^2 cosh^(-2s) sinh^(2m)
    printed: cosh^-4 sinh^2 (the s = 5/2 kernel as printed)
    tanh_unit: cosh^-3 sinh (tanh -> 1)
    tanh_linear: rho cosh^-3 sinh (tanh ~ rho)
    gaussian: rho e^(-3 rho^2 / 2) (cosh -> e^(rho^2/2), sinh -> rho on tanh_unit)
    """
    rho = np.asarray(rho, dtype=float)
    if stage == "exact":
        if cfg is None:
            raise DomainError("the exact kernel needs a PTIIConfig")
        log_weight = -2 * cfg.s * (np.logaddexp(rho, -rho) - math.log(2))
        if cfg.m > 0:
            with np.errstate(divide="ignore"):
                log_sinh = np.where(rho > 0, rho + np.log1p(-np.exp(-2 * rho)) - math.log(2), -np.inf)
            log_weight = log_weight + 2 * cfg.m * log_sinh
        value = surface_normalization_constant(cfg) ** 2 * np.exp(log_weight)
    elif stage == "printed":
        value = np.sinh(rho) ** 2 / np.cosh(rho) ** 4
    elif stage == "tanh_unit":
        value = np.sinh(rho) / np.cosh(rho) ** 3
    elif stage == "tanh_linear":
        value = rho * np.sinh(rho) / np.cosh(rho) ** 3
    elif stage == "gaussian":
        value = rho * np.exp(-1.5 * rho**2)
    else:
        raise DomainError(f"unknown kernel stage {stage!r}")
    return float(value) if np.ndim(value) == 0 else value


def _exact_cutoff(cfg: PTIIConfig, quad: QuadratureSpec) -> float:
    # |integrand| <= C^2 e^(-(2s - 2m - 1/2) rho) for large rho
    decay = 2 * cfg.s - 2 * cfg.m - 0.5
    return max(quad.rho_max, 35.0 / decay)


def ff_exact(Q: float, cfg: PTIIConfig, quad: QuadratureSpec = QuadratureSpec()) -> tuple[float, float]:
    """Fourier-Helgason transform of the squared normalized ground state.

    Returns:
        (G, |Im|): the real part and the magnitude of the imaginary residue
        left by the phi-asymmetric factor e^(rho cos phi / 2).
    """
    if bound_state_count(cfg) < 1:
        raise UnboundStateError(f"no bound ground state for m = {cfg.m}, s = {cfg.s:.6g}")
    value = fourier_helgason(
        Q, cfg.R, lambda r: kernel_weight(r, "exact", cfg), "exact", quad, rho_max=_exact_cutoff(cfg, quad)
    )
    return value.real, abs(value.imag)


def integrand_exact(rho: float, Q: float, cfg: PTIIConfig, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """rho-integrand of ff_exact (real part)."""
    return cfg.R**2 * kernel_weight(rho, "exact", cfg) * _angular_part(rho, Q * cfg.R, "exact", "real", quad)


def integrand_hankel(rho, Q: float, R: float):
    """R^2 e^(-3 rho^2/2) (1 + rho/2) rho J0(Q R rho)."""
    rho = np.asarray(rho, dtype=float)
    value = R**2 * np.exp(-1.5 * rho**2) * (1 + rho / 2) * rho * bessel("J0", Q * R * rho)
    return float(value) if np.ndim(value) == 0 else value


def ff_hankel(Q: float, R: float, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Hankel reduction of the s = 5/2 form factor by adaptive quadrature on [0, rho_max]."""
    return adaptive_quad(lambda r: integrand_hankel(r, Q, R), 0.0, quad.rho_max, quad)


# the exact phi integral yields 2 pi I0 where the Hankel form carries J0 alone
ANGULAR_MEASURE = 2 * math.pi


def origin_areas(cfg: PTIIConfig, quad: QuadratureSpec = QuadratureSpec()) -> tuple[float, float]:
    """Q = 0 areas of the exact and Hankel integrands on the J0 footing (exact / 2 pi)."""
    exact, _ = ff_exact(0.0, cfg, quad)
    return exact / ANGULAR_MEASURE, ff_hankel(0.0, cfg.R, quad)


def area_gap(exact_area: float, approx_area: float) -> float:
    """|exact - approx| / |approx|."""
    return abs(exact_area - approx_area) / abs(approx_area)


# ============================================================
# Closed forms
# ============================================================

def _bessel_argument(Q: float, R: float) -> float:
    arg = (Q * R) ** 2 / 12.0
    if arg > I_OVERFLOW_GUARD:
        raise OverflowGuardError(f"Q^2 R^2 / 12 = {arg:.6g} exceeds the overflow guard {I_OVERFLOW_GUARD}")
    return arg


def ff_closed(Q: float, R: float) -> float:
    """The printed Bessel closed form, evaluated as printed.

    (R^2/2) e^(-b^2/6) (1 - (1/12) sqrt(pi/6) [(b^2 - 6) I0(b^2/12) - b^2 I1(b^2/12)]), b = QR.
    """
    arg = _bessel_argument(Q, R)
    b2 = (Q * R) ** 2
    bracket = (b2 - 6) * bessel("I0", arg) - b2 * bessel("I1", arg)
    return R**2 / 2 * math.exp(-b2 / 6) * (1 - PRINTED_COEFFICIENT * bracket)


def ff_reference_closed(Q: float, R: float) -> float:
    """Closed form of the Hankel reduction from the standard table integrals.

    R^2 [(1/3) e^(-b^2/6) + c e^(-b^2/12)((1 - b^2/6) I0(b^2/12) + (b^2/6) I1(b^2/12))],
    c = sqrt(pi)/(8 (3/2)^(3/2)).
    """
    arg = _bessel_argument(Q, R)
    b2 = (Q * R) ** 2
    second = math.exp(-arg) * ((1 - b2 / 6) * bessel("I0", arg) + b2 / 6 * bessel("I1", arg))
    return R**2 * (HANKEL_FIRST * math.exp(-b2 / 6) + HANKEL_SECOND * second)


def ff_closed_sign_change(R: float) -> float:
    """Q* (fm^-1) beyond which the printed closed form turns negative, by bracketed root search."""

    def sign_factor(b: float) -> float:
        arg = b * b / 12.0
        return 1 - PRINTED_COEFFICIENT * ((b * b - 6) * bessel("I0", arg) - b * b * bessel("I1", arg))

    b_star = optimize.brentq(sign_factor, 1.0, 30.0, xtol=1e-12)
    return b_star / R


# ============================================================
# Curves
# ============================================================

def normalize_curve(curve: FormFactorCurve) -> FormFactorCurve:
    """Divide by G(0); the curve must contain a point with |Q| < 1e-6."""
    origin = np.flatnonzero(np.abs(curve.Q) < 1e-6)
    if origin.size == 0:
        raise MissingOriginError(f"{curve.method} curve has no Q = 0 point to normalize against")
    g0 = curve.G[origin[0]]
    if g0 == 0:
        raise MissingOriginError(f"{curve.method} curve vanishes at Q = 0")
    imag = None if curve.imag_diagnostic is None else curve.imag_diagnostic / abs(g0)
    return replace(curve, G=curve.G / g0, normalized=True, imag_diagnostic=imag)


def ff_curve(
    method: Method,
    Q_values: Sequence[float],
    R: float,
    quad: QuadratureSpec = QuadratureSpec(),
    cfg: Optional[PTIIConfig] = None,
    rm: Optional[RMParams] = None,
    progress: bool = False,
) -> FormFactorCurve:
    """Evaluate one method over a Q grid (fm^-1)."""
    Q_values = np.asarray(Q_values, dtype=float)
    imag = None
    points = tqdm(Q_values, desc=f"G(Q) [{method}]", disable=not progress, leave=False)
    if method == "hankel":
        G = [ff_hankel(Q, R, quad) for Q in points]
    elif method == "closed_form":
        G = [ff_closed(Q, R) for Q in points]
    elif method == "reference":
        G = [ff_reference_closed(Q, R) for Q in points]
    elif method == "rosen_morse":
        if rm is None:
            raise DomainError("rosen_morse curves need RMParams")
        G = [rmt_formfactor(Q, rm) for Q in points]
    elif method == "exact_fh":
        if cfg is None:
            raise DomainError("exact_fh curves need a PTIIConfig")
        pairs = [ff_exact(Q, cfg, quad) for Q in points]
        G = [g for g, _ in pairs]
        imag = [i for _, i in pairs]
    else:
        raise DomainError(f"unknown form-factor method {method!r}")
    logger.debug("✅ %s curve over %d Q points", method, len(Q_values))
    return FormFactorCurve(Q_values, np.asarray(G), method, False, imag)
