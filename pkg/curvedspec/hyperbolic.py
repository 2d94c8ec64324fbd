"""
Hyperbolic plane, Eckart reduction and the Higgs oscillator
===========================================================

Points of the upper hyperboloid x1^2 + x2^2 - x0^2 = -R^2 are parametrized
by (rho, phi). Free motion reduces, after removing sqrt(sinh rho), to the
Eckart problem; the Higgs oscillator kappa^4 R^2 tanh^2(rho) reduces to the
second Poschl-Teller potential

    (1/R^2) [a(a-1)/sinh^2 rho - lambda(lambda+1)/cosh^2 rho] + lambda(lambda+1)/R^2 + 1/(4R^2)

with a = m + 1/2 and lambda(lambda+1) = s^2 - 1/4 (= kappa^4 R^4 when s is
derived from kappa and R). Grids here are in the dimensionless rho.
"""
import logging
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from curvedspec import config, discretize
from curvedspec.config import QuadratureSpec
from curvedspec.errors import DomainError
from curvedspec.models import ModelParams, QuantumNumbers, SampledWavefunction
from curvedspec.quadrature import adaptive_quad
from curvedspec.specfun import assoc_legendre_hyp, hyp_terminating, legendre_via_jacobi

logger = logging.getLogger(__name__)

WavefunctionForm = Literal["schrodinger", "surface"]


def _out(values: np.ndarray):
    return float(values) if np.ndim(values) == 0 else values


# ============================================================
# Geometry
# ============================================================

@dataclass(frozen=True)
class EmbeddedPoint:
    x0: float
    x1: float
    x2: float

    def constraint_residual(self, R: float) -> float:
        """|x1^2 + x2^2 - x0^2 + R^2| / R^2."""
        return abs(self.x1**2 + self.x2**2 - self.x0**2 + R**2) / R**2


def embed(rho: float, phi: float, R: float) -> EmbeddedPoint:
    return EmbeddedPoint(R * math.cosh(rho), R * math.sinh(rho) * math.cos(phi), R * math.sinh(rho) * math.sin(phi))


# ============================================================
# Free motion: Eckart reduction
# ============================================================

def eckart_potential(rho, m: int, R: float):
    """(1/R^2)[(m^2 - 1/4)/sinh^2 rho + 1/4]."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise DomainError("rho must be positive")
    return _out(((m**2 - 0.25) / np.sinh(rho) ** 2 + 0.25) / R**2)


def eckart_solution(n: int, m: int, rho, R: float):
    """Energy -l(l+1)/R^2 (l = n + m) and U = sinh^(1/2) rho * P_l^m(cosh rho)."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise DomainError("rho must be positive")
    l = n + m
    energy = -l * (l + 1) / R**2
    return energy, _out(np.sqrt(np.sinh(rho)) * assoc_legendre_hyp(l, m, np.cosh(rho)))


def eckart_jacobi_solution(n: int, m: int, rho):
    """sinh^(n+a) rho * P_n^(-n-a, -n-a)(coth rho) with a = m + 1/2 (no normalization constant)."""
    rho = np.asarray(rho, dtype=float)
    return _out(np.sqrt(np.sinh(rho)) * legendre_via_jacobi(n + m, m, rho, with_constant=False))


# ============================================================
# Higgs oscillator / Poschl-Teller II
# ============================================================

class PTIIConfig(BaseModel):
    """Parameters of the Poschl-Teller II reduction.

    lam is the negative root lambda = -1/2 - s; branch "minus" stores
    a = -m + 1/2, which leaves a(a-1) and hence the potential unchanged.
    """

    model_config = ConfigDict(frozen=True)

    a: float
    lam: float
    s: float = Field(gt=0.5)
    m: int = Field(ge=0)
    params: ModelParams
    branch: Literal["plus", "minus"] = "plus"
    s_convention: Literal["derived", "override"] = "derived"

    @model_validator(mode="after")
    def _consistent(self) -> "PTIIConfig":
        expected_a = self.m + 0.5 if self.branch == "plus" else -self.m + 0.5
        if abs(self.a - expected_a) > 1e-12:
            raise ValueError(f"a = {self.a} does not match branch {self.branch} for m = {self.m}")
        if abs(self.lam * (self.lam + 1) - (self.s**2 - 0.25)) > 1e-10 * max(1.0, self.s**2):
            raise ValueError("lambda(lambda+1) must equal s^2 - 1/4")
        if self.s_convention == "derived" and abs(self.s - self.params.s_derived) > 1e-10 * self.s:
            raise ValueError("derived s must equal sqrt(kappa^4 R^4 + 1/4)")
        return self

    @classmethod
    def from_params(
        cls,
        m: int,
        params: ModelParams,
        s_override: Optional[float] = None,
        branch: Literal["plus", "minus"] = "plus",
    ) -> "PTIIConfig":
        s = params.s_derived if s_override is None else float(s_override)
        return cls(
            a=m + 0.5 if branch == "plus" else -m + 0.5,
            lam=-0.5 - s,
            s=s,
            m=m,
            params=params,
            branch=branch,
            s_convention="derived" if s_override is None else "override",
        )

    @property
    def R(self) -> float:
        return self.params.R

    @property
    def strength(self) -> float:
        """lambda(lambda+1)/R^2, the saturation value kappa^4 R^2 of the Higgs potential."""
        return (self.s**2 - 0.25) / self.R**2

    @property
    def s_mismatch(self) -> float:
        """s minus sqrt(kappa^4 R^4 + 1/4); zero for the derived convention."""
        return self.s - self.params.s_derived


def s_from_params(params: ModelParams, adopted: float = config.ADOPTED_S) -> dict:
    """Both s conventions side by side: derived sqrt(kappa^4 R^4 + 1/4) and the adopted value."""
    derived = params.s_derived
    return {
        "s_derived": derived,
        "s_adopted": adopted,
        "difference": adopted - derived,
        "bound_states_m1_derived": QuantumNumbers(0, 1, derived).bound_state_count,
        "bound_states_m1_adopted": QuantumNumbers(0, 1, adopted).bound_state_count,
    }


def higgs_potential(rho, params: ModelParams):
    rho = np.asarray(rho, dtype=float)
    return _out(params.kappa**4 * params.R**2 * np.tanh(rho) ** 2)


def ptii_potential(rho, cfg: PTIIConfig):
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise DomainError("rho must be positive")
    R2 = cfg.R**2
    well = cfg.a * (cfg.a - 1) / np.sinh(rho) ** 2 - cfg.lam * (cfg.lam + 1) / np.cosh(rho) ** 2
    return _out(well / R2 + cfg.strength + 0.25 / R2)


def quantum_numbers(n: int, cfg: PTIIConfig) -> QuantumNumbers:
    return QuantumNumbers(n=n, m=cfg.m, s=cfg.s, branch=cfg.branch)


def bound_state_count(cfg: PTIIConfig) -> int:
    """Number of n >= 0 with n < (s - m - 1)/2."""
    return quantum_numbers(0, cfg).bound_state_count


def _require_bound(n: int, cfg: PTIIConfig) -> None:
    quantum_numbers(n, cfg).require_bound()


def ptii_energy(n: int, cfg: PTIIConfig) -> tuple[float, float]:
    """(eps_ptii, eps_higgs) = (-(s - m - 1 - 2n)^2 / R^2, eps_ptii + strength + 1/(4R^2))."""
    _require_bound(n, cfg)
    R2 = cfg.R**2
    eps_ptii = -((cfg.s - (0.5 + (cfg.m + 0.5) + 2 * n)) ** 2) / R2
    return eps_ptii, eps_ptii + cfg.strength + 0.25 / R2


def ptii_spectrum(
    cfg: PTIIConfig,
    n_levels: int = 1,
    grid_size: int = config.DEFAULT_GRID_SIZE,
    rho_max: float = config.PTII_RHO_MAX,
) -> np.ndarray:
    """Lowest eigenvalues of -(1/R^2) d^2/drho^2 + ptii_potential on (0, rho_max], Dirichlet ends."""
    h = rho_max / grid_size
    rho = h * np.arange(1, grid_size + 1)
    return discretize.dirichlet_spectrum(ptii_potential(rho, cfg), h, n_levels, kinetic_scale=1.0 / cfg.R**2)


def surface_normalization_constant(cfg: PTIIConfig) -> float:
    """sqrt(2 Gamma(s) / (Gamma(m+1) Gamma(s-m-1)))."""
    log_c2 = math.log(2) + math.lgamma(cfg.s) - math.lgamma(cfg.m + 1) - math.lgamma(cfg.s - cfg.m - 1)
    return math.exp(0.5 * log_c2)


def _log_cosh(rho: np.ndarray) -> np.ndarray:
    return np.logaddexp(rho, -rho) - math.log(2)


def _log_sinh(rho: np.ndarray) -> np.ndarray:
    return rho + np.log1p(-np.exp(-2 * rho)) - math.log(2)


def _schrodinger_unnormalized(n: int, cfg: PTIIConfig, rho: np.ndarray, second_parameter: float) -> np.ndarray:
    envelope = np.exp((0.5 - cfg.s) * _log_cosh(rho) + (cfg.m + 0.5) * _log_sinh(rho))
    polynomial = hyp_terminating(n, second_parameter, cfg.m + 1, -np.sinh(rho) ** 2, "twoF1")
    return envelope * polynomial


def _log_density(n: int, cfg: PTIIConfig, rho: float, beta: float) -> float:
    """log |psi|^2 of the unnormalized state; finite where the envelope alone would underflow."""
    r = np.asarray(rho, dtype=float)
    polynomial = hyp_terminating(n, beta, cfg.m + 1, -np.sinh(r) ** 2, "twoF1")
    with np.errstate(divide="ignore"):
        log_envelope = (0.5 - cfg.s) * _log_cosh(r) + (cfg.m + 0.5) * _log_sinh(r)
        return float(2 * log_envelope + 2 * np.log(np.abs(polynomial)))


def _excited_normalization(n: int, cfg: PTIIConfig, beta: float) -> float:
    decay = cfg.s - cfg.m - 1 - 2 * n
    # the degree-n polynomial in sinh^2 rho overflows beyond rho ~ 354/n
    cutoff = min(25.0 / decay + 5.0, 300.0 / n)
    spec = QuadratureSpec(max_subdivisions=500)
    norm_sq = adaptive_quad(lambda r: math.exp(_log_density(n, cfg, r, beta)), 0.0, cutoff, spec)
    return 1.0 / math.sqrt(norm_sq)


def ptii_wavefunction(
    n: int,
    cfg: PTIIConfig,
    grid,
    form: WavefunctionForm = "schrodinger",
) -> SampledWavefunction:
    """Bound state n of the Poschl-Teller II problem, unit-normalized.

    schrodinger: cosh^(1/2 - s) sinh^(m + 1/2) 2F1(-n, n + m + 1 - s; m + 1; -sinh^2 rho), measure drho.
    surface: schrodinger / sqrt(sinh rho), measure sinh(rho) drho.
    Ground states use the closed Gamma-function constant; excited states are
    normalized by quadrature.
    """
    _require_bound(n, cfg)
    if form not in ("schrodinger", "surface"):
        raise DomainError(f"unknown wavefunction form {form!r}")
    rho = np.asarray(grid, dtype=float)
    if np.any(rho <= 0):
        raise DomainError("rho grid must be positive")
    beta = n + cfg.m + 1 - cfg.s
    constant = surface_normalization_constant(cfg) if n == 0 else _excited_normalization(n, cfg, beta)
    values = constant * _schrodinger_unnormalized(n, cfg, rho, beta)
    if form == "surface":
        return SampledWavefunction(rho, values / np.sqrt(np.sinh(rho)), "hyperbolic_sinh_drho", True, f"psi_{n}{cfg.m} surface")
    return SampledWavefunction(rho, values, "hyperbolic_drho", True, f"psi_{n}{cfg.m}")


def ptii_wavefunction_printed(n: int, cfg: PTIIConfig, grid) -> SampledWavefunction:
    """Schrodinger form with the hypergeometric parameter as printed, -s - n + m + 1 (unnormalized).

    Coincides with ptii_wavefunction for n = 0 only.
    """
    _require_bound(n, cfg)
    rho = np.asarray(grid, dtype=float)
    values = _schrodinger_unnormalized(n, cfg, rho, -cfg.s - n + cfg.m + 1)
    return SampledWavefunction(rho, values, "hyperbolic_drho", False, f"psi_{n}{cfg.m} printed")
