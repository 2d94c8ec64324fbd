"""
Contraction limits R -> infinity
================================

Comparisons between the hyperbolic model and the flat LFH oscillator at fixed
flat coordinate zeta = R * rho, and the shared Schrodinger-residual verifier.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from curvedspec import discretize
from curvedspec.errors import DomainError, GridTooSmallError
from curvedspec.formfactor import shapiro, shapiro_exponential
from curvedspec.hyperbolic import PTIIConfig, ptii_energy, ptii_wavefunction
from curvedspec.lfh import lfh_wavefunction
from curvedspec.models import ModelParams, SampledWavefunction
from curvedspec.specfun import hyp_terminating

logger = logging.getLogger(__name__)

MIN_INTERIOR_POINTS = 64


def schrodinger_residual(
    potential: Callable[[np.ndarray], np.ndarray],
    energy: float,
    psi: SampledWavefunction,
    length_scale: float = 1.0,
) -> float:
    """||(-d^2/dx^2 / L^2 + V - E) psi|| / ||psi|| on interior points.

    length_scale L maps a dimensionless grid (rho) onto lengths (r = L rho);
    leave it at 1 for grids already in fm.
    """
    if psi.grid.size - 4 < MIN_INTERIOR_POINTS:
        raise GridTooSmallError(
            f"residual needs >= {MIN_INTERIOR_POINTS} interior points, got {max(psi.grid.size - 4, 0)}"
        )
    h = discretize.uniform_step(psi.grid)
    x = psi.grid[2:-2]
    values = psi.values[2:-2]
    residual = -discretize.second_derivative_interior(psi.values, h) / length_scale**2 + (
        np.asarray(potential(x)) - energy
    ) * values
    return discretize.l2_norm(residual, x) / discretize.l2_norm(values, x)


def fit_power_law(x: Sequence[float], y: Sequence[float]) -> float:
    """Exponent p of y ~ x^p by least squares in log-log."""
    slope, _ = np.polyfit(np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float)), 1)
    return float(slope)


# ============================================================
# Energies
# ============================================================

def energy_contraction_error(n: int, m: int, params: ModelParams) -> float:
    """|eps_higgs + 2 kappa^2 (m+1) - 4 kappa^2 (n+m+1)| with s derived from (kappa, R)."""
    cfg = PTIIConfig.from_params(m, params)
    _, eps_higgs = ptii_energy(n, cfg)
    k2 = params.kappa**2
    return abs(eps_higgs + 2 * k2 * (m + 1) - 4 * k2 * (n + m + 1))


# ============================================================
# Wavefunctions
# ============================================================

def _check_zeta_grid(zeta_grid) -> np.ndarray:
    zeta = np.asarray(zeta_grid, dtype=float)
    if np.any(zeta <= 0) or np.any(zeta > 3.0):
        raise DomainError("zeta grid must lie within (0, 3 fm]")
    return zeta


def wavefunction_pair(
    n: int,
    m: int,
    params: ModelParams,
    zeta_grid,
    s_override: Optional[float] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(Psi_+^(n m)(zeta), psi_PTII(rho = zeta/R)) sampled on the same flat grid, unnormalized shapes."""
    zeta = np.asarray(zeta_grid, dtype=float)
    cfg = PTIIConfig.from_params(m, params, s_override)
    flat = lfh_wavefunction("plus", n, m, params, zeta).values
    curved = ptii_wavefunction(n, cfg, zeta / params.R, "schrodinger").values
    return flat, curved


def wavefunction_contraction_error(
    n: int,
    m: int,
    params: ModelParams,
    zeta_grid,
    s_override: Optional[float] = None,
) -> float:
    """L2 distance (dzeta) between the unit-normalized PTII and LFH states on the grid."""
    zeta = _check_zeta_grid(zeta_grid)
    flat, curved = wavefunction_pair(n, m, params, zeta, s_override)
    flat = flat / discretize.l2_norm(flat, zeta)
    curved = curved / discretize.l2_norm(curved, zeta)
    return discretize.l2_norm(flat - curved, zeta)


def unit_peak_difference(
    n: int,
    m: int,
    params: ModelParams,
    zeta_grid,
    s_override: Optional[float] = None,
) -> float:
    """max |flat/max(flat) - curved/max(curved)| over the grid."""
    zeta = _check_zeta_grid(zeta_grid)
    flat, curved = wavefunction_pair(n, m, params, zeta, s_override)
    return float(np.max(np.abs(flat / np.max(np.abs(flat)) - curved / np.max(np.abs(curved)))))


def cosh_gaussian_error(params: ModelParams, zeta_grid, s_override: Optional[float] = None) -> float:
    """sup |cosh^(-s)(zeta/R) - exp(-kappa^2 zeta^2 / 2)| over the grid."""
    zeta = np.asarray(zeta_grid, dtype=float)
    s = params.s_derived if s_override is None else s_override
    return float(np.max(np.abs(np.cosh(zeta / params.R) ** (-s) - np.exp(-((params.kappa * zeta) ** 2) / 2))))


def tanh_reduction(rho, mode: Literal["unit", "linear"]):
    """The two small-angle replacements of tanh(rho) used in the form-factor kernel: 1 or rho."""
    rho = np.asarray(rho, dtype=float)
    if mode == "unit":
        return np.ones_like(rho)
    if mode == "linear":
        return rho
    raise DomainError(f"unknown tanh reduction {mode!r}")


def hypergeom_limit_error(n: int, m: int, s: float, rho_grid) -> float:
    """sup |2F1(-n, -s+n+1; m+1; -sinh^2 rho) - 1F1(-n; m+1; s sinh^2 rho)| over the grid."""
    if s <= n + m + 1:
        raise DomainError(f"need s > n + m + 1, got s = {s} for n = {n}, m = {m}")
    u = np.sinh(np.asarray(rho_grid, dtype=float)) ** 2
    curved = hyp_terminating(n, -s + n + 1, m + 1, -u, "twoF1")
    flat = hyp_terminating(n, 0.0, m + 1, s * u, "oneF1")
    return float(np.max(np.abs(np.asarray(curved) - np.asarray(flat))))


# ============================================================
# Reports
# ============================================================

@dataclass
class ContractionReport:
    R_values: np.ndarray
    energy_errors: np.ndarray
    wavefunction_l2_errors: np.ndarray
    fitted_rate: float  # q in energy_error ~ R^-q
    intercept: float  # energy_error extrapolated to 1/R^2 -> 0

    def __post_init__(self):
        lengths = {len(self.R_values), len(self.energy_errors), len(self.wavefunction_l2_errors)}
        if len(lengths) != 1:
            raise DomainError("contraction report sequences must have equal length")
        if np.any(np.asarray(self.energy_errors) < 0) or np.any(np.asarray(self.wavefunction_l2_errors) < 0):
            raise DomainError("contraction errors must be non-negative")

    def rows(self) -> list[list[float]]:
        return [
            [float(R), float(e), float(w)]
            for R, e, w in zip(self.R_values, self.energy_errors, self.wavefunction_l2_errors)
        ]


def contraction_report(
    n: int,
    m: int,
    kappa: float,
    R_values: Sequence[float],
    zeta_grid: Optional[np.ndarray] = None,
) -> ContractionReport:
    R_values = np.asarray(R_values, dtype=float)
    zeta = np.linspace(0.01, 3.0, 600) if zeta_grid is None else zeta_grid
    energy = np.array([energy_contraction_error(n, m, ModelParams(kappa=kappa, R=R)) for R in R_values])
    waves = np.array([wavefunction_contraction_error(n, m, ModelParams(kappa=kappa, R=R), zeta) for R in R_values])
    rate = -fit_power_law(R_values, energy)
    _, intercept = np.polyfit(1.0 / R_values**2, energy, 1)
    return ContractionReport(R_values, energy, waves, rate, float(intercept))


@dataclass
class ShapiroLimitReport:
    R_values: np.ndarray
    power_form_errors: np.ndarray
    exponential_form_errors: np.ndarray

    def halving_ratios(self) -> np.ndarray:
        """error(R_k) / error(R_{k+1}); about 2 when R doubles."""
        return self.power_form_errors[:-1] / self.power_form_errors[1:]


def shapiro_limit_check(
    p: float,
    direction: float,
    R_sequence: Sequence[float],
    point: tuple[float, float],
) -> ShapiroLimitReport:
    """Distance between the Shapiro function at rho = zeta/R and the plane wave exp(i p zeta cos(theta)).

    Args:
        p: momentum (fm^-1)
        direction: polar angle of the momentum
        R_sequence: curvature radii (fm)
        point: (zeta, polar angle) of the evaluation point
    """
    zeta, angle = point
    phi = angle - direction
    plane_wave = np.exp(1j * p * zeta * np.cos(phi))
    R_values = np.asarray(R_sequence, dtype=float)
    power = np.array([abs(shapiro(zeta / R, phi, p, R) - plane_wave) for R in R_values])
    exponential = np.array([abs(shapiro_exponential(zeta / R, phi, p, R) - plane_wave) for R in R_values])
    return ShapiroLimitReport(R_values, power, exponential)
