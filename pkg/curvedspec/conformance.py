"""
Conformance suite
=================

Every module's invariants, run against one RunConfig. Each check returns a
CheckResult with status PASS, FAIL or DOCUMENTED. DOCUMENTED marks a
reproduced discrepancy in the source formulas; it still fails when the
measured value leaves its documented range.

Exit code: 2 if any check hit non-convergence, else 3 if any FAIL, else 0.
"""
import functools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Literal, Optional, Sequence

import numpy as np
from scipy import special
from tqdm import tqdm

from curvedspec import config, discretize
from curvedspec.config import RunConfig
from curvedspec.datasets import jsonable, parse_dataset
from curvedspec.errors import ConvergenceError, CurvedSpecError, DomainError, InvariantFailure, OverflowGuardError
from curvedspec.figures import fig1
from curvedspec.formfactor import (
    angular_reduction,
    area_gap,
    ff_closed,
    ff_closed_sign_change,
    ff_curve,
    ff_exact,
    ff_hankel,
    ff_reference_closed,
    fourier_helgason,
    kernel_weight,
    normalize_curve,
    origin_areas,
    shapiro,
    shapiro_exponential,
)
from curvedspec.hyperbolic import (
    PTIIConfig,
    bound_state_count,
    eckart_potential,
    eckart_solution,
    embed,
    ptii_energy,
    ptii_potential,
    ptii_spectrum,
    ptii_wavefunction,
    ptii_wavefunction_printed,
    s_from_params,
    surface_normalization_constant,
)
from curvedspec.lfh import (
    apply_ladder,
    conformal_commutator_check,
    lfh_energy_sq,
    lfh_spectrum,
    lfh_wavefunction,
    lfh_wavefunction_derivative,
    state_grid,
    susy_spectrum_check,
)
from curvedspec.limits import (
    contraction_report,
    cosh_gaussian_error,
    energy_contraction_error,
    fit_power_law,
    hypergeom_limit_error,
    schrodinger_residual,
    shapiro_limit_check,
    unit_peak_difference,
)
from curvedspec.models import ModelParams, SampledWavefunction
from curvedspec.quadrature import adaptive_quad
from curvedspec.rosenmorse import (
    RMParams,
    rmt_cornell_coeffs,
    rmt_cornell_flat,
    rmt_energy,
    rmt_formfactor,
    rmt_potential,
    rmt_spectrum,
)
from curvedspec.specfun import (
    assoc_legendre_hyp,
    bessel,
    binom_general,
    hyp_terminating,
    hyp_terminating_scale,
    jacobi,
    laguerre,
    legendre_jacobi_constant,
    legendre_via_jacobi,
)

logger = logging.getLogger(__name__)

Status = Literal["PASS", "FAIL", "DOCUMENTED"]


@dataclass
class CheckResult:
    name: str
    status: Status
    measured: dict = field(default_factory=dict)
    expected: str = ""
    detail: str = ""
    converged: bool = True

    def as_dict(self) -> dict:
        return jsonable(
            {
                "name": self.name,
                "status": self.status,
                "measured": self.measured,
                "expected": self.expected,
                "detail": self.detail,
                "converged": self.converged,
            }
        )


def _check(ok: bool, measured: dict, expected: str, detail: str = "") -> CheckResult:
    return CheckResult("", "PASS" if ok else "FAIL", measured, expected, detail)


def _finding(reproduced: bool, measured: dict, expected: str, detail: str) -> CheckResult:
    return CheckResult("", "DOCUMENTED" if reproduced else "FAIL", measured, expected, detail)


def _banded(value: float, claimed: float, band: tuple[float, float], measured: dict, expected: str, detail: str) -> CheckResult:
    """PASS below the claimed bound, DOCUMENTED inside the reproduced band, FAIL anywhere else."""
    if value < claimed:
        return CheckResult("", "PASS", measured, expected)
    low, high = band
    return _finding(low <= value <= high, measured, f"{expected}; reproduced band [{low:g}, {high:g}]", detail)


class SuiteContext:
    """Shared inputs and cached intermediate results for one suite run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.quad = cfg.quad
        self.params = ModelParams(kappa=cfg.kappa_per_fm, R=cfg.R_fm)
        self.nu = config.DEFAULT_NU
        self.rm = RMParams(b=cfg.rm_b, d=cfg.rm_d_fm)

    @functools.cached_property
    def ptii(self) -> PTIIConfig:
        return PTIIConfig.from_params(self.nu, self.params, self.cfg.effective_s(figure_mode=True))

    @functools.cached_property
    def susy(self):
        return susy_spectrum_check(3, self.nu, self.params, self.cfg.grid_size)

    @functools.cached_property
    def hankel_origin(self) -> float:
        return ff_hankel(0.0, self.params.R, self.quad)

    @functools.cached_property
    def origin_areas(self) -> tuple[float, float]:
        return origin_areas(self.ptii, self.quad)


_CHECKS: list[tuple[str, Callable[[SuiteContext], CheckResult]]] = []


def check(fn: Callable[[SuiteContext], CheckResult]):
    _CHECKS.append((fn.__name__.removeprefix("check_"), fn))
    return fn


def check_names() -> list[str]:
    return [name for name, _ in _CHECKS]


def _rel(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.maximum(np.abs(np.asarray(b)), 1e-300)))


# ============================================================
# Parameters
# ============================================================

@check
def check_parameter_consistency(ctx: SuiteContext) -> CheckResult:
    s = ModelParams(kappa=config.DEFAULT_KAPPA_PER_FM, R=config.DEFAULT_R_FM).s_derived
    return _check(abs(s - 2.478) < 0.005, {"s_derived": s}, "sqrt(kappa^4 R^4 + 1/4) = 2.478 +/- 0.005")


@check
def check_s_convention_mismatch(ctx: SuiteContext) -> CheckResult:
    both = s_from_params(ModelParams(kappa=config.DEFAULT_KAPPA_PER_FM, R=config.DEFAULT_R_FM))
    return _finding(
        abs(both["difference"]) > 1e-3,
        both,
        "adopted s = 5/2 differs from the derived value",
        "figures use s = 5/2; queries without s_override use the derived value",
    )


# ============================================================
# Special functions
# ============================================================

@check
def check_laguerre_vs_scipy(ctx: SuiteContext) -> CheckResult:
    x = np.linspace(0.0, 30.0, 61)
    worst = 0.0
    for n in range(13):
        for alpha in (0.0, 0.5, 1.0, 2.5, 4.0):
            scale = binom_general(n + alpha, n) * hyp_terminating_scale(n, 0.0, alpha + 1, x, "oneF1")
            error = np.abs(laguerre(n, alpha, x) - special.eval_genlaguerre(n, alpha, x)) / np.maximum(scale, 1.0)
            worst = max(worst, float(np.max(error)))
    return _check(worst < 1e-10, {"max_scaled_error": worst}, "< 1e-10 against scipy.special.eval_genlaguerre")


@check
def check_laguerre_hypergeometric_identity(ctx: SuiteContext) -> CheckResult:
    x = np.linspace(0.0, 30.0, 61)
    worst = 0.0
    for n in range(13):
        for alpha in (0.0, 0.5, 1.0, 2.5):
            b = binom_general(n + alpha, n)
            series = b * hyp_terminating(n, 0.0, alpha + 1, x, "oneF1")
            scale = abs(b) * hyp_terminating_scale(n, 0.0, alpha + 1, x, "oneF1")
            worst = max(worst, float(np.max(np.abs(laguerre(n, alpha, x) - series) / scale)))
    return _check(worst < 1e-11, {"max_scaled_error": worst}, "L_n^a = binom(n+a, n) 1F1(-n; a+1; x) within 1e-11")


@check
def check_jacobi_vs_scipy(ctx: SuiteContext) -> CheckResult:
    x = np.linspace(-1.0, 1.0, 41)
    worst = 0.0
    for n in range(9):
        for alpha, beta in ((0.0, 0.0), (0.5, 1.5), (1.5, 0.5), (2.0, 3.0)):
            reference = special.eval_jacobi(n, alpha, beta, x)
            worst = max(worst, float(np.max(np.abs(jacobi(n, alpha, beta, x) - reference) / np.maximum(np.abs(reference), 1.0))))
    return _check(worst < 1e-10, {"max_rel_error": worst}, "< 1e-10 against scipy.special.eval_jacobi")


@check
def check_legendre_hyperbolic_cut(ctx: SuiteContext) -> CheckResult:
    z = np.linspace(1.0, 3.0, 41)
    worst = 0.0
    for l in range(7):
        basis = np.polynomial.Legendre.basis(l)
        for m in range(l + 1):
            reference = (z * z - 1.0) ** (m / 2) * basis.deriv(m)(z) if m else basis(z)
            worst = max(worst, _rel(assoc_legendre_hyp(l, m, z)[1:], reference[1:]))
    return _check(worst < 1e-10, {"max_rel_error": worst}, "(z^2-1)^(m/2) d^m P_l/dz^m within 1e-10")


@check
def check_legendre_jacobi_identity(ctx: SuiteContext) -> CheckResult:
    rho = np.linspace(0.1, 3.0, 30)
    worst = 0.0
    for l, m in ((1, 0), (2, 0), (2, 1), (2, 2), (3, 1), (4, 2)):
        worst = max(worst, _rel(legendre_via_jacobi(l, m, rho), assoc_legendre_hyp(l, m, np.cosh(rho))))
    return _check(worst < 1e-10, {"max_rel_error": worst}, "identity holds with the (l, m) constant")


@check
def check_legendre_jacobi_constant(ctx: SuiteContext) -> CheckResult:
    constants = {f"l={l},m={m}": legendre_jacobi_constant(l, m) for l, m in ((1, 0), (2, 2), (2, 0))}
    expected = {"l=1,m=0": -2.0, "l=2,m=2": 3.0, "l=2,m=0": 4.0}
    reproduced = all(abs(constants[k] - v) < 1e-12 for k, v in expected.items())
    return _finding(
        reproduced,
        constants,
        "-2, 3, 4",
        "the Legendre-Jacobi identity is stated without its l, m dependent constant",
    )


@check
def check_bessel_vs_scipy(ctx: SuiteContext) -> CheckResult:
    x = np.concatenate([np.linspace(0.0, 12.0, 49), np.linspace(12.5, 100.0, 36)])
    j0_error = float(np.max(np.abs(bessel("J0", x) - special.j0(x))))
    i0_error = _rel(bessel("I0", x), special.i0(x))
    i1_error = _rel(bessel("I1", x[1:]), special.i1(x[1:]))
    ok = j0_error < 1e-10 and i0_error < 1e-10 and i1_error < 1e-10
    return _check(ok, {"J0_abs": j0_error, "I0_rel": i0_error, "I1_rel": i1_error}, "< 1e-10")


@check
def check_i0_derivative_is_i1(ctx: SuiteContext) -> CheckResult:
    x = np.linspace(0.5, 20.0, 40)
    h = 1e-3
    derivative = (bessel("I0", x - 2 * h) - 8 * bessel("I0", x - h) + 8 * bessel("I0", x + h) - bessel("I0", x + 2 * h)) / (12 * h)
    error = _rel(derivative, bessel("I1", x))
    return _check(error < 1e-7, {"max_rel_error": error}, "I0' = I1 within 1e-7 relative on [0.5, 20] (5-point central difference)")


@check
def check_j0_bessel_equation(ctx: SuiteContext) -> CheckResult:
    h = 0.05
    x = np.arange(0.5, 30.0 + h / 2, h)
    y = bessel("J0", x)
    d2 = (2 * y[:-6] - 27 * y[1:-5] + 270 * y[2:-4] - 490 * y[3:-3] + 270 * y[4:-2] - 27 * y[5:-1] + 2 * y[6:]) / (180 * h * h)
    d1 = (-y[:-6] + 9 * y[1:-5] - 45 * y[2:-4] + 45 * y[4:-2] - 9 * y[5:-1] + y[6:]) / (60 * h)
    inner = x[3:-3]
    residual = float(np.max(np.abs(d2 + d1 / inner + y[3:-3])))
    return _check(residual < 1e-7, {"max_residual": residual}, "y'' + y'/x + y = 0 within 1e-7 (7-point stencil)")


@check
def check_angular_reduction(ctx: SuiteContext) -> CheckResult:
    points = (0.0, 1.0, 2.4048, 5.0, 10.0)
    errors = {f"x={x:g}": abs(angular_reduction(x, ctx.quad) - bessel("J0", x)) for x in points}
    return _check(max(errors.values()) < 1e-8, errors, "(1/2pi) int e^(ix cos phi) = J0(x) within 1e-8")


# ============================================================
# LFH
# ============================================================

@check
def check_lfh_spectrum(ctx: SuiteContext) -> CheckResult:
    errors = {}
    for nu in (1, 2, 3):
        levels = lfh_spectrum(nu, ctx.params, 4, ctx.cfg.grid_size)
        expected = np.array([lfh_energy_sq(n, nu, ctx.params) for n in range(4)])
        errors[f"nu={nu}"] = _rel(levels, expected)
    return _check(max(errors.values()) < 1e-3, errors, "4 kappa^2 (n + nu + 1) within 0.1%")


@check
def check_lfh_normalization(ctx: SuiteContext) -> CheckResult:
    zeta = np.linspace(0.0, config.LFH_BOX_KAPPA_UNITS / ctx.params.kappa, 24001)[1:]
    defects = {
        f"n={n}": lfh_wavefunction("plus", n, ctx.nu, ctx.params, zeta).norm_defect() for n in range(4)
    }
    return _check(max(defects.values()) < 1e-8, defects, "|<Psi|Psi> - 1| < 1e-8")


@check
def check_lfh_annihilation(ctx: SuiteContext) -> CheckResult:
    zeta = state_grid(ctx.params, 4001)
    ground = lfh_wavefunction("plus", 0, ctx.nu, ctx.params, zeta)
    derivative = lfh_wavefunction_derivative("plus", 0, ctx.nu, ctx.params, zeta)
    image = apply_ladder("A", ground, ctx.nu, ctx.params, derivative)
    ratio = image.norm() / ground.norm()
    return _check(ratio < 1e-6, {"norm_ratio": ratio}, "||A Psi_+^(0 nu)|| / ||Psi|| < 1e-6")


@check
def check_ladder_b_intertwining(ctx: SuiteContext) -> CheckResult:
    zeta = state_grid(ctx.params, 4001)
    measured = {}
    ok = True
    for n in range(3):
        lower = lfh_wavefunction("minus", n, ctx.nu, ctx.params, zeta)
        derivative = lfh_wavefunction_derivative("minus", n, ctx.nu, ctx.params, zeta)
        image = apply_ladder("Bdag", lower, ctx.nu, ctx.params, derivative).values
        upper = lfh_wavefunction("plus", n, ctx.nu, ctx.params, zeta).values
        amplitude = discretize.inner(upper, image, zeta) / discretize.inner(upper, upper, zeta)
        residual = discretize.l2_norm(image - amplitude * upper, zeta) / discretize.l2_norm(image, zeta)
        energy = math.sqrt(lfh_energy_sq(n, ctx.nu, ctx.params))
        amplitude_error = abs(abs(amplitude) - energy) / energy
        measured[f"n={n}"] = {"amplitude": amplitude, "E": energy, "residual": residual}
        ok = ok and residual < 1e-6 and amplitude_error < 1e-6
    return _check(ok, measured, "B+ Psi_-^(n, nu+1) = -E Psi_+^(n nu)", "sign follows the positive-at-origin convention")


@check
def check_susy_partner_spectra(ctx: SuiteContext) -> CheckResult:
    report = ctx.susy
    partner = float(np.max(report.partner_rel_errors))
    ok = partner < 1e-3 and report.nilpotency_residual < 1e-10
    return _check(
        ok,
        {"max_partner_rel_error": partner, "nilpotency_residual": report.nilpotency_residual,
         "ground_abs_error_kappa2": report.ground_abs_error},
        "H+ level n+1 = H- level n within 1e-3; Q^2 residual < 1e-10",
    )


@check
def check_susy_anticommutator(ctx: SuiteContext) -> CheckResult:
    error = ctx.susy.anticommutator_rel_error
    return _check(error < 1e-4, {"rel_error": error}, "{Q, Q+} doublet eigenvalue 4 kappa^2 within 1e-4")


def _conformal(ctx: SuiteContext):
    zeta = state_grid(ctx.params, 4001, start=0.2)
    states = [lfh_wavefunction("plus", n, ctx.nu, ctx.params, zeta) for n in range(3)]
    energies = [lfh_energy_sq(n, ctx.nu, ctx.params) for n in range(3)]
    return conformal_commutator_check(ctx.params, states, ctx.nu, energies)


@check
def check_conformal_algebra(ctx: SuiteContext) -> CheckResult:
    report = _conformal(ctx)
    worst = max(report.plus_minus_errors + report.d0_plus_errors + report.d0_minus_errors)
    return _check(worst < 1e-4, report.as_dict(), "so(2,1) commutators within 1e-4 relative L2")


@check
def check_shifted_hamiltonian(ctx: SuiteContext) -> CheckResult:
    report = _conformal(ctx)
    target = -2 * (ctx.nu + 1)
    offset_error = max(abs(o - target) for o in report.hamiltonian_offsets)
    return _finding(
        max(report.hamiltonian_errors) < 1e-4 and offset_error < 1e-3,
        {"offsets_kappa2": report.hamiltonian_offsets, "relation_errors": report.hamiltonian_errors},
        f"2(J+ + kappa^4 J-) = H+ - c+, offset {target} kappa^2",
        "H+ + 2c+ written with a single c+ is consistent once W^2 - W' carries -c+; "
        "the Hamiltonian in so(2,1) form needs +c+ added back",
    )


# ============================================================
# Hyperbolic
# ============================================================

@check
def check_ptii_ground_energy(ctx: SuiteContext) -> CheckResult:
    level = float(ptii_spectrum(ctx.ptii, 1, ctx.cfg.grid_size)[0])
    _, expected = ptii_energy(0, ctx.ptii)
    error = abs(level - expected) / abs(expected)
    return _check(error < 5e-3, {"discretized": level, "eps_higgs": expected, "rel_error": error}, "within 0.5%")


@check
def check_ptii_excited_states(ctx: SuiteContext) -> CheckResult:
    cfg = PTIIConfig.from_params(1, ctx.params, 10.6)
    levels = ptii_spectrum(cfg, 3, ctx.cfg.grid_size)
    expected = np.array([ptii_energy(n, cfg)[1] for n in range(3)])
    error = _rel(levels, expected)
    return _check(error < 5e-3, {"discretized": levels, "eps_higgs": expected, "rel_error": error}, "3 states at s = 10.6 within 0.5%")


@check
def check_bound_state_count(ctx: SuiteContext) -> CheckResult:
    adopted = bound_state_count(PTIIConfig.from_params(1, ctx.params, config.ADOPTED_S))
    wide = bound_state_count(PTIIConfig.from_params(1, ctx.params, 10.6))
    return _check(adopted == 1 and wide == 5, {"s=2.5,m=1": adopted, "s=10.6,m=1": wide}, "1 and 5")


@check
def check_ptii_normalization(ctx: SuiteContext) -> CheckResult:
    cfg = ctx.ptii
    decay = 2 * (cfg.s - cfg.m - 1)
    norm = adaptive_quad(
        lambda r: kernel_weight(r, "exact", cfg) * math.cosh(r) * math.sinh(r), 0.0, 60.0 / decay, ctx.quad
    )
    return _check(abs(norm - 1) < 1e-8, {"norm": norm}, "int |psi_0|^2 sinh(rho) drho = 1 within 1e-8")


def _ptii_residual(n: int, cfg: PTIIConfig, printed: bool) -> float:
    rho = np.linspace(0.05, 6.0, 4001)
    psi = ptii_wavefunction_printed(n, cfg, rho) if printed else ptii_wavefunction(n, cfg, rho)
    _, energy = ptii_energy(n, cfg)
    residual = schrodinger_residual(lambda r: ptii_potential(r, cfg), energy, psi, cfg.R)
    return residual / abs(energy)


@check
def check_ptii_schrodinger_residual(ctx: SuiteContext) -> CheckResult:
    cfg = PTIIConfig.from_params(1, ctx.params, 10.6)
    residuals = {f"n={n}": _ptii_residual(n, cfg, printed=False) for n in range(3)}
    return _check(max(residuals.values()) < 1e-5, residuals, "relative residual < 1e-5")


@check
def check_ptii_printed_parameter(ctx: SuiteContext) -> CheckResult:
    cfg = PTIIConfig.from_params(1, ctx.params, 10.6)
    printed = _ptii_residual(1, cfg, printed=True)
    corrected = _ptii_residual(1, cfg, printed=False)
    return _finding(
        printed > 1e-3 and corrected < 1e-5,
        {"printed_residual": printed, "corrected_residual": corrected},
        "2F1(-n, n + m + 1 - s; m + 1; -sinh^2) solves the equation; the printed -s - n + m + 1 does not for n >= 1",
        "both agree for n = 0",
    )


@check
def check_eckart_free_motion(ctx: SuiteContext) -> CheckResult:
    R = ctx.params.R
    rho = np.linspace(0.2, 4.0, 4001)
    residuals = {}
    for n, m in ((0, 1), (1, 1), (2, 0), (1, 2)):
        energy, values = eckart_solution(n, m, rho, R)
        psi = SampledWavefunction(rho, values, "hyperbolic_drho")
        scale = ((n + m) * (n + m + 1) + 1) / R**2
        residuals[f"n={n},m={m}"] = schrodinger_residual(lambda r: eckart_potential(r, m, R), energy, psi, R) / scale
    return _check(max(residuals.values()) < 1e-6, residuals, "sqrt(sinh) P_l^m(cosh) solves the Eckart equation")


@check
def check_embedding_constraint(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(7)
    worst = 0.0
    for R in (ctx.params.R, 20.0):
        for rho, phi in zip(rng.uniform(0, 3, 50), rng.uniform(0, 2 * math.pi, 50)):
            worst = max(worst, embed(rho, phi, R).constraint_residual(R))
    return _check(worst < 1e-12, {"max_residual": worst}, "x1^2 + x2^2 - x0^2 = -R^2")


# ============================================================
# Limits
# ============================================================

@check
def check_energy_contraction_rate(ctx: SuiteContext) -> CheckResult:
    ratio = energy_contraction_error(0, 1, ModelParams(kappa=1.0, R=20.0)) / energy_contraction_error(
        0, 1, ModelParams(kappa=1.0, R=40.0)
    )
    return _check(3.5 <= ratio <= 4.5, {"error_ratio": ratio}, "error(R)/error(2R) in [3.5, 4.5]")


@check
def check_wavefunction_contraction(ctx: SuiteContext) -> CheckResult:
    report = contraction_report(0, 1, 1.0, [5.0, 10.0, 20.0, 40.0])
    decreasing = bool(np.all(np.diff(report.wavefunction_l2_errors) < 0))
    ok = decreasing and 1.8 <= report.fitted_rate <= 2.2
    return _check(
        ok,
        {"rows": report.rows(), "fitted_rate": report.fitted_rate, "intercept": report.intercept},
        "L2 errors decrease; energy error ~ R^-2",
    )


@check
def check_unit_peak_difference(ctx: SuiteContext) -> CheckResult:
    zeta = np.arange(1, 301) * 0.005
    params = ModelParams(kappa=config.DEFAULT_KAPPA_PER_FM, R=config.DEFAULT_R_FM)
    difference = unit_peak_difference(0, 1, params, zeta, config.ADOPTED_S)
    dataset = fig1(ctx.cfg)
    grid = dataset.column("zeta_fm")
    peaks = {
        "psi_lfh": float(grid[np.argmax(dataset.column("psi_lfh"))]),
        "psi_ptii": float(grid[np.argmax(dataset.column("psi_ptii"))]),
    }
    return _banded(
        difference,
        0.1,
        (0.6, 0.95),
        {"max_unit_peak_difference": difference, "peak_zeta_fm": peaks},
        "claimed < 0.1 on zeta in [0, 1.5] fm",
        "the curves peak at different zeta; the near-coincidence is not reproduced",
    )


@check
def check_cosh_gaussian(ctx: SuiteContext) -> CheckResult:
    zeta = np.linspace(0.01, 3.0, 300)
    errors = {f"R={R:g}": cosh_gaussian_error(ModelParams(kappa=1.0, R=R), zeta) for R in (10.0, 20.0, 40.0)}
    ratio = errors["R=20"] / errors["R=40"]
    return _check(ratio > 3.0, {**errors, "ratio_20_40": ratio}, "cosh^-s -> Gaussian with O(R^-2) error")


@check
def check_hypergeometric_limit(ctx: SuiteContext) -> CheckResult:
    t = np.linspace(0.1, 5.0, 50)
    s_values = [100.0, 200.0, 400.0, 800.0]
    errors = [hypergeom_limit_error(2, 1, s, np.arcsinh(np.sqrt(t / s))) for s in s_values]
    exponent = -fit_power_law(s_values, errors)
    return _check(0.8 <= exponent <= 1.2, {"errors": errors, "exponent": exponent}, "error ~ 1/s")


@check
def check_shapiro_limit(ctx: SuiteContext) -> CheckResult:
    report = shapiro_limit_check(2.0, 0.3, [10.0, 20.0, 40.0, 80.0, 160.0], (0.8, 1.1))
    ratios = report.halving_ratios()
    return _check(
        bool(np.all((ratios > 1.7) & (ratios < 2.3))),
        {"power_form_errors": report.power_form_errors, "halving_ratios": ratios},
        "Shapiro function -> plane wave with O(1/R) error",
    )


@check
def check_shapiro_forms(ctx: SuiteContext) -> CheckResult:
    on_axis = abs(shapiro(0.5, 0.0, 2.0, 1.0) - shapiro_exponential(0.5, 0.0, 2.0, 1.0))
    transverse = shapiro(0.5, math.pi / 2, 2.0, 1.0)
    off_axis = abs(transverse - shapiro_exponential(0.5, math.pi / 2, 2.0, 1.0)) / abs(transverse)
    return _check(
        on_axis < 1e-12,
        {"phi=0_abs_difference": on_axis, "phi=pi/2_rel_difference": off_axis},
        "power and exponential forms coincide at phi = 0",
        "they separate away from the axis",
    )


# ============================================================
# Form factor
# ============================================================

@check
def check_hankel_vs_reference(ctx: SuiteContext) -> CheckResult:
    R = ctx.params.R
    g0 = ctx.hankel_origin
    worst = max(
        abs(ff_hankel(b / R, R, ctx.quad) - ff_reference_closed(b / R, R)) / g0 for b in np.linspace(0.0, 10.0, 41)
    )
    return _check(worst < 1e-6, {"max_rel_error": worst}, "quadrature anchor within 1e-6 (relative to G(0)) for QR in [0, 10]")


@check
def check_quadrature_halving(ctx: SuiteContext) -> CheckResult:
    R = ctx.params.R
    g0 = ctx.hankel_origin
    halved = ctx.quad.halved()
    worst = max(abs(ff_hankel(b / R, R, ctx.quad) - ff_hankel(b / R, R, halved)) / g0 for b in (0.0, 2.0, 5.0, 8.0))
    return _check(worst < 1e-8, {"max_change": worst}, "halving tolerances changes G by < 1e-8")


@check
def check_pipeline_consistency(ctx: SuiteContext) -> CheckResult:
    R = ctx.params.R
    g0 = ctx.hankel_origin
    worst = 0.0
    for b in (0.0, 1.5, 4.0):
        generic = fourier_helgason(b / R, R, lambda r: kernel_weight(r, "gaussian"), "linear", ctx.quad).real / (2 * math.pi)
        worst = max(worst, abs(generic - ff_hankel(b / R, R, ctx.quad)) / g0)
    return _check(worst < 1e-8, {"max_rel_error": worst}, "2D Fourier-Helgason with the reduced kernel = Hankel form")


@check
def check_ratio_closed_over_hankel_at_Q0(ctx: SuiteContext) -> CheckResult:
    ratio = ff_closed(0.0, ctx.params.R) / ctx.hankel_origin
    return _finding(
        abs(ratio - 1.5) < 1e-6,
        {"ratio_closed_over_hankel_at_Q0": ratio},
        "1.5 +/- 1e-6",
        "the printed closed form carries an extra factor 3/2 at Q = 0",
    )


@check
def check_closed_form_exponent_mismatch(ctx: SuiteContext) -> CheckResult:
    R = ctx.params.R
    Q = 4.0 / R
    printed = ff_closed(Q, R) / ff_closed(0.0, R)
    table = ff_reference_closed(Q, R) / ff_reference_closed(0.0, R)
    divergence = abs(printed - table) / abs(table)
    return _finding(
        divergence > 0.05,
        {"normalized_printed": printed, "normalized_reference": table, "divergence": divergence},
        "> 5% at QR = 4",
        "second term printed with e^(-b^2/6) where the table integrals give e^(-b^2/12)",
    )


@check
def check_closed_form_sign_change(ctx: SuiteContext) -> CheckResult:
    Q_star = ff_closed_sign_change(ctx.params.R)
    b_star = Q_star * ctx.params.R
    return _finding(
        6.0 < b_star < 10.0,
        {"Q_star_fm": Q_star, "Q_star_GeV": Q_star * config.HBAR_C_GEV_FM, "QR_star": b_star},
        "printed closed form turns negative near QR = 8.2",
        "the Hankel reduction it claims to equal stays bounded and decays",
    )


@check
def check_reference_large_Q(ctx: SuiteContext) -> CheckResult:
    R = ctx.params.R
    b = np.linspace(20.0, 40.0, 11)
    Q = b / R
    q4g = np.abs(Q**4 * np.array([ff_reference_closed(q, R) for q in Q]))
    exponent = fit_power_law(Q, q4g)
    return _finding(
        0.8 <= exponent <= 1.2,
        {"Q4G_exponent": exponent},
        "Q^4 G grows ~ Q",
        "the s = 5/2 Gaussian-reduced kernel falls as Q^-3, not Q^-4",
    )


@check
def check_exact_imaginary_part(ctx: SuiteContext) -> CheckResult:
    origin_real, origin_imag = ff_exact(0.0, ctx.ptii, ctx.quad)
    ratios = {}
    for Q in (0.5, 2.0, 5.0, 10.0, 15.0):
        real, imag = ff_exact(Q, ctx.ptii, ctx.quad)
        ratios[f"Q={Q:g}"] = imag / abs(real)
    worst = max(ratios.values())
    measured = {"imag_over_abs_G": ratios, "imag_at_origin": origin_imag}
    if origin_imag > 1e-12 * abs(origin_real):
        return _check(False, measured, "no imaginary part at Q = 0")
    return _banded(
        worst,
        1e-3,
        (0.05, 2.0),
        measured,
        "claimed imag/|G| < 1e-3 for Q in [0, 15] fm^-1",
        "e^(rho cos phi / 2) is not symmetric under phi -> phi + pi, so the transform keeps an imaginary part",
    )


@check
def check_fig4_areas(ctx: SuiteContext) -> CheckResult:
    exact, approx = ctx.origin_areas
    gap = area_gap(exact, approx)
    return _banded(
        gap,
        0.1,
        (0.2, 0.4),
        {"area_exact_over_2pi": exact, "area_approx": approx, "relative_gap": gap},
        "Q = 0 area difference < 10% of the Hankel area",
        "with the exact angular integral divided by 2 pi the exact Q = 0 area stays about 30% below the Hankel one",
    )


def _stage_area(stage: str, cfg: PTIIConfig, upper: float) -> float:
    """Closed-form area of kernel_weight on [0, upper]."""
    t = math.tanh(upper)
    if stage == "exact":
        p, q = cfg.m + 0.5, cfg.s - cfg.m
        return surface_normalization_constant(cfg) ** 2 * special.beta(p, q) * special.betainc(p, q, t * t) / 2
    if stage == "printed":
        return t**3 / 3
    if stage == "tanh_unit":
        return t**2 / 2
    if stage == "tanh_linear":
        return (t - upper * (1 - t * t)) / 2
    return -math.expm1(-1.5 * upper**2) / 3


@check
def check_kernel_stages(ctx: SuiteContext) -> CheckResult:
    upper = ctx.quad.rho_max
    stages = ("exact", "printed", "tanh_unit", "tanh_linear", "gaussian")
    areas = {
        stage: adaptive_quad(lambda r, st=stage: kernel_weight(r, st, ctx.ptii), 0.0, upper, ctx.quad) for stage in stages
    }
    errors = {stage: abs(areas[stage] / _stage_area(stage, ctx.ptii, upper) - 1) for stage in stages}
    exact_vs_printed = areas["exact"] / areas["printed"] - 1
    return _finding(
        max(errors.values()) < 1e-8 and abs(exact_vs_printed) > 0.01,
        {"areas": areas, "closed_form_rel_error": errors, "exact_over_printed_minus_1": exact_vs_printed},
        "each stage area matches its closed form within 1e-8; exact and printed kernels differ by more than 1%",
        "exact C^2 cosh^-2s sinh^2m vs printed cosh^-4 sinh^2, then tanh -> 1 or rho, then the Gaussian",
    )


def _shape_curves(ctx: SuiteContext, stop_gev: float, step_gev: float):
    Q = np.round(np.arange(0.0, stop_gev + step_gev / 2, step_gev), 12) / config.HBAR_C_GEV_FM
    hyperbolic = normalize_curve(ff_curve(ctx.cfg.hyperbolic_method, Q, ctx.params.R, ctx.quad, cfg=ctx.ptii))
    rosen_morse = normalize_curve(ff_curve("rosen_morse", Q, ctx.params.R, ctx.quad, rm=ctx.rm))
    return hyperbolic, rosen_morse


@check
def check_fig2_shape(ctx: SuiteContext) -> CheckResult:
    curves = _shape_curves(ctx, 1.0, 0.05)
    measured = {}
    ok = True
    for curve in curves:
        starts = curve.G[0] == 1.0
        positive = bool(np.all(curve.G > 0))
        decreasing = bool(np.all(np.diff(curve.G) < 0))
        measured[curve.method] = {"G0": curve.G[0], "positive": positive, "decreasing": decreasing}
        ok = ok and starts and positive and decreasing
    return _check(ok, measured, "both start at 1, positive and decreasing on [0, 1] GeV")


@check
def check_fig3_shape(ctx: SuiteContext) -> CheckResult:
    curves = _shape_curves(ctx, 0.5, 0.05)
    measured = {curve.method: bool(np.all(np.diff(curve.q4g()[1:]) > 0)) for curve in curves}
    return _check(all(measured.values()), measured, "Q^4 G increasing on (0, 0.5] GeV")


# ============================================================
# Rosen-Morse
# ============================================================

@check
def check_rm_formfactor_origin(ctx: SuiteContext) -> CheckResult:
    origin = rmt_formfactor(0.0, ctx.rm)
    even = abs(rmt_formfactor(1.3, ctx.rm) - rmt_formfactor(-1.3, ctx.rm))
    return _check(origin == 1.0 and even == 0.0, {"G0": origin, "odd_part": even}, "G(0) = 1 exactly, even in Q")


@check
def check_rm_asymptote(ctx: SuiteContext) -> CheckResult:
    b, d = ctx.rm.b, ctx.rm.d
    Q = 100.0 / d
    limit = 16 * b**2 * (b**2 + 1) / d**4
    error = abs(Q**4 * rmt_formfactor(Q, ctx.rm) - limit) / limit
    return _check(error < 0.01, {"rel_error": error, "limit": limit}, "Q^4 G -> 16 b^2 (b^2 + 1)/d^4 within 1% at Qd = 100")


@check
def check_rm_spectrum(ctx: SuiteContext) -> CheckResult:
    rm = RMParams(b=ctx.rm.b, d=ctx.rm.d, l=0)
    levels = rmt_spectrum(rm, 3, ctx.cfg.grid_size)
    expected = np.array([rmt_energy(n, 0, rm) for n in range(3)])
    error = _rel(levels, expected)
    return _check(error < 5e-3, {"discretized": levels, "exact": expected, "rel_error": error}, "N <= 3 within 0.5%")


@check
def check_rm_degeneracy(ctx: SuiteContext) -> CheckResult:
    pairs = [((1, 0), (0, 1)), ((2, 0), (1, 1)), ((1, 1), (0, 2))]
    exact = all(rmt_energy(*a, ctx.rm) == rmt_energy(*b, ctx.rm) for a, b in pairs)
    return _check(exact, {"N=2": rmt_energy(1, 0, ctx.rm), "N=3": rmt_energy(2, 0, ctx.rm)}, "energies depend on N only")


@check
def check_rm_cornell(ctx: SuiteContext) -> CheckResult:
    rm = RMParams(b=ctx.rm.b, d=ctx.rm.d, l=1)
    r = np.linspace(0.001, 0.05, 200) * rm.d
    fitted = np.polynomial.Polynomial.fit(r, r**2 * rmt_potential(r, rm), 5).convert().coef
    c_inv2, c_inv1, c_lin = rmt_cornell_coeffs(rm)
    errors = {
        "r^-2": abs(fitted[0] - c_inv2) / c_inv2,
        "r^-1": abs(fitted[1] - c_inv1) / abs(c_inv1),
        "r": abs(fitted[3] - c_lin) / c_lin,
    }
    flat_linear = rmt_cornell_flat(rm.G, rm.l)[2]
    return _check(
        max(errors.values()) < 1e-4 and flat_linear == 0.0,
        {**errors, "constant_term": fitted[2]},
        "Cornell coefficients within 1e-4; linear term vanishes in the flat limit",
        "the constant l(l+1)/(3 d^2) is not part of the Cornell form",
    )


# ============================================================
# Datasets
# ============================================================

@check
def check_dataset_round_trip(ctx: SuiteContext) -> CheckResult:
    dataset = fig1(ctx.cfg)
    exact = {}
    for output_format in ("csv", "json"):
        parsed = parse_dataset(dataset.render(output_format), output_format)
        exact[output_format] = all(
            np.array_equal(parsed.column(c), dataset.column(c)) for c in dataset.columns
        ) and parsed.columns == dataset.columns
    peaks = {c: float(np.max(dataset.column(c))) for c in ("psi_lfh", "psi_ptii")}
    return _check(all(exact.values()) and all(v == 1.0 for v in peaks.values()), {**exact, "peaks": peaks}, "bit-exact re-parse; unit peaks")


# ============================================================
# Runner
# ============================================================

@dataclass
class ConformanceReport:
    results: list[CheckResult]
    config_hash: str

    @property
    def exit_code(self) -> int:
        if any(not r.converged for r in self.results):
            return ConvergenceError.exit_code
        if any(r.status == "FAIL" for r in self.results):
            return InvariantFailure.exit_code
        return 0

    def raise_for_status(self) -> None:
        """Raise the error behind exit_code; returns quietly when nothing failed."""
        stalled = [r.name for r in self.results if not r.converged]
        if stalled:
            raise ConvergenceError(f"did not converge: {', '.join(stalled)}")
        failed = [r.name for r in self.results if r.status == "FAIL"]
        if failed:
            raise InvariantFailure(f"{len(failed)} of {len(self.results)} checks failed: {', '.join(failed)}")

    def counts(self) -> dict:
        return {status: sum(r.status == status for r in self.results) for status in ("PASS", "FAIL", "DOCUMENTED")}

    def as_dict(self) -> dict:
        ratio = next(
            (r.measured.get("ratio_closed_over_hankel_at_Q0") for r in self.results if r.name == "ratio_closed_over_hankel_at_Q0"),
            None,
        )
        return jsonable(
            {
                "meta": {"config_hash": self.config_hash, "hbar_c_gev_fm": config.HBAR_C_GEV_FM},
                "summary": {"total": len(self.results), **self.counts(), "exit_code": self.exit_code},
                "ratio_closed_over_hankel_at_Q0": ratio,
                "checks": [r.as_dict() for r in self.results],
            }
        )


def run_suite(cfg: RunConfig, progress: bool = False, only: Optional[Sequence[str]] = None) -> ConformanceReport:
    """Run every registered check, or the named subset in registration order."""
    selected = _CHECKS
    if only:
        unknown = sorted(set(only) - set(check_names()))
        if unknown:
            raise DomainError(f"unknown checks: {', '.join(unknown)}")
        selected = [(name, fn) for name, fn in _CHECKS if name in set(only)]
    ctx = SuiteContext(cfg)
    results = []
    for name, fn in tqdm(selected, desc="check", disable=not progress, leave=False):
        try:
            result = replace(fn(ctx), name=name)
        except (ConvergenceError, OverflowGuardError) as e:
            logger.error("❌ %s did not converge: %s", name, e.detail)
            result = CheckResult(name, "FAIL", detail=e.detail, converged=False)
        except CurvedSpecError as e:
            logger.error("❌ %s: %s", name, e.detail)
            result = CheckResult(name, "FAIL", detail=e.detail)
        if result.status == "FAIL" and result.converged:
            logger.warning("❌ %s failed: %s", name, result.measured or result.detail)
        elif result.status == "DOCUMENTED":
            logger.info("⚠️ %s: %s", name, result.detail)
        results.append(result)
    report = ConformanceReport(results, cfg.config_hash())
    logger.info("✅ %d checks: %s", len(results), report.counts())
    return report
