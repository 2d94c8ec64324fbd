"""
Light-Front Holographic oscillator
==================================

Flat radial equation

    -psi'' + [(nu^2 - 1/4)/zeta^2 + kappa^4 zeta^2 + c] psi = E^2 psi

with c = 2 kappa^2 (nu + 1) on the plus branch and the partner equation
(nu -> nu + 1, c = 2 kappa^2 nu) on the minus branch. Both share the
spectrum E^2 = 4 kappa^2 (n + nu + 1). This module holds the potentials,
Laguerre eigenstates, the SUSY factorization with superpotential
W = -(nu + 1/2)/zeta + kappa^2 zeta, the B ladder pair, supercharges and
the so(2,1) generators, plus the discretized spectra used as oracles.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from curvedspec import config, discretize
from curvedspec.errors import ConvergenceError, DomainError, GridTooSmallError
from curvedspec.models import ModelParams, QuantumNumbers, SampledWavefunction
from curvedspec.specfun import laguerre

logger = logging.getLogger(__name__)

Branch = Literal["plus", "minus"]
Ladder = Literal["A", "Adag", "B", "Bdag"]


def _positive(zeta) -> np.ndarray:
    zeta = np.asarray(zeta, dtype=float)
    if np.any(zeta <= 0):
        raise DomainError("zeta must be positive")
    return zeta


def _out(values: np.ndarray):
    return float(values) if np.ndim(values) == 0 else values


def _order(branch: Branch, nu: int) -> int:
    if branch not in ("plus", "minus"):
        raise DomainError(f"unknown branch {branch!r}")
    return nu if branch == "plus" else nu + 1


def additive_constant(branch: Branch, nu: int, params: ModelParams) -> float:
    """c_+ = 2 kappa^2 (nu + 1), c_- = 2 kappa^2 nu."""
    k2 = params.kappa**2
    return 2 * k2 * (nu + 1) if branch == "plus" else 2 * k2 * nu


# ============================================================
# Potentials, spectrum, eigenstates
# ============================================================

def lfh_potential(branch: Branch, zeta, nu: int, params: ModelParams):
    """Effective potential in fm^-2 including the additive constant of the branch."""
    zeta = _positive(zeta)
    order = _order(branch, nu)
    value = (order**2 - 0.25) / zeta**2 + params.kappa**4 * zeta**2 + additive_constant(branch, nu, params)
    return _out(value)


def lfh_energy_sq(n: int, nu: int, params: ModelParams) -> float:
    QuantumNumbers.from_params(n, nu, params)
    return 4 * params.kappa**2 * (n + nu + 1)


def _normalization(n: int, order: int, kappa: float) -> float:
    # int Psi^2 dzeta = N^2 Gamma(n+order+1) / (2 kappa n!)
    return math.sqrt(2 * kappa * math.exp(math.lgamma(n + 1) - math.lgamma(n + order + 1)))


def lfh_wavefunction(branch: Branch, n: int, nu: int, params: ModelParams, grid) -> SampledWavefunction:
    """Psi_(+/-)^(n nu) = N x^(order/2 + 1/4) e^(-x/2) L_n^order(x), x = kappa^2 zeta^2.

    L2-normalized under dzeta, positive as zeta -> 0+.
    """
    QuantumNumbers.from_params(n, nu, params, branch)
    zeta = _positive(grid)
    order = _order(branch, nu)
    x = (params.kappa * zeta) ** 2
    values = _normalization(n, order, params.kappa) * x ** (order / 2 + 0.25) * np.exp(-x / 2) * laguerre(n, order, x)
    sign = "+" if branch == "plus" else "-"
    return SampledWavefunction(zeta, values, "flat_dzeta", normalized=True, label=f"Psi{sign}^({n},{order})")


def lfh_wavefunction_derivative(branch: Branch, n: int, nu: int, params: ModelParams, grid) -> np.ndarray:
    """Analytic d/dzeta of lfh_wavefunction, using L_n^a' = -L_(n-1)^(a+1)."""
    zeta = _positive(grid)
    order = _order(branch, nu)
    k2 = params.kappa**2
    x = k2 * zeta**2
    p = order / 2 + 0.25
    lag = laguerre(n, order, x)
    lag_prime = -laguerre(n - 1, order + 1, x) if n > 0 else 0.0
    envelope = _normalization(n, order, params.kappa) * x**p * np.exp(-x / 2)
    return envelope * ((2 * p / zeta - k2 * zeta) * lag + 2 * k2 * zeta * lag_prime)


def lfh_spectrum(
    nu: int,
    params: ModelParams,
    n_levels: int = 4,
    grid_size: int = config.DEFAULT_GRID_SIZE,
    branch: Branch = "plus",
) -> np.ndarray:
    """Lowest eigenvalues of the discretized radial equation on (0, 12/kappa].

    Grid points zeta_i = i*h, i = 1..N; Dirichlet at 0 and one step past the box.
    """
    h = config.LFH_BOX_KAPPA_UNITS / params.kappa / grid_size
    zeta = h * np.arange(1, grid_size + 1)
    return discretize.dirichlet_spectrum(lfh_potential(branch, zeta, nu, params), h, n_levels)


# ============================================================
# SUSY factorization and ladders
# ============================================================

def superpotential(zeta, nu: int, params: ModelParams):
    zeta = _positive(zeta)
    return _out(-(nu + 0.5) / zeta + params.kappa**2 * zeta)


def superpotential_derivative(zeta, nu: int, params: ModelParams):
    zeta = _positive(zeta)
    return _out((nu + 0.5) / zeta**2 + params.kappa**2)


def apply_ladder(
    which: Ladder,
    f: SampledWavefunction,
    nu: int,
    params: ModelParams,
    derivative: Optional[np.ndarray] = None,
) -> SampledWavefunction:
    """Apply A = d + W, A+ = -d + W, B = d - w or B+ = -d - w, with w = (nu+1/2)/zeta + kappa^2 zeta.

    The derivative comes from 5-point finite differences unless an analytic
    one is passed in.
    """
    if which not in ("A", "Adag", "B", "Bdag"):
        raise DomainError(f"unknown ladder operator {which!r}")
    h = discretize.uniform_step(f.grid)
    zeta = _positive(f.grid)
    d = discretize.derivative(f.values, h) if derivative is None else np.asarray(derivative)
    if which in ("A", "Adag"):
        multiplier = superpotential(zeta, nu, params)
    else:
        multiplier = -((nu + 0.5) / zeta + params.kappa**2 * zeta)
    sign = 1.0 if which in ("A", "B") else -1.0
    return f.with_values(sign * d + multiplier * f.values, label=f"{which} {f.label}")


@dataclass(frozen=True, eq=False)
class Doublet:
    """Two-component state (upper acted on by H+, lower by H-)."""

    upper: SampledWavefunction
    lower: SampledWavefunction

    def __add__(self, other: "Doublet") -> "Doublet":
        return Doublet(
            self.upper.with_values(self.upper.values + other.upper.values),
            self.lower.with_values(self.lower.values + other.lower.values),
        )

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.upper.values)), np.max(np.abs(self.lower.values))))


def supercharge(doublet: Doublet, nu: int, params: ModelParams) -> Doublet:
    """Q = [[0, 0], [A, 0]]."""
    zero = doublet.upper.with_values(np.zeros_like(doublet.upper.values))
    return Doublet(zero, apply_ladder("A", doublet.upper, nu, params))


def supercharge_dag(doublet: Doublet, nu: int, params: ModelParams) -> Doublet:
    """Q+ = [[0, A+], [0, 0]]."""
    zero = doublet.lower.with_values(np.zeros_like(doublet.lower.values))
    return Doublet(apply_ladder("Adag", doublet.lower, nu, params), zero)


def susy_hamiltonian(doublet: Doublet, nu: int, params: ModelParams) -> Doublet:
    """{Q, Q+} = diag(A+A, AA+)."""
    return supercharge(supercharge_dag(doublet, nu, params), nu, params) + supercharge_dag(
        supercharge(doublet, nu, params), nu, params
    )


def _interior_rel_error(lhs: np.ndarray, rhs: np.ndarray, grid: np.ndarray, trim: int = 8) -> float:
    inner = slice(trim, -trim)
    scale = discretize.l2_norm(rhs[inner], grid[inner])
    return discretize.l2_norm(lhs[inner] - rhs[inner], grid[inner]) / scale


def state_grid(params: ModelParams, size: int, start: float = 0.05, stop: float = 8.0) -> np.ndarray:
    """Uniform zeta grid on [start/kappa, stop/kappa] for finite-difference checks."""
    return np.linspace(start / params.kappa, stop / params.kappa, size)


@dataclass
class SusySpectrumReport:
    nu: int
    plus_eigenvalues: np.ndarray
    minus_eigenvalues: np.ndarray
    plus_expected: np.ndarray
    minus_expected: np.ndarray
    ground_abs_error: float  # in units of kappa^2
    partner_rel_errors: np.ndarray  # |E+(n+1) - E-(n)| / E-(n)
    nilpotency_residual: float
    anticommutator_rel_error: float

    def as_dict(self) -> dict:
        return {
            "nu": self.nu,
            "plus_eigenvalues": self.plus_eigenvalues.tolist(),
            "minus_eigenvalues": self.minus_eigenvalues.tolist(),
            "ground_abs_error_kappa2": self.ground_abs_error,
            "max_partner_rel_error": float(np.max(self.partner_rel_errors)),
            "nilpotency_residual": self.nilpotency_residual,
            "anticommutator_rel_error": self.anticommutator_rel_error,
        }


def susy_spectrum_check(
    n_max: int,
    nu: int,
    params: ModelParams,
    grid_size: int = config.DEFAULT_GRID_SIZE,
    tolerance: float = 1e-3,
) -> SusySpectrumReport:
    """Diagonalize H+ = A+A and H- = AA+ and check the partner spectra.

    H+ must give 4 kappa^2 n (zero-energy ground state), H- must give
    4 kappa^2 (n+1). Supercharge algebra is checked by operator application
    on the doublet (Psi_+^(1 nu), Psi_-^(0, nu+1)), an eigen-doublet of
    {Q, Q+} with eigenvalue 4 kappa^2.

    Raises:
        GridTooSmallError: grid_size < 1024.
        ConvergenceError: an eigenvalue misses its target by more than
            tolerance * 4 kappa^2 (n+1).
    """
    if grid_size < 1024:
        raise GridTooSmallError(f"susy_spectrum_check needs grid_size >= 1024, got {grid_size}")
    k2 = params.kappa**2
    h = config.LFH_BOX_KAPPA_UNITS / params.kappa / grid_size
    zeta = h * np.arange(1, grid_size + 1)
    w = superpotential(zeta, nu, params)
    w_prime = superpotential_derivative(zeta, nu, params)
    plus = discretize.dirichlet_spectrum(w**2 - w_prime, h, n_max + 2)
    minus = discretize.dirichlet_spectrum(w**2 + w_prime, h, n_max + 1)
    plus_expected = 4 * k2 * np.arange(n_max + 2)
    minus_expected = 4 * k2 * np.arange(1, n_max + 2)

    scale = 4 * k2 * np.arange(1, n_max + 3)
    worst = max(
        float(np.max(np.abs(plus - plus_expected) / scale)),
        float(np.max(np.abs(minus - minus_expected) / scale[:-1])),
    )
    if worst > tolerance:
        raise ConvergenceError(
            f"SUSY partner spectra off by {worst:.3g} (relative) for nu={nu}, grid_size={grid_size}"
        )

    states = state_grid(params, grid_size)
    doublet = Doublet(
        lfh_wavefunction("plus", 1, nu, params, states),
        lfh_wavefunction("minus", 0, nu, params, states),
    )
    q_twice = supercharge(supercharge(doublet, nu, params), nu, params)
    hamiltonian = susy_hamiltonian(doublet, nu, params)
    energy = 4 * k2
    anticommutator_error = max(
        _interior_rel_error(hamiltonian.upper.values, energy * doublet.upper.values, states),
        _interior_rel_error(hamiltonian.lower.values, energy * doublet.lower.values, states),
    )
    logger.debug("✅ SUSY spectra for nu=%d agree to %.2e", nu, worst)
    return SusySpectrumReport(
        nu=nu,
        plus_eigenvalues=plus,
        minus_eigenvalues=minus,
        plus_expected=plus_expected,
        minus_expected=minus_expected,
        ground_abs_error=abs(float(plus[0])) / k2,
        partner_rel_errors=np.abs(plus[1:] - minus) / minus,
        nilpotency_residual=q_twice.max_abs(),
        anticommutator_rel_error=anticommutator_error,
    )


# ============================================================
# so(2,1) generators
# ============================================================

def j_minus(f: SampledWavefunction) -> np.ndarray:
    return f.grid**2 / 2 * f.values


def j_plus(f: SampledWavefunction, nu: int) -> np.ndarray:
    h = discretize.uniform_step(f.grid)
    return -0.5 * (discretize.second_derivative(f.values, h) - (nu**2 - 0.25) / f.grid**2 * f.values)


def d_zero(f: SampledWavefunction) -> np.ndarray:
    """D0 = (zeta d/dzeta + d/dzeta zeta)/4 = zeta/2 d/dzeta + 1/4."""
    h = discretize.uniform_step(f.grid)
    return f.grid / 2 * discretize.derivative(f.values, h) + f.values / 4


@dataclass
class ConformalReport:
    plus_minus_errors: list[float] = field(default_factory=list)  # [J+, J-] = -2 D0
    d0_plus_errors: list[float] = field(default_factory=list)  # [D0, J+] = -J+
    d0_minus_errors: list[float] = field(default_factory=list)  # [D0, J-] = +J-
    hamiltonian_errors: list[float] = field(default_factory=list)  # 2(J+ + k^4 J-) = E^2 - c_+
    hamiltonian_offsets: list[float] = field(default_factory=list)  # <2(J+ + k^4 J-)> - E^2, in kappa^2

    def max_error(self) -> float:
        errors = self.plus_minus_errors + self.d0_plus_errors + self.d0_minus_errors + self.hamiltonian_errors
        return float(max(errors)) if errors else 0.0

    def as_dict(self) -> dict:
        return {
            "commutator_J+_J-": self.plus_minus_errors,
            "commutator_D0_J+": self.d0_plus_errors,
            "commutator_D0_J-": self.d0_minus_errors,
            "hamiltonian_relation": self.hamiltonian_errors,
            "hamiltonian_offset_kappa2": self.hamiltonian_offsets,
        }


def conformal_commutator_check(
    params: ModelParams,
    test_functions: Sequence[SampledWavefunction],
    nu: int = config.DEFAULT_NU,
    energies_sq: Optional[Sequence[float]] = None,
) -> ConformalReport:
    """Check the so(2,1) relations on sampled states by finite differences.

    When energies_sq is given, also compares 2(J+ + kappa^4 J-) f with
    (E^2 - c_+) f, i.e. the plus-branch operator without its constant.
    """
    report = ConformalReport()
    k4 = params.kappa**4
    c_plus = additive_constant("plus", nu, params)
    for index, f in enumerate(test_functions):
        grid = f.grid
        jm = j_minus(f)
        jp = j_plus(f, nu)
        d0 = d_zero(f)

        jp_of_jm = j_plus(f.with_values(jm), nu)
        jm_of_jp = j_minus(f.with_values(jp))
        report.plus_minus_errors.append(_interior_rel_error(jp_of_jm - jm_of_jp, -2 * d0, grid))

        d0_of_jp = d_zero(f.with_values(jp))
        jp_of_d0 = j_plus(f.with_values(d0), nu)
        report.d0_plus_errors.append(_interior_rel_error(d0_of_jp - jp_of_d0, -jp, grid))

        d0_of_jm = d_zero(f.with_values(jm))
        jm_of_d0 = j_minus(f.with_values(d0))
        report.d0_minus_errors.append(_interior_rel_error(d0_of_jm - jm_of_d0, jm, grid))

        if energies_sq is not None:
            action = 2 * (jp + k4 * jm)
            report.hamiltonian_errors.append(
                _interior_rel_error(action, (energies_sq[index] - c_plus) * f.values, grid)
            )
            expectation = discretize.inner(f.values, action, grid) / discretize.inner(f.values, f.values, grid)
            report.hamiltonian_offsets.append((expectation - energies_sq[index]) / params.kappa**2)
    return report
