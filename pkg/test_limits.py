"""R -> infinity contraction onto the flat oscillator"""
import math

import numpy as np
import pytest

from curvedspec.errors import DomainError, GridTooSmallError
from curvedspec.lfh import lfh_energy_sq, lfh_potential, lfh_wavefunction
from curvedspec.limits import (
    ContractionReport,
    contraction_report,
    cosh_gaussian_error,
    energy_contraction_error,
    fit_power_law,
    hypergeom_limit_error,
    schrodinger_residual,
    shapiro_limit_check,
    tanh_reduction,
    unit_peak_difference,
    wavefunction_contraction_error,
    wavefunction_pair,
)
from curvedspec.models import ModelParams

FIG1_PARAMS = ModelParams(kappa=2.14, R=0.728)


def test_energy_error_leading_order():
    # (m + 1 + 2n)^2 / R^2
    assert energy_contraction_error(0, 1, ModelParams(kappa=1.0, R=20.0)) == pytest.approx(0.01, rel=1e-3)
    assert energy_contraction_error(1, 0, ModelParams(kappa=1.0, R=10.0)) == pytest.approx(0.09, rel=2e-3)


def test_energy_error_falls_as_inverse_square():
    ratio = energy_contraction_error(0, 1, ModelParams(kappa=1.0, R=20.0)) / energy_contraction_error(
        0, 1, ModelParams(kappa=1.0, R=40.0)
    )
    assert 3.5 <= ratio <= 4.5


def test_contraction_report():
    report = contraction_report(0, 1, 1.0, [5.0, 10.0, 20.0, 40.0])
    assert 1.8 <= report.fitted_rate <= 2.2
    assert np.all(np.diff(report.wavefunction_l2_errors) < 0)
    assert abs(report.intercept) < 1e-2
    assert len(report.rows()) == 4
    assert report.rows()[0][0] == 5.0


def test_contraction_report_validation():
    with pytest.raises(DomainError):
        ContractionReport(np.array([1.0, 2.0]), np.array([0.1]), np.array([0.1, 0.2]), 2.0, 0.0)
    with pytest.raises(DomainError):
        ContractionReport(np.array([1.0]), np.array([-0.1]), np.array([0.1]), 2.0, 0.0)


def test_wavefunction_error_shrinks_with_radius():
    zeta = np.linspace(0.01, 3.0, 600)
    errors = [wavefunction_contraction_error(0, 1, ModelParams(kappa=1.0, R=R), zeta) for R in (5.0, 20.0)]
    assert errors[1] < errors[0] / 4


def test_wavefunction_pair_shares_grid():
    zeta = np.linspace(0.05, 2.0, 40)
    flat, curved = wavefunction_pair(0, 1, FIG1_PARAMS, zeta, 2.5)
    assert flat.shape == curved.shape == zeta.shape
    assert np.all(flat > 0) and np.all(curved > 0)


def test_unit_peak_difference_at_figure_parameters():
    zeta = np.arange(1, 301) * 0.005
    difference = unit_peak_difference(0, 1, FIG1_PARAMS, zeta, 2.5)
    assert 0.7 < difference < 0.9


@pytest.mark.parametrize("zeta", [[0.0, 1.0], [1.0, 3.5]])
def test_zeta_grid_must_lie_in_range(zeta):
    with pytest.raises(DomainError):
        unit_peak_difference(0, 1, FIG1_PARAMS, zeta, 2.5)
    with pytest.raises(DomainError):
        wavefunction_contraction_error(0, 1, FIG1_PARAMS, zeta)


def test_cosh_power_approaches_gaussian():
    zeta = np.linspace(0.01, 3.0, 300)
    errors = [cosh_gaussian_error(ModelParams(kappa=1.0, R=R), zeta) for R in (20.0, 40.0)]
    assert errors[0] / errors[1] > 3.0
    assert cosh_gaussian_error(FIG1_PARAMS, zeta, 2.5) > errors[0]


def test_tanh_reduction():
    rho = np.array([0.1, 0.5, 2.0])
    assert np.array_equal(tanh_reduction(rho, "unit"), np.ones(3))
    assert np.array_equal(tanh_reduction(rho, "linear"), rho)
    with pytest.raises(DomainError):
        tanh_reduction(rho, "cubic")


def test_hypergeometric_limit_error_falls_as_inverse_s():
    t = np.linspace(0.1, 5.0, 50)
    errors = [hypergeom_limit_error(2, 1, s, np.arcsinh(np.sqrt(t / s))) for s in (100.0, 1000.0)]
    assert 7.0 < errors[0] / errors[1] < 13.0


def test_hypergeometric_limit_needs_large_s():
    with pytest.raises(DomainError):
        hypergeom_limit_error(2, 1, 4.0, [0.1])


def test_shapiro_function_approaches_plane_wave():
    report = shapiro_limit_check(2.0, 0.3, [10.0, 20.0, 40.0, 80.0, 160.0], (0.8, 1.1))
    ratios = report.halving_ratios()
    assert np.all((ratios > 1.7) & (ratios < 2.3))
    assert report.power_form_errors[-1] < 0.05
    assert report.exponential_form_errors.shape == (5,)


def test_fit_power_law():
    assert fit_power_law([1.0, 2.0, 4.0], [3.0, 12.0, 48.0]) == pytest.approx(2.0)
    assert fit_power_law([10.0, 100.0], [1.0, 0.1]) == pytest.approx(-1.0)


def test_schrodinger_residual_on_exact_state():
    params = ModelParams(kappa=2.14, R=0.728)
    zeta = np.linspace(0.1, 5.0, 4001)
    psi = lfh_wavefunction("plus", 1, 1, params, zeta)
    energy = lfh_energy_sq(1, 1, params)
    assert schrodinger_residual(lambda z: lfh_potential("plus", z, 1, params), energy, psi) / energy < 1e-6
    wrong = schrodinger_residual(lambda z: lfh_potential("plus", z, 1, params), 1.1 * energy, psi) / energy
    assert wrong == pytest.approx(0.1, rel=1e-3)


def test_schrodinger_residual_needs_interior_points():
    params = ModelParams(kappa=2.14, R=0.728)
    psi = lfh_wavefunction("plus", 0, 1, params, np.linspace(0.1, 2.0, 50))
    with pytest.raises(GridTooSmallError):
        schrodinger_residual(lambda z: lfh_potential("plus", z, 1, params), 0.0, psi)


def test_ground_state_peaks_differ():
    zeta = np.linspace(0.005, 2.0, 400)
    flat, curved = wavefunction_pair(0, 1, FIG1_PARAMS, zeta, 2.5)
    assert zeta[np.argmax(flat)] == pytest.approx(math.sqrt(1.5) / 2.14, abs=0.005)
    assert zeta[np.argmax(curved)] == pytest.approx(0.728 * math.atanh(math.sqrt(0.75)), abs=0.005)
