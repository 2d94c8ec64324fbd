"""Form factor: Shapiro waves, Hankel reduction, closed forms, exact transform"""
import math

import numpy as np
import pytest
from scipy import integrate, special

from curvedspec.config import QuadratureSpec
from curvedspec.errors import DomainError, MissingOriginError, OverflowGuardError, UnboundStateError
from curvedspec.formfactor import (
    FormFactorCurve,
    angular_reduction,
    area_gap,
    ff_closed,
    ff_closed_sign_change,
    ff_curve,
    ff_exact,
    ff_hankel,
    ff_reference_closed,
    fourier_helgason,
    integrand_exact,
    integrand_hankel,
    kernel_weight,
    normalize_curve,
    origin_areas,
    shapiro,
    shapiro_exponential,
)
from curvedspec.hyperbolic import PTIIConfig
from curvedspec.models import ModelParams
from curvedspec.rosenmorse import RMParams

R = 0.728
QUAD = QuadratureSpec()


@pytest.fixture(scope="module")
def ptii():
    return PTIIConfig.from_params(1, ModelParams(kappa=2.14, R=R), 2.5)


def test_values_at_origin():
    assert ff_hankel(0.0, R) == pytest.approx(0.453934 * R**2, rel=1e-5)
    assert ff_reference_closed(0.0, R) == pytest.approx(ff_hankel(0.0, R), rel=1e-10)
    assert ff_closed(0.0, R) == pytest.approx(0.680900 * R**2, rel=1e-5)


def test_closed_form_is_three_halves_of_hankel_at_origin():
    assert ff_closed(0.0, R) / ff_hankel(0.0, R) == pytest.approx(1.5, abs=1e-6)


def test_hankel_matches_table_closed_form():
    g0 = ff_hankel(0.0, R)
    for b in np.linspace(0.0, 10.0, 11):
        assert abs(ff_hankel(b / R, R) - ff_reference_closed(b / R, R)) / g0 < 1e-6


def test_hankel_insensitive_to_halved_tolerances():
    g0 = ff_hankel(0.0, R)
    for b in (2.0, 5.0):
        assert abs(ff_hankel(b / R, R, QUAD) - ff_hankel(b / R, R, QUAD.halved())) / g0 < 1e-8


def test_double_integral_reduces_to_hankel():
    for b in (0.0, 1.5, 4.0):
        generic = fourier_helgason(b / R, R, lambda r: kernel_weight(r, "gaussian"), "linear", QUAD)
        assert generic.real / (2 * math.pi) == pytest.approx(ff_hankel(b / R, R), rel=1e-8, abs=1e-12)
        assert abs(generic.imag) < 1e-10


def test_printed_closed_form_diverges_from_table():
    Q = 4.0 / R
    printed = ff_closed(Q, R) / ff_closed(0.0, R)
    table = ff_reference_closed(Q, R) / ff_reference_closed(0.0, R)
    assert 0.4 < abs(printed - table) / table < 0.6


def test_printed_closed_form_changes_sign():
    b_star = ff_closed_sign_change(R) * R
    assert 6.0 < b_star < 10.0
    assert ff_closed((b_star - 0.5) / R, R) > 0
    assert ff_closed((b_star + 0.5) / R, R) < 0
    # the Hankel reduction stays bounded by its origin value
    assert abs(ff_hankel((b_star + 0.5) / R, R)) < ff_hankel(0.0, R)


def test_overflow_guard():
    with pytest.raises(OverflowGuardError):
        ff_closed(100.0 / R, R)
    with pytest.raises(OverflowGuardError):
        ff_reference_closed(100.0 / R, R)
    assert math.isfinite(ff_reference_closed(90.0 / R, R))


def test_reference_large_Q_falls_as_inverse_cube():
    Q = np.linspace(20.0, 40.0, 11) / R
    q4g = np.abs(Q**4 * np.array([ff_reference_closed(q, R) for q in Q]))
    slope, _ = np.polyfit(np.log(Q), np.log(q4g), 1)
    assert 0.8 <= slope <= 1.2


def test_hankel_integrand_shape():
    rho = np.array([0.0, 0.5, 1.0])
    assert integrand_hankel(rho, 0.0, R)[0] == 0.0
    assert integrand_hankel(0.5, 0.0, R) == pytest.approx(R**2 * math.exp(-0.375) * 1.25 * 0.5)
    assert integrand_hankel(1.0, 2.0, R) == pytest.approx(R**2 * math.exp(-1.5) * 1.5 * special.j0(2.0 * R))


@pytest.mark.parametrize("x", [0.0, 1.0, 2.404825557695773, 7.5, 20.0])
def test_angular_reduction_is_j0(x):
    assert angular_reduction(x) == pytest.approx(special.j0(x), abs=1e-10)


def test_shapiro_forms_coincide_on_axis():
    assert abs(shapiro(0.5, 0.0, 2.0, 1.0) - shapiro_exponential(0.5, 0.0, 2.0, 1.0)) < 1e-12
    off_axis = shapiro(0.5, math.pi / 2, 2.0, 1.0)
    assert abs(off_axis - shapiro_exponential(0.5, math.pi / 2, 2.0, 1.0)) > 1e-3


def test_shapiro_modulus():
    rho, phi = 0.7, 1.2
    base = math.cosh(rho) - math.cos(phi) * math.sinh(rho)
    assert abs(shapiro(rho, phi, 3.0, 2.0)) == pytest.approx(base**-0.5)


@pytest.mark.parametrize("stage", ["printed", "tanh_unit", "tanh_linear", "gaussian"])
def test_kernel_stages_positive(stage):
    rho = np.linspace(0.01, 5.0, 30)
    assert np.all(kernel_weight(rho, stage) > 0)
    assert kernel_weight(0.0, stage) == 0.0


def test_exact_kernel(ptii):
    # C^2 cosh^-5 sinh^2 for s = 5/2, m = 1
    rho = np.array([0.3, 1.0, 4.0])
    c2 = 2 * math.gamma(2.5) / (math.gamma(2) * math.gamma(0.5))
    expected = c2 * np.sinh(rho) ** 2 / np.cosh(rho) ** 5
    assert np.allclose(kernel_weight(rho, "exact", ptii), expected, rtol=1e-12)
    assert kernel_weight(0.0, "exact", ptii) == 0.0
    assert 0.0 <= kernel_weight(200.0, "exact", ptii) < 1e-250


def test_exact_kernel_without_angular_momentum():
    cfg = PTIIConfig.from_params(0, ModelParams(kappa=2.14, R=R), 2.5)
    assert kernel_weight(0.0, "exact", cfg) > 0


def test_kernel_argument_checks():
    with pytest.raises(DomainError):
        kernel_weight(1.0, "exact")
    with pytest.raises(DomainError):
        kernel_weight(1.0, "quartic")


@pytest.mark.parametrize("rho,Q", [(0.4, 0.0), (1.0, 3.0), (2.5, 8.0)])
def test_exact_integrand_against_complex_bessel(ptii, rho, Q):
    # int e^((1/2 + i b) rho cos phi) dphi = 2 pi I0((1/2 + i b) rho)
    z = complex(rho / 2, Q * R * rho)
    expected = R**2 * kernel_weight(rho, "exact", ptii) * (2 * math.pi * special.iv(0, z)).real
    assert integrand_exact(rho, Q, ptii) == pytest.approx(expected, rel=1e-8, abs=1e-14)


def test_exact_transform_at_origin(ptii):
    real, imag = ff_exact(0.0, ptii)
    expected, _ = integrate.quad(
        lambda r: R**2 * kernel_weight(r, "exact", ptii) * 2 * math.pi * special.i0(r / 2), 0.0, 40.0
    )
    assert real == pytest.approx(expected, rel=1e-8)
    assert imag == pytest.approx(0.0, abs=1e-12)


def test_origin_areas_on_common_footing(ptii):
    exact, approx = origin_areas(ptii)
    assert approx == pytest.approx(ff_hankel(0.0, R), rel=1e-12)
    assert exact == pytest.approx(ff_exact(0.0, ptii)[0] / (2 * math.pi), rel=1e-12)
    assert area_gap(exact, approx) == pytest.approx(0.303, abs=0.005)
    assert area_gap(0.5, 2.0) == 0.75


def test_exact_transform_keeps_imaginary_part(ptii):
    Q = 1.0 / 0.1973269804
    real, imag = ff_exact(Q, ptii)
    expected, _ = integrate.quad(
        lambda r: R**2 * kernel_weight(r, "exact", ptii) * (2 * math.pi * special.iv(0, complex(r / 2, Q * R * r))).imag,
        0.0,
        20.0,
        limit=400,
    )
    assert imag == pytest.approx(abs(expected), rel=1e-6, abs=1e-10)
    assert math.isfinite(real)


def test_exact_transform_needs_bound_ground_state():
    cfg = PTIIConfig.from_params(2, ModelParams(kappa=2.14, R=R), 2.5)
    with pytest.raises(UnboundStateError):
        ff_exact(0.0, cfg)


def test_curve_conversion_and_q4g():
    curve = FormFactorCurve(np.array([0.0, 1.0 / 0.1973269804]), np.array([1.0, 0.5]), "hankel")
    assert curve.Q_gev == pytest.approx([0.0, 1.0])
    assert curve.q4g() == pytest.approx([0.0, 0.5])


def test_curve_shape_checks():
    with pytest.raises(DomainError):
        FormFactorCurve(np.array([0.0, 1.0]), np.array([1.0]), "hankel")
    with pytest.raises(DomainError):
        FormFactorCurve(np.array([0.0, 1.0]), np.array([1.0, 0.5]), "exact_fh", imag_diagnostic=np.array([0.0]))


def test_normalize_curve():
    curve = ff_curve("hankel", [0.0, 2.0, 4.0], R)
    normalized = normalize_curve(curve)
    assert normalized.normalized
    assert normalized.G[0] == 1.0
    assert normalized.G == pytest.approx(curve.G / curve.G[0])
    assert normalize_curve(normalized).G == pytest.approx(normalized.G)


def test_normalize_curve_scales_imaginary_diagnostic():
    curve = FormFactorCurve(np.array([0.0, 1.0]), np.array([-2.0, 1.0]), "exact_fh", imag_diagnostic=np.array([0.0, 0.5]))
    normalized = normalize_curve(curve)
    assert normalized.G == pytest.approx([1.0, -0.5])
    assert normalized.imag_diagnostic == pytest.approx([0.0, 0.25])


def test_normalize_curve_needs_origin():
    with pytest.raises(MissingOriginError):
        normalize_curve(ff_curve("reference", [0.5, 1.0], R))
    with pytest.raises(MissingOriginError):
        normalize_curve(FormFactorCurve(np.array([0.0, 1.0]), np.array([0.0, 1.0]), "hankel"))


def test_ff_curve_methods(ptii):
    Q = [0.0, 1.0, 2.0]
    rm = RMParams()
    assert ff_curve("closed_form", Q, R).G[0] == pytest.approx(ff_closed(0.0, R))
    assert ff_curve("rosen_morse", Q, R, rm=rm).G[0] == 1.0
    exact = ff_curve("exact_fh", [0.0], R, cfg=ptii)
    assert exact.imag_diagnostic is not None
    assert exact.method == "exact_fh"


def test_ff_curve_argument_checks():
    with pytest.raises(DomainError):
        ff_curve("rosen_morse", [0.0], R)
    with pytest.raises(DomainError):
        ff_curve("exact_fh", [0.0], R)
    with pytest.raises(DomainError):
        ff_curve("dipole", [0.0], R)
