"""Trigonometric Rosen-Morse comparator"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from curvedspec.errors import DomainError
from curvedspec.rosenmorse import (
    RMParams,
    rmt_cornell_coeffs,
    rmt_cornell_flat,
    rmt_energy,
    rmt_formfactor,
    rmt_potential,
    rmt_spectrum,
)

DEFAULT = RMParams()


def test_defaults_and_coupling():
    assert (DEFAULT.b, DEFAULT.d, DEFAULT.l) == (2.0, 1.0, 0)
    assert RMParams(b=3.0, d=2.0).G == 1.5


@pytest.mark.parametrize("fields", [{"b": 0.0}, {"d": -1.0}, {"l": -1}])
def test_params_validation(fields):
    with pytest.raises(ValidationError):
        RMParams(**fields)


def test_potential_values():
    p = RMParams(b=3.0, d=2.0, l=1)
    assert rmt_potential(1.0, p) == pytest.approx(-0.570388, abs=1e-6)
    # csc = 1 and cot = 0 at the box midpoint
    assert rmt_potential(math.pi, p) == pytest.approx(2 / 4, abs=1e-12)


@pytest.mark.parametrize("r", [0.0, -0.1, math.pi, 4.0])
def test_potential_outside_box(r):
    with pytest.raises(DomainError):
        rmt_potential(r, DEFAULT)


def test_cornell_coefficients():
    p = RMParams(b=2.0, d=1.5, l=1)
    assert rmt_cornell_coeffs(p) == pytest.approx((2.0, -2 * 2.0 / 1.5, 2 * 2.0 / (3 * 1.5**3)))
    assert rmt_cornell_flat(p.G, 1) == (2.0, -2 * p.G, 0.0)


def test_cornell_expansion_fits_potential():
    p = RMParams(b=2.0, d=1.0, l=1)
    r = np.linspace(0.001, 0.05, 200)
    coef = np.polynomial.Polynomial.fit(r, r**2 * rmt_potential(r, p), 5).convert().coef
    c_inv2, c_inv1, c_lin = rmt_cornell_coeffs(p)
    assert coef[0] == pytest.approx(c_inv2, rel=1e-4)
    assert coef[1] == pytest.approx(c_inv1, rel=1e-4)
    assert coef[3] == pytest.approx(c_lin, rel=1e-4)
    # the csc^2 constant l(l+1)/(3 d^2) sits in the r^2 slot
    assert coef[2] == pytest.approx(2.0 / 3.0, rel=1e-3)


def test_cornell_linear_term_grows_as_box_shrinks():
    G = 2.0
    linear = [rmt_cornell_coeffs(RMParams(b=G * d, d=d))[2] for d in (1.0, 2.0, 4.0)]
    assert linear[0] > linear[1] > linear[2] > 0
    assert linear[1] / linear[2] == pytest.approx(4.0)


def test_energies():
    assert rmt_energy(0, 0, DEFAULT) == pytest.approx(-3.0)
    assert rmt_energy(1, 0, DEFAULT) == pytest.approx(3.0)
    assert rmt_energy(2, 0, DEFAULT) == pytest.approx(8.555556, abs=1e-6)
    assert rmt_energy(0, 0, RMParams(d=2.0)) == pytest.approx(-0.75)


def test_energies_depend_on_principal_number_only():
    for (n1, l1), (n2, l2) in [((1, 0), (0, 1)), ((2, 0), (1, 1)), ((1, 1), (0, 2))]:
        assert rmt_energy(n1, l1, DEFAULT) == rmt_energy(n2, l2, DEFAULT)


def test_energy_rejects_negative_numbers():
    with pytest.raises(DomainError):
        rmt_energy(-1, 0, DEFAULT)
    with pytest.raises(DomainError):
        rmt_energy(0, -1, DEFAULT)


def test_discretized_spectrum():
    levels = rmt_spectrum(DEFAULT, 3)
    assert np.allclose(levels, [rmt_energy(n, 0, DEFAULT) for n in range(3)], rtol=5e-3)


def test_spectrum_with_centrifugal_barrier():
    p = RMParams(l=1)
    levels = rmt_spectrum(p, 2)
    assert np.allclose(levels, [rmt_energy(n, 1, p) for n in range(2)], rtol=5e-3)


def test_formfactor_values():
    assert rmt_formfactor(0.0, DEFAULT) == 1.0
    assert rmt_formfactor(1.0, DEFAULT) == pytest.approx(0.914348, abs=1e-6)
    assert rmt_formfactor(5.0, DEFAULT) == pytest.approx(0.193919, abs=1e-6)
    assert rmt_formfactor(1.3, DEFAULT) == rmt_formfactor(-1.3, DEFAULT)


def test_formfactor_continuous_at_origin():
    assert rmt_formfactor(1e-4, DEFAULT) == pytest.approx(1.0, abs=1e-6)


def test_formfactor_monotone_for_default_parameters():
    values = [rmt_formfactor(q, DEFAULT) for q in np.linspace(0.0, 20.0, 201)]
    assert np.all(np.diff(values) < 0)


def test_formfactor_continuous_for_weak_coupling():
    # b^2 < 1/8: the arctangent denominator changes sign twice
    p = RMParams(b=0.3, d=1.0)
    Q = np.linspace(0.001, 5.0, 5000)
    values = np.array([rmt_formfactor(q, p) for q in Q])
    assert np.all(values > 0)
    assert np.max(np.abs(np.diff(values))) < 0.01
    assert rmt_formfactor(0.77, p) == pytest.approx(rmt_formfactor(0.76, p), abs=0.01)
    assert rmt_formfactor(1.64, p) == pytest.approx(0.313, abs=3e-3)
    assert rmt_formfactor(1.65, p) == pytest.approx(0.310, abs=3e-3)


def test_formfactor_asymptote():
    p = RMParams(b=2.0, d=1.5)
    Q = 100.0 / p.d
    limit = 16 * p.b**2 * (p.b**2 + 1) / p.d**4
    assert Q**4 * rmt_formfactor(Q, p) == pytest.approx(limit, rel=0.01)
