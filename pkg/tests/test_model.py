"""Lattice model and dispersion relation checks."""

import math

import numpy as np
import pytest

from blochsim import (
    Dispersion,
    LatticeModel,
    ZeroForceError,
    bloch_period,
    dispersion,
    hatano_nelson_parameters,
    imaginary_hopping_parameters,
    is_hermitian,
    make_hatano_nelson,
    make_imaginary_hopping,
    periodic_quadrature,
)


def test_hatano_nelson_band_closed_form():
    kappa, mu, a = 1.3, 0.25, 0.7
    m = make_hatano_nelson(kappa, mu, a=a, F=0.1)
    q = np.linspace(-math.pi / a, math.pi / a, 41)
    expected = 2.0 * kappa * math.cosh(mu) * np.cos(q * a) + 2.0j * kappa * math.sinh(
        mu
    ) * np.sin(q * a)
    assert np.allclose(dispersion(m, q), expected, atol=1e-14)


def test_imaginary_hopping_band_closed_form():
    m = make_imaginary_hopping(0.8, a=1.0, F=0.2)
    q = np.linspace(-math.pi, math.pi, 17)
    assert np.allclose(dispersion(m, q), 2.0j * 0.8 * np.cos(q), atol=1e-15)


def test_dispersion_scalar_and_array_inputs():
    m = make_hatano_nelson(1.0, 0.1)
    d = Dispersion(m)
    val = d(0.3)
    assert isinstance(val, complex)
    arr = d(np.array([0.3, 0.4]))
    assert arr.shape == (2,)
    assert arr[0] == pytest.approx(val, rel=1e-14)
    assert d.real_part(0.3) == pytest.approx(val.real)
    assert d.imag_part(0.3) == pytest.approx(val.imag)


def test_hermiticity_rule():
    assert is_hermitian(make_hatano_nelson(1.0, 0.0))
    assert not is_hermitian(make_hatano_nelson(1.0, 0.1))
    assert not is_hermitian(make_imaginary_hopping(1.0))
    # complex conjugate-symmetric pair is Hermitian
    m = LatticeModel(hoppings={1: 0.5 + 0.2j, -1: 0.5 - 0.2j}, F=0.1)
    assert is_hermitian(m)
    # tolerance argument admits small asymmetry
    m2 = LatticeModel(hoppings={1: 1.0, -1: 1.0 + 1e-12})
    assert not is_hermitian(m2)
    assert is_hermitian(m2, tol=1e-10)


def test_symmetric_antisymmetric_split():
    m = make_hatano_nelson(2.0, 0.3)
    kp, km = 2.0 * math.exp(0.3), 2.0 * math.exp(-0.3)
    assert m.symmetric_hopping == pytest.approx((kp + km) / 2.0)
    assert m.antisymmetric_hopping == pytest.approx((kp - km) / 2.0)
    longer = LatticeModel(hoppings={2: 1.0, -2: 1.0})
    with pytest.raises(ValueError):
        _ = longer.symmetric_hopping


def test_bloch_period():
    m = make_hatano_nelson(1.0, 0.1, a=2.0, F=0.25)
    assert bloch_period(m) == pytest.approx(2.0 * math.pi / 0.5)
    # sign of the force does not change the period
    m_neg = make_hatano_nelson(1.0, 0.1, a=2.0, F=-0.25)
    assert bloch_period(m_neg) == bloch_period(m)
    with pytest.raises(ZeroForceError):
        bloch_period(make_hatano_nelson(1.0, 0.1))


def test_dispersion_integral_single_harmonic_exact():
    kappa = 0.7 + 0.1j
    d = Dispersion(LatticeModel(hoppings={1: kappa}, a=1.0))
    q0, q1 = -0.9, 2.3
    expected = kappa * (np.exp(1j * q1) - np.exp(1j * q0)) / 1j
    assert d.integral(q0, q1) == pytest.approx(expected, rel=1e-15)


def test_dispersion_integral_closed_form():
    """Per-harmonic antiderivative against brute-force quadrature."""
    m = LatticeModel(hoppings={1: 0.7 + 0.1j, -1: 0.4, 2: 0.05j}, a=1.0)
    d = Dispersion(m)
    q0, q1 = -0.9, 2.3
    # trapezoid reference is itself O(h^2) accurate, hence the loose bound
    q = np.linspace(q0, q1, 20001)
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    ref = trapezoid(d(q), q)
    assert d.integral(q0, q1) == pytest.approx(ref, rel=5e-8)


def test_dispersion_integral_properties():
    d = Dispersion(make_hatano_nelson(1.0, 0.1, F=0.2))
    assert d.integral(0.4, 0.4) == 0
    a, b, c = -1.0, 0.3, 2.2
    assert d.integral(a, c) == pytest.approx(d.integral(a, b) + d.integral(b, c))
    # over a full Brillouin zone every harmonic integrates to zero
    assert abs(d.integral(-math.pi, math.pi)) < 1e-14


def test_full_zone_average_matches_quadrature():
    d = Dispersion(make_imaginary_hopping(1.0, F=0.2))
    via_quad = periodic_quadrature(d, 2.0 * math.pi, 64)
    assert abs(via_quad) < 1e-14


def test_model_validation():
    with pytest.raises(ValueError):
        LatticeModel(hoppings={})
    with pytest.raises(ValueError):
        LatticeModel(hoppings={1: 1.0}, a=0.0)
    with pytest.raises(ValueError):
        LatticeModel(hoppings={1: float("nan")})
    with pytest.warns(UserWarning):
        m = LatticeModel(hoppings={0: 5.0, 1: 1.0})
    assert 0 not in m.hoppings


def test_model_is_immutable():
    m = make_hatano_nelson(1.0, 0.1)
    with pytest.raises(AttributeError):
        m.F = 3.0


def test_hatano_nelson_parameter_recovery():
    m = make_hatano_nelson(1.7, 0.35, F=0.1)
    pars = hatano_nelson_parameters(m)
    assert pars is not None
    kappa, mu = pars
    assert kappa == pytest.approx(1.7)
    assert mu == pytest.approx(0.35)
    # Hermitian limit is still of this family
    assert hatano_nelson_parameters(make_hatano_nelson(2.0, 0.0)) is not None
    assert hatano_nelson_parameters(make_imaginary_hopping(1.0)) is None
    assert hatano_nelson_parameters(LatticeModel(hoppings={1: 1.0, -1: -2.0})) is None
    assert hatano_nelson_parameters(LatticeModel(hoppings={2: 1.0, -2: 1.0})) is None


def test_imaginary_hopping_parameter_recovery():
    m = make_imaginary_hopping(0.45, F=0.2)
    assert imaginary_hopping_parameters(m) == pytest.approx(0.45)
    assert imaginary_hopping_parameters(make_hatano_nelson(1.0, 0.1)) is None


def test_factory_labels():
    assert make_hatano_nelson(1.0, 0.1).label == "hatano_nelson"
    assert make_imaginary_hopping(1.0).label == "imaginary_hopping"
