"""Bessel kernel and periodic quadrature checks.

Reference values were generated once with mpmath at 50 significant digits
(40-term ascending series, the same construction the runtime code uses for
small arguments) and frozen here as literals.
"""

import math

import numpy as np
import pytest

from blochsim import (
    BesselRangeError,
    BesselWorkspace,
    bessel_i,
    bessel_i_sequence,
    bessel_j,
    bessel_j_sequence,
    periodic_quadrature,
)

# (n, x, J_n(x)) at 50-digit precision, rounded to double
J_REFERENCE = [
    (0, 0.5, 0.9384698072408129),
    (1, 2.0, 0.57672480775687339),
    (2, 1.0, 0.11490348493190048),
    (5, 7.7, 0.24783824823626803),
    (0, 10.0, -0.24593576445134834),
    (3, 10.0, 0.058379379305186812),
    (20, 14.1, 0.0030554787899018925),
    (0, 20.0, 0.16702466434058301),
    (7, 20.0, -0.18422139772059443),
    (10, 15.0, -0.090071811047659054),
    (25, 18.0, 0.0016583575225249296),
]

# (n, x, I_n(x)), same provenance
I_REFERENCE = [
    (0, 1.0, 1.2660658777520083),
    (1, 0.5, 0.25789430539089632),
    (2, 3.0, 2.2452124409299512),
    (7, 20.0, 12562873.68617885),
    (0, 20.0, 43558282.559553533),
    (12, 2.0, 2.2541309777790283e-9),
    (3, 10.0, 1758.3807166108532),
]

TWO_PI_I0_ONE = 7.9549265210128453  # 2*pi*I_0(1)


@pytest.mark.parametrize("n,x,expected", J_REFERENCE)
def test_j_matches_reference(n, x, expected):
    assert bessel_j(n, x) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n,x,expected", I_REFERENCE)
def test_i_matches_reference(n, x, expected):
    assert bessel_i(n, x) == pytest.approx(expected, rel=1e-12)


def test_j_deep_underflow_order():
    # Miller recurrence keeps relative accuracy even 20 orders of
    # magnitude below J_0.
    assert bessel_j(40, 10.0) == pytest.approx(6.030895312e-21, rel=1e-9)


@pytest.mark.parametrize("n,x", [(3, 7.0), (4, 7.0), (0, 2.5), (11, 0.8)])
def test_j_parity(n, x):
    sign = -1.0 if n % 2 else 1.0
    assert bessel_j(-n, x) == sign * bessel_j(n, x)
    assert bessel_j(n, -x) == sign * bessel_j(n, x)


@pytest.mark.parametrize("n,x", [(2, 5.0), (5, 5.0), (1, 0.3)])
def test_i_parity(n, x):
    assert bessel_i(-n, x) == bessel_i(n, x)
    assert bessel_i(n, -x) == (-1.0 if n % 2 else 1.0) * bessel_i(n, x)


def test_zero_argument():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(3, 0.0) == 0.0
    assert bessel_i(0, 0.0) == 1.0
    assert bessel_i(5, 0.0) == 0.0


@pytest.mark.parametrize("x", [0.5, 5.0, 15.0, 40.0])
def test_j_sum_of_squares_identity(x):
    # J_0^2 + 2 sum_{k>=1} J_k^2 = 1 for every real argument
    seq = bessel_j_sequence(int(x) + 60, x)
    total = seq[0] ** 2 + 2.0 * np.sum(seq[1:] ** 2)
    assert total == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("x", [1.0, 30.0, 100.0, 700.0])
def test_i_exponential_sum_identity(x):
    # I_0 + 2 sum_{k>=1} I_k = e^x
    n_top = int(x + 6.0 * math.sqrt(x)) + 40
    seq = bessel_i_sequence(n_top, x)
    total = seq[0] + 2.0 * np.sum(seq[1:])
    assert total == pytest.approx(math.exp(x), rel=1e-12)


def test_sequences_match_scalars():
    # the recurrence start depends on the requested top order, so runs of
    # different length agree to rounding, not bit for bit
    xj, xi = 9.25, 6.5
    js = bessel_j_sequence(12, xj)
    iseq = bessel_i_sequence(12, xi)
    for n in range(13):
        assert js[n] == pytest.approx(bessel_j(n, xj), rel=5e-15, abs=5e-16)
        assert iseq[n] == pytest.approx(bessel_i(n, xi), rel=5e-15, abs=5e-16)


def test_workspace_reuse_is_stateless():
    ws = BesselWorkspace(30)
    first = ws.j_sequence(11.0, 30).copy()
    ws.j_sequence(2.0, 30)
    ws.i_sequence(4.0, 30)
    again = ws.j_sequence(11.0, 30)
    assert np.array_equal(first, again)
    assert np.array_equal(first, bessel_j_sequence(30, 11.0))


def test_range_guards():
    with pytest.raises(BesselRangeError):
        bessel_j_sequence(5001, 1.0)
    with pytest.raises(BesselRangeError):
        bessel_j(0, 1.5e4)
    with pytest.raises(BesselRangeError):
        bessel_i(0, 701.0)
    with pytest.raises(BesselRangeError):
        BesselWorkspace(10).j_sequence(1.0, -1)
    with pytest.raises(ValueError):
        BesselWorkspace(-1)


def test_large_argument_stays_finite():
    # near the J argument cap the rescaled recurrence must not overflow
    seq = bessel_j_sequence(200, 1.0e4)
    assert np.all(np.isfinite(seq))
    assert np.abs(seq).max() < 1.0


def test_quadrature_spectral_convergence():
    f = lambda q: np.exp(np.cos(q))
    errs = {
        n: abs(periodic_quadrature(f, 2.0 * math.pi, n) - TWO_PI_I0_ONE)
        for n in (8, 16, 32, 64)
    }
    # geometric convergence: one octave takes the error from ~1e-6 to the
    # rounding floor, after which more nodes cannot help
    assert errs[16] < 1e-3 * errs[8]
    assert errs[16] < 5e-14
    assert errs[32] < 5e-14
    assert errs[64] < 5e-14


def test_quadrature_complex_harmonics():
    # int_0^{2pi} e^{i m q} dq vanishes exactly for integer m != 0
    for m in (1, 2, 5):
        val = periodic_quadrature(lambda q, m=m: np.exp(1j * m * q), 2.0 * math.pi, 32)
        assert abs(val) < 1e-14
    const = periodic_quadrature(lambda q: np.full_like(q, 2.5), 4.0, 16)
    assert const == pytest.approx(10.0)


def test_quadrature_scalar_callable_fallback():
    vec = periodic_quadrature(lambda q: np.cos(q) ** 2, 2.0 * math.pi, 64)
    scal = periodic_quadrature(lambda q: math.cos(q) ** 2, 2.0 * math.pi, 64)
    assert scal == pytest.approx(vec, rel=1e-15)
    assert vec == pytest.approx(math.pi, rel=1e-14)


def test_quadrature_validation():
    with pytest.raises(ValueError):
        periodic_quadrature(np.cos, 2.0 * math.pi, 7)
    with pytest.raises(ValueError):
        periodic_quadrature(np.cos, 0.0, 16)
    with pytest.raises(ValueError):
        periodic_quadrature(lambda q: np.zeros(3), 1.0, 16)
