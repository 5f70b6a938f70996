import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from painleve_lab.calculus import derivatives
from painleve_lab.errors import PoleError
from painleve_lab.series import TruncatedSeries
from painleve_lab.special import gamma, hyp1f1, hyp2f1, rgamma, whittaker_L

mpmath.mp.dps = 30


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(1e-300, abs(complex(b)))


def mp(z):
    return complex(z)


# -- Gamma ---------------------------------------------------------------------------------


def test_gamma_trivial_values():
    assert abs(gamma(1) - 1) < 1e-15
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-15


def test_gamma_against_mpmath():
    z = 0.3 + 0.2j
    assert rel(gamma(z), mp(mpmath.gamma(mpmath.mpc(0.3, 0.2)))) < 1e-14


@pytest.mark.parametrize("z", [2.5 - 1j, -3.7 + 0.4j, 0.01 + 4j, -0.5, 7.25 + 2j])
def test_gamma_matches_mpmath(z):
    assert rel(gamma(z), mp(mpmath.gamma(z))) < 1e-13


def test_gamma_poles_raise_and_rgamma_vanishes():
    for n in (0, -1, -4):
        with pytest.raises(PoleError):
            gamma(n)
        assert rgamma(n) == 0


strip = st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False).filter(
    lambda z: abs(z.real) <= 5 and abs(z.imag) <= 3
    and min(abs(z - round(z.real)), abs(1 - z - round((1 - z).real))) > 1e-3)


@given(strip)
def test_gamma_recurrence(z):
    assert rel(gamma(z + 1), z * gamma(z)) < 1e-12


@given(strip)
def test_gamma_reflection(z):
    assert rel(gamma(z) * gamma(1 - z), math.pi / cmath.sin(math.pi * z)) < 1e-12


# -- Gauss 2F1 ------------------------------------------------------------------------------


def test_hyp2f1_at_zero_is_one():
    assert hyp2f1(0.3, 1.7 + 1j, -0.4, 0) == 1


def test_hyp2f1_log_closed_form():
    assert rel(hyp2f1(1, 1, 2, 0.5), -math.log(0.5) / 0.5) < 1e-15


def test_hyp2f1_against_mpmath():
    assert rel(hyp2f1(0.3, 0.7, 1.2, 0.4), mp(mpmath.hyp2f1(0.3, 0.7, 1.2, 0.4))) < 1e-14


@pytest.mark.parametrize("a,b,c,x", [(0.2 + 0.1j, -1.3, 2.5j, 0.55 - 0.2j),
                                     (1.5, 2.25, 0.75, -0.6), (0.3, 0.4, 1.1, 0.95 + 0.1j)])
def test_hyp2f1_matches_mpmath(a, b, c, x):
    assert rel(hyp2f1(a, b, c, x), mp(mpmath.hyp2f1(a, b, c, x))) < 1e-12


param = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)
small_x = st.complex_numbers(max_magnitude=0.6, allow_nan=False, allow_infinity=False)


@given(param, param, param.filter(lambda c: min(abs(c - n) for n in range(0, -4, -1)) > 0.1),
       small_x)
def test_hyp2f1_euler_transformation(a, b, c, x):
    lhs = hyp2f1(a, b, c, x)
    rhs = (1 - x) ** (c - a - b) * hyp2f1(c - a, c - b, c, x)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


# -- Kummer 1F1 and Whittaker L -----------------------------------------------------------


def test_hyp1f1_at_zero_is_one():
    assert hyp1f1(0.3 + 1j, 1.25, 0) == 1


def test_whittaker_leading_behaviour():
    k, m = 0.2 + 0.1j, 0.3
    x = 1e-6
    assert abs(whittaker_L(k, m, x) / x ** (2 * m + 0.5) - 1) < 1e-10


def test_whittaker_reduction_at_k0_m_quarter():
    x = 1.0
    expected = x * math.exp(-x * x / 2) * mpmath.hyp1f1(0.75, 1.5, x * x)
    assert rel(whittaker_L(0, 0.25, x), mp(expected)) < 1e-14


@pytest.mark.parametrize("k,m,x", [(0.3, -0.15, 1.3 + 0.4j), (-0.1 + 0.2j, 0.35, 0.7 - 1.1j),
                                   (1.2, 0.05, 2.0)])
def test_whittaker_matches_mpmath(k, m, x):
    ref = (mpmath.mpc(x) ** (2 * m + 0.5) * mpmath.exp(-mpmath.mpc(x) ** 2 / 2)
           * mpmath.hyp1f1(m - k + 0.5, 2 * m + 1, mpmath.mpc(x) ** 2))
    assert rel(whittaker_L(k, m, x), mp(ref)) < 1e-12


@pytest.mark.parametrize("k,m", [(0.3, -0.15), (-0.1 + 0.2j, 0.35), (0.0, 0.25)])
def test_whittaker_satisfies_whittaker_equation(k, m):
    # M(xi) = xi^(1/4) L(sqrt xi) solves M'' + (-1/4 + k/xi + (1/4 - m^2)/xi^2) M = 0
    def M(xi):
        return cmath.exp(0.25 * cmath.log(xi)) * whittaker_L(k, m, cmath.sqrt(xi))

    for xi in (0.8 + 0.3j, 1.7 - 0.6j, 3.1 + 0.2j):
        f0, _, f2 = derivatives(M, xi, 0.2, order=2)
        res = f2 + (-0.25 + k / xi + (0.25 - m * m) / xi ** 2) * f0
        assert abs(res) <= 1e-8 * max(1.0, abs(f0))


# -- truncated series ------------------------------------------------------------------------


def series(draw_coeffs, lead=0):
    return TruncatedSeries(draw_coeffs, lead)


def test_difference_of_squares():
    a = TruncatedSeries([1, 1, 0, 0, 0])
    b = TruncatedSeries([1, -1, 0, 0, 0])
    prod = a * b
    assert np.allclose(prod.coefficients(0, 5), [1, 0, -1, 0, 0], atol=0)


def test_derivative_of_square():
    d = TruncatedSeries([1.0], 2).derivative()
    assert d.leading_exponent == 1 and d.coefficient(1) == 2


def test_reciprocal_of_p5_solution_series():
    from painleve_lab.catalog import build_solution
    from painleve_lab.systems import ParamSet
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    y = build_solution("P5_I", p, order=6).y
    prod = y * y.reciprocal()
    # long multiplication oracle for the product, independent of the reciprocal routine
    r = y.reciprocal().coefficients(0, 7)
    c = y.coefficients(0, 7)
    oracle = [sum(c[i] * r[n - i] for i in range(n + 1)) for n in range(7)]
    assert np.allclose(oracle, [1, 0, 0, 0, 0, 0, 0], atol=1e-14)
    assert np.allclose(prod.coefficients(0, 7), [1, 0, 0, 0, 0, 0, 0], atol=1e-14)


def test_arithmetic_never_reads_beyond_order():
    a = TruncatedSeries([1, 2, 3])
    b = TruncatedSeries([1, 1, 1, 1, 1, 1])
    assert (a * b).precision == 3 and (a + b).precision == 3


def test_composition():
    exp_like = TruncatedSeries([1, 1, 0.5, 1 / 6, 1 / 24])
    inner = TruncatedSeries([2.0, 0, 0, 0], 1)
    out = exp_like.compose(inner)
    assert np.allclose(out.coefficients(0, 5), [1, 2, 2, 4 / 3, 2 / 3], atol=1e-15)


def test_non_finite_coefficients_rejected():
    with pytest.raises(ArithmeticError):
        TruncatedSeries([1.0, float("nan")])


coef = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
order12 = st.lists(coef, min_size=13, max_size=13)


def _close(a, b, tol=1e-14):
    ca, cb = a.coefficients(0, 13), b.coefficients(0, 13)
    scale = max(1.0, float(np.abs(ca).max()), float(np.abs(cb).max()))
    return float(np.abs(ca - cb).max()) <= tol * scale


@given(order12, order12, order12)
def test_multiplication_is_associative(a, b, c):
    A, B, C = TruncatedSeries(a), TruncatedSeries(b), TruncatedSeries(c)
    assert _close((A * B) * C, A * (B * C))


@given(order12, order12, order12)
def test_multiplication_distributes(a, b, c):
    A, B, C = TruncatedSeries(a), TruncatedSeries(b), TruncatedSeries(c)
    assert _close(A * (B + C), A * B + A * C)
