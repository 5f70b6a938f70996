"""Complex Gamma, Gauss and Kummer hypergeometric functions, Whittaker L.

All branches are principal: ``x**a = exp(a * Log x)`` with the cut on the
negative real axis.
"""

from __future__ import annotations

import cmath
import math

from .errors import ConvergenceError, PoleError

# Godfrey's Lanczos coefficients, g = 607/128, 15 terms.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

_EPS = 2.0 ** -53
_MAX_TERMS = 20000


def _nonpositive_integer(z, tol=0.0):
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= tol


def sinpi(z):
    """sin(pi z) with the argument reduced exactly near integers."""
    z = complex(z)
    n = round(z.real)
    s = cmath.sin(math.pi * (z - n))
    return -s if n % 2 else s


def cospi(z):
    z = complex(z)
    n = round(z.real)
    c = cmath.cos(math.pi * (z - n))
    return -c if n % 2 else c


def expipi(a):
    """exp(i pi a)."""
    return cmath.exp(1j * math.pi * complex(a))


def _lanczos_log(z):
    """log Gamma(z) for Re z >= 1/2 (principal branch of the pieces)."""
    z = z - 1.0
    acc = _LANCZOS_C[0]
    for j in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[j] / (z + j)
    tt = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * cmath.log(tt) - tt + cmath.log(acc)


def gamma(z):
    """Gamma function of a complex argument.

    Raises
    ------
    PoleError
        At ``z = 0, -1, -2, ...``.
    """
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}", location=z)
    if z.real < 0.5:
        return math.pi / (sinpi(z) * cmath.exp(_lanczos_log(1.0 - z)))
    return cmath.exp(_lanczos_log(z))


def rgamma(z):
    """1/Gamma(z), entire: exactly zero at the poles of Gamma."""
    z = complex(z)
    if _nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return sinpi(z) * cmath.exp(_lanczos_log(1.0 - z)) / math.pi
    return cmath.exp(-_lanczos_log(z))


def _tail_ratio_bound(n, abs_num, abs_den, x_abs):
    """Upper bound for |term ratio| at every index >= n.

    The ratio is ``x * prod(num_i + k) / prod(den_j + k)`` with ``k + 1``
    included in ``den``.  For ``k`` past every ``|den_j|`` each factor
    ``(k + A)/(k - B)`` decreases in ``k``, so the value at ``n`` bounds the
    whole tail (a bound of 1 is used when the factor falls below one).
    """
    bound = x_abs
    for a in abs_num:
        bound *= (n + a)
    for d in abs_den:
        if n - d <= 0:
            return math.inf
        bound /= (n - d)
    return max(bound, x_abs)


def hyp2f1(a, b, c, x):
    """Gauss hypergeometric function by its power series (|x| < 1).

    Summation stops once a rigorous geometric bound on the remaining tail
    is below double-precision resolution of the partial sum.
    """
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    if _nonpositive_integer(c):
        raise PoleError(f"2F1 lower parameter c={c} is a non-positive integer", location=c)
    if x == 0:
        return 1.0 + 0j
    if abs(x) >= 1.0:
        raise ConvergenceError(f"2F1 series does not converge at |x|={abs(x):.3g}")
    xa = abs(x)
    term = 1.0 + 0j
    total = 1.0 + 0j
    dens = (abs(c), -1.0)
    for n in range(_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        if term == 0:
            return total
        k = n + 1
        rho = _tail_ratio_bound(k, (abs(a), abs(b)), dens, xa)
        if rho < 1.0 and abs(term) * rho / (1.0 - rho) <= _EPS * max(abs(total), 1e-300):
            return total
    raise ConvergenceError("2F1 series did not converge")


def hyp2f1_derivative(a, b, c, x):
    """d/dx 2F1(a,b;c;x)."""
    a, b, c = complex(a), complex(b), complex(c)
    return a * b / c * hyp2f1(a + 1, b + 1, c + 1, x)


def _hyp1f1_series(a, b, z):
    za = abs(z)
    term = 1.0 + 0j
    total = 1.0 + 0j
    dens = (abs(b), -1.0)
    for n in range(_MAX_TERMS):
        term *= (a + n) / ((b + n) * (n + 1)) * z
        total += term
        if term == 0:
            return total
        k = n + 1
        rho = _tail_ratio_bound(k, (abs(a),), dens, za)
        if rho < 1.0 and abs(term) * rho / (1.0 - rho) <= _EPS * max(abs(total), 1e-300):
            return total
    raise ConvergenceError("1F1 series did not converge")


def hyp1f1(a, b, z):
    """Kummer confluent hypergeometric function M(a, b, z).

    For Re z < 0 Kummer's transformation ``M(a,b,z) = e^z M(b-a,b,-z)``
    keeps the series free of cancellation.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if _nonpositive_integer(b):
        raise PoleError(f"1F1 lower parameter b={b} is a non-positive integer", location=b)
    if z == 0:
        return 1.0 + 0j
    if z.real < 0:
        return cmath.exp(z) * _hyp1f1_series(b - a, b, -z)
    return _hyp1f1_series(a, b, z)


def whittaker_L(k, m, x):
    """``x**(2m+1/2) * exp(-x**2/2) * 1F1(m-k+1/2, 2m+1; x**2)``.

    This is ``xi**(-1/4) M_{k,m}(xi)`` with ``xi = x**2``; the power uses the
    principal branch of ``Log x``.
    """
    k, m, x = complex(k), complex(m), complex(x)
    b = 2.0 * m + 1.0
    if _nonpositive_integer(b):
        raise PoleError(f"Whittaker L: 2m+1={b} is a non-positive integer", location=b)
    p = 2.0 * m + 0.5
    if x == 0:
        if p.real > 0:
            return 0j
        if p == 0:
            return 1.0 + 0j
        raise PoleError("Whittaker L is singular at x=0 for Re(2m+1/2) < 0", location=0)
    x2 = x * x
    return cmath.exp(p * cmath.log(x) - 0.5 * x2) * hyp1f1(m - k + 0.5, b, x2)


def whittaker_L_derivative(k, m, x):
    """d/dx of :func:`whittaker_L`."""
    k, m, x = complex(k), complex(m), complex(x)
    a = m - k + 0.5
    b = 2.0 * m + 1.0
    p = 2.0 * m + 0.5
    if x == 0:
        raise PoleError("derivative of Whittaker L at x=0", location=0)
    x2 = x * x
    pref = cmath.exp(p * cmath.log(x) - 0.5 * x2)
    m0 = hyp1f1(a, b, x2)
    m1 = hyp1f1(a + 1.0, b + 1.0, x2)
    return pref * ((p / x - x) * m0 + 2.0 * x * (a / b) * m1)


def cpow(x, a):
    """Principal-branch power ``x**a``."""
    x = complex(x)
    if x == 0:
        if complex(a).real > 0:
            return 0j
        raise PoleError("0 raised to a power with non-positive real part", location=0)
    return cmath.exp(complex(a) * cmath.log(x))
