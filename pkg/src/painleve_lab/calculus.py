"""Numerical differentiation and quadrature for analytic functions."""

from __future__ import annotations

import numpy as np

_GL_CACHE = {}


def taylor_coefficients(f, x, radius, n=32):
    """Taylor coefficients ``c_0..c_{n-1}`` of an analytic ``f`` at ``x``.

    Uses the trapezoid rule on the circle ``|z - x| = radius``; the error
    decays like ``(radius / R)**n`` where ``R`` is the distance from ``x``
    to the nearest singularity of ``f``.
    """
    theta = 2 * np.pi * np.arange(n) / n
    z = x + radius * np.exp(1j * theta)
    vals = np.array([complex(f(complex(zi))) for zi in z])
    c = np.fft.fft(vals) / n
    return c / radius ** np.arange(n)


def derivatives(f, x, radius, order=2, n=32):
    """``[f(x), f'(x), ..., f^(order)(x)]`` from :func:`taylor_coefficients`."""
    c = taylor_coefficients(f, x, radius, n)
    fact = 1.0
    out = []
    for k in range(order + 1):
        if k:
            fact *= k
        out.append(c[k] * fact)
    return out


def matrix_derivative(F, x, radius, n=32):
    """Entrywise first derivative of a 2x2 matrix-valued analytic function."""
    theta = 2 * np.pi * np.arange(n) / n
    z = x + radius * np.exp(1j * theta)
    vals = np.array([np.asarray(F(complex(zi)), dtype=complex) for zi in z])
    c = np.fft.fft(vals, axis=0) / n
    return c[1] / radius


def gauss_legendre(n):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def segment_integral(g, a, b, n=24, pieces=None):
    """Integral of ``g`` along the straight segment from ``a`` to ``b``.

    The segment is split into pieces no longer than 0.25 so that
    Gauss-Legendre with ``n`` nodes per piece stays near machine precision.
    """
    a, b = complex(a), complex(b)
    if a == b:
        return 0j
    if pieces is None:
        pieces = max(1, int(np.ceil(abs(b - a) / 0.25)))
    nodes, weights = gauss_legendre(n)
    total = 0j
    for k in range(pieces):
        lo = a + (b - a) * k / pieces
        hi = a + (b - a) * (k + 1) / pieces
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        total += half * sum(w * complex(g(mid + half * s)) for s, w in zip(nodes, weights))
    return total
