"""Pure-Python transport kernel: ``dY/ds = x'(s) A(x(s)) Y`` along a piecewise path.

``A`` is a rational matrix ``sum_k coeffs[k] * (x - centers[k])**powers[k]``.
Each path piece is a row ``(kind, p1, p2, p3, p4)``: ``kind = 0`` is the
segment ``p1 -> p2``; ``kind = 1`` is the arc ``p1 + p2 * exp(i phi)`` with
``phi`` running from ``p3`` to ``p4`` (``p2``, ``p3``, ``p4`` real).
Integration uses the Dormand-Prince 5(4) pair with local error control.
"""

import cmath

from .errors import StepSizeError

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)
_A = ((),
      (1 / 5,),
      (3 / 40, 9 / 40),
      (44 / 45, -56 / 15, 32 / 9),
      (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
      (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656))
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

BACKEND = "python"


def _field(terms, kind, p1, p2, p3, p4, s):
    """``x'(s) A(x(s))`` as a flat 4-tuple."""
    if kind == 0:
        x = p1 + (p2 - p1) * s
        dx = p2 - p1
    else:
        phi = p3 + (p4 - p3) * s
        e = cmath.exp(1j * phi)
        x = p1 + p2 * e
        dx = 1j * p2 * (p4 - p3) * e
    a0 = a1 = a2 = a3 = 0j
    for m0, m1, m2, m3, c, n in terms:
        if n == 0:
            w = 1.0
        else:
            d = x - c
            if d == 0:
                raise ZeroDivisionError("path hits a pole of A")
            w = d ** n
        a0 += m0 * w
        a1 += m1 * w
        a2 += m2 * w
        a3 += m3 * w
    return (dx * a0, dx * a1, dx * a2, dx * a3)


def _mul(F, Y):
    return (F[0] * Y[0] + F[1] * Y[2], F[0] * Y[1] + F[1] * Y[3],
            F[2] * Y[0] + F[3] * Y[2], F[2] * Y[1] + F[3] * Y[3])


def _piece(terms, row, Y, tol, h, max_steps, hmin):
    kind = int(round(row[0].real))
    p1 = complex(row[1])
    p2, p3, p4 = (complex(row[2]), row[3].real, row[4].real) if kind == 0 else (
        row[2].real, row[3].real, row[4].real)
    s = 0.0
    steps = 0
    F0 = _field(terms, kind, p1, p2, p3, p4, 0.0)
    k1 = _mul(F0, Y)
    while s < 1.0:
        if steps >= max_steps:
            raise StepSizeError(f"more than {max_steps} steps on one path piece")
        h = min(h, 1.0 - s)
        Fs = [F0] + [_field(terms, kind, p1, p2, p3, p4, s + c * h) for c in _C[1:]]
        ks = [k1]
        for i in range(1, 6):
            a = _A[i]
            Yi = tuple(Y[j] + h * sum(a[q] * ks[q][j] for q in range(i)) for j in range(4))
            ks.append(_mul(Fs[i], Yi))
        Ynew = tuple(Y[j] + h * sum(_B[q] * ks[q][j] for q in range(6)) for j in range(4))
        k7 = _mul(Fs[5], Ynew)
        ks.append(k7)
        scale = max(1.0, max(abs(v) for v in Ynew))
        err = max(abs(h * sum(_E[q] * ks[q][j] for q in range(7))) for j in range(4)) / (tol * scale)
        steps += 1
        if err <= 1.0:
            s += h
            Y = Ynew
            F0 = Fs[5]
            k1 = k7
            fac = 5.0 if err == 0 else min(5.0, 0.9 * err ** -0.2)
        else:
            fac = max(0.2, 0.9 * err ** -0.2)
        h *= fac
        if h < hmin and s < 1.0:
            raise StepSizeError(f"step size underflow at s={s:.6g} (singularity near the path?)")
    return Y, steps, h


def transport(coeffs, centers, powers, pieces, Y0, tol=1e-12, h0=0.05, max_steps=200000,
              hmin=1e-14):
    """Transport ``Y0`` (2x2) along ``pieces``; returns ``(Y, total_steps)``.

    ``coeffs`` is ``(m, 2, 2)``, ``centers`` ``(m,)`` complex, ``powers``
    ``(m,)`` integer; ``pieces`` is ``(n, 5)`` complex.  ``tol`` bounds the
    local error of each accepted step relative to ``max(1, |Y|)``.
    """
    terms = [(complex(M[0][0]), complex(M[0][1]), complex(M[1][0]), complex(M[1][1]),
              complex(c), int(n)) for M, c, n in zip(coeffs, centers, powers)]
    Y = (complex(Y0[0][0]), complex(Y0[0][1]), complex(Y0[1][0]), complex(Y0[1][1]))
    total = 0
    h = h0
    for row in pieces:
        row = [complex(v) for v in row]
        Y, steps, h = _piece(terms, row, Y, tol, h, max_steps, hmin)
        total += steps
    return [[Y[0], Y[1]], [Y[2], Y[3]]], total
