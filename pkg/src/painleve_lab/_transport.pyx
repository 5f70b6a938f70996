# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled transport kernel; same contract as ``_transport_py.transport``."""

from libc.math cimport fabs, fmax, fmin, pow as cpow_real
cimport cython

from .errors import StepSizeError

cdef extern from "complex.h":
    double complex cexp(double complex)
    double cabs(double complex)

BACKEND = "cython"

cdef double _C[6]
_C[:] = [0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0]
cdef double _A[6][5]
_A[0][:] = [0.0, 0.0, 0.0, 0.0, 0.0]
_A[1][:] = [1.0 / 5, 0.0, 0.0, 0.0, 0.0]
_A[2][:] = [3.0 / 40, 9.0 / 40, 0.0, 0.0, 0.0]
_A[3][:] = [44.0 / 45, -56.0 / 15, 32.0 / 9, 0.0, 0.0]
_A[4][:] = [19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0.0]
_A[5][:] = [9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656]
cdef double _B[6]
_B[:] = [35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84]
cdef double _E[7]
_E[:] = [71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40]


cdef int _field(double complex[:, ::1] M, double complex[::1] centers, long[::1] powers,
                int kind, double complex p1, double complex p2, double p3, double p4,
                double s, double complex* F) except -1:
    cdef double complex x, dx, e, d, w, inv
    cdef Py_ssize_t k, j
    cdef long n
    if kind == 0:
        x = p1 + (p2 - p1) * s
        dx = p2 - p1
    else:
        e = cexp(1j * (p3 + (p4 - p3) * s))
        x = p1 + p2 * e
        dx = 1j * p2 * (p4 - p3) * e
    F[0] = F[1] = F[2] = F[3] = 0
    for k in range(M.shape[0]):
        n = powers[k]
        w = 1
        if n != 0:
            d = x - centers[k]
            if d == 0:
                raise ZeroDivisionError("path hits a pole of A")
            inv = d if n > 0 else 1 / d
            for j in range(n if n > 0 else -n):
                w = w * inv
        for j in range(4):
            F[j] += M[k, j] * w
    for j in range(4):
        F[j] = F[j] * dx
    return 0


cdef inline void _mul(double complex* F, double complex* Y, double complex* out):
    out[0] = F[0] * Y[0] + F[1] * Y[2]
    out[1] = F[0] * Y[1] + F[1] * Y[3]
    out[2] = F[2] * Y[0] + F[3] * Y[2]
    out[3] = F[2] * Y[1] + F[3] * Y[3]


def transport(coeffs, centers, powers, pieces, Y0, double tol=1e-12, double h0=0.05,
              long max_steps=200000, double hmin=1e-14):
    import numpy as np
    cdef double complex[:, ::1] M = np.ascontiguousarray(
        np.asarray(coeffs, dtype=complex).reshape(-1, 4))
    cdef double complex[::1] C = np.ascontiguousarray(np.asarray(centers, dtype=complex).reshape(-1))
    cdef long[::1] P = np.ascontiguousarray(np.asarray(powers, dtype=np.int64).reshape(-1))
    cdef double complex[:, ::1] rows = np.ascontiguousarray(
        np.asarray(pieces, dtype=complex).reshape(-1, 5))
    cdef double complex Y[4]
    cdef double complex Yi[4]
    cdef double complex Ynew[4]
    cdef double complex Fs[6][4]
    cdef double complex ks[7][4]
    cdef double complex acc
    cdef double s, h, err, scale, fac, p3, p4
    cdef double complex p1, p2
    cdef int kind, i, j, q
    cdef long steps = 0, total = 0
    cdef Py_ssize_t r
    y0 = np.asarray(Y0, dtype=complex)
    Y[0] = y0[0, 0]; Y[1] = y0[0, 1]; Y[2] = y0[1, 0]; Y[3] = y0[1, 1]
    h = h0
    for r in range(rows.shape[0]):
        kind = <int>(rows[r, 0].real + 0.5)
        p1 = rows[r, 1]
        if kind == 0:
            p2 = rows[r, 2]
        else:
            p2 = rows[r, 2].real
        p3 = rows[r, 3].real
        p4 = rows[r, 4].real
        s = 0.0
        steps = 0
        _field(M, C, P, kind, p1, p2, p3, p4, 0.0, Fs[0])
        _mul(Fs[0], Y, ks[0])
        while s < 1.0:
            if steps >= max_steps:
                raise StepSizeError(f"more than {max_steps} steps on one path piece")
            h = fmin(h, 1.0 - s)
            for i in range(1, 6):
                _field(M, C, P, kind, p1, p2, p3, p4, s + _C[i] * h, Fs[i])
                for j in range(4):
                    acc = 0
                    for q in range(i):
                        acc = acc + _A[i][q] * ks[q][j]
                    Yi[j] = Y[j] + h * acc
                _mul(Fs[i], Yi, ks[i])
            scale = 1.0
            for j in range(4):
                acc = 0
                for q in range(6):
                    acc = acc + _B[q] * ks[q][j]
                Ynew[j] = Y[j] + h * acc
                scale = fmax(scale, cabs(Ynew[j]))
            _mul(Fs[5], Ynew, ks[6])
            err = 0.0
            for j in range(4):
                acc = 0
                for q in range(7):
                    acc = acc + _E[q] * ks[q][j]
                err = fmax(err, cabs(h * acc))
            err = err / (tol * scale)
            steps += 1
            if err <= 1.0:
                s += h
                for j in range(4):
                    Y[j] = Ynew[j]
                    Fs[0][j] = Fs[5][j]
                    ks[0][j] = ks[6][j]
                fac = 5.0 if err == 0 else fmin(5.0, 0.9 * cpow_real(err, -0.2))
            else:
                fac = fmax(0.2, 0.9 * cpow_real(err, -0.2))
            h *= fac
            if h < hmin and s < 1.0:
                raise StepSizeError(f"step size underflow at s={s:.6g} (singularity near the path?)")
        total += steps
    return [[Y[0], Y[1]], [Y[2], Y[3]]], total
