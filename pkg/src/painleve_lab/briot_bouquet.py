"""Order-by-order solver for Briot-Bouquet systems.

A system ``x du/dx = f(u, v, x)``, ``x dv/dx = g(u, v, x)`` with
``f(0, 0, 0) = g(0, 0, 0) = 0`` has a unique holomorphic solution vanishing
at ``x = 0`` as long as no ``Delta_n`` vanishes.  ``f`` and ``g`` are
callables on truncated series, so rational right-hand sides need no
polynomial preprocessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResonanceError
from .series import TruncatedSeries

RESONANCE_TOL = 1e-10
FIXED_POINT_TOL = 1e-10


def _zero_padded(coeffs, n, order, tag):
    c = np.zeros(order + 1, dtype=complex)
    c[:n] = coeffs[:n]
    return TruncatedSeries(c, 0, tag)


@dataclass
class BBSystem:
    """``x u' = f(u, v, x)``, ``x v' = g(u, v, x)`` around ``u = v = 0``.

    ``f`` and ``g`` take ``(u, v, x)`` as truncated series in ``x`` and
    return a truncated series.  ``guard`` extra orders are carried through
    every evaluation so that Laurent intermediates cannot eat the
    coefficient being solved for.
    """

    f: object
    g: object
    tag: str = "t"
    guard: int = 4

    def _eval(self, u, v, order):
        x = TruncatedSeries.variable(order, self.tag)
        return self.f(u, v, x), self.g(u, v, x)

    def _probe(self, u_lin, v_lin, order=3):
        zero = TruncatedSeries.constant(0.0, order, self.tag)
        x = TruncatedSeries.variable(order, self.tag)
        u = x.shifted(0) if u_lin else zero
        v = x.shifted(0) if v_lin else zero
        return self._eval(u, v, order)

    def origin_values(self):
        """``(f, g)`` at the origin; both must vanish."""
        f, g = self._probe(False, False)
        return f.coefficient(0), g.coefficient(0)

    def jacobian(self):
        """``(f_u, f_v, g_u, g_v)`` at the origin from exact affine probes."""
        if not hasattr(self, "_jac"):
            f0, g0 = self._probe(False, False)
            fu, gu = self._probe(True, False)
            fv, gv = self._probe(False, True)
            self._jac = (
                fu.coefficient(1) - f0.coefficient(1),
                fv.coefficient(1) - f0.coefficient(1),
                gu.coefficient(1) - g0.coefficient(1),
                gv.coefficient(1) - g0.coefficient(1),
            )
        return self._jac


def bb_delta(sys, n):
    """``det [[n - f_u, -f_v], [-g_u, n - g_v]]``."""
    fu, fv, gu, gv = sys.jacobian()
    return (n - fu) * (n - gv) - fv * gu


@dataclass(frozen=True)
class BBSolution:
    u: TruncatedSeries
    v: TruncatedSeries
    deltas: tuple


def bb_solve(sys, N):
    """Coefficients ``u_1..u_N``, ``v_1..v_N`` of the holomorphic solution.

    Raises
    ------
    ResonanceError
        When ``|Delta_n| <= 1e-10`` for some ``1 <= n <= N``.
    ValueError
        When the origin is not a fixed point of the system.
    """
    f0, g0 = sys.origin_values()
    if abs(f0) > FIXED_POINT_TOL or abs(g0) > FIXED_POINT_TOL:
        raise ValueError(f"origin is not a fixed point: f={f0:.3e}, g={g0:.3e}")
    fu, fv, gu, gv = sys.jacobian()
    a = np.zeros(N + 1, dtype=complex)
    b = np.zeros(N + 1, dtype=complex)
    deltas = []
    for n in range(1, N + 1):
        delta = bb_delta(sys, n)
        deltas.append(delta)
        if abs(delta) <= RESONANCE_TOL:
            raise ResonanceError(n, delta)
        order = n + sys.guard
        u = _zero_padded(a, n, order, sys.tag)
        v = _zero_padded(b, n, order, sys.tag)
        f, g = sys._eval(u, v, order)
        try:
            rf, rg = f.coefficient(n), g.coefficient(n)
        except IndexError as exc:
            raise ValueError(f"precision lost at order {n}; increase guard") from exc
        m = np.array([[n - fu, -fv], [-gu, n - gv]], dtype=complex)
        a[n], b[n] = np.linalg.solve(m, np.array([rf, rg], dtype=complex))
    return BBSolution(TruncatedSeries(a, 0, sys.tag), TruncatedSeries(b, 0, sys.tag), tuple(deltas))


def bb_residual(sys, sol):
    """``x u' - f(u, v, x)`` and ``x v' - g(u, v, x)`` through order N."""
    N = sol.u.order
    x = TruncatedSeries.variable(N, sys.tag)
    f = sys.f(sol.u, sol.v, x)
    g = sys.g(sol.u, sol.v, x)
    du = sol.u.derivative() * x
    dv = sol.v.derivative() * x
    return (du - f).truncated_at(N + 1), (dv - g).truncated_at(N + 1)
