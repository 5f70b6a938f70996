"""Lax pairs ``dY/dx = A Y``, ``dY/dt = B Y`` for every Painleve kind.

Matrices are stored as finite sums ``sum M_k (x - c_k)**n_k`` so that both
evaluation and the x-derivative are exact.  The solution of the nonlinear
system enters through a trajectory object that returns the phase point at
any nearby t together with the auxiliary gauge ``log u`` normalized to 0 at
the trajectory's basepoint.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .calculus import derivatives, matrix_derivative, segment_integral
from .errors import ParameterError, PoleError, ResonanceError
from .special import cpow, hyp2f1, whittaker_L
from .systems import K, ParamSet, PhaseState, canonical_shift_p6, gauge_rate, hamiltonian_rhs

SIGMA3 = np.diag([1.0 + 0j, -1.0 + 0j])
ZERO = np.zeros((2, 2), dtype=complex)


def _m(a, b, c, d):
    return np.array([[a, b], [c, d]], dtype=complex)


# -- rational matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class RationalMatrix:
    """``sum_k coeffs[k] * (x - centers[k]) ** powers[k]``."""

    coeffs: np.ndarray
    centers: np.ndarray
    powers: np.ndarray

    @classmethod
    def from_terms(cls, terms):
        terms = [(np.asarray(m, dtype=complex), complex(c), int(n)) for m, c, n in terms]
        if not terms:
            return cls(np.zeros((0, 2, 2), dtype=complex), np.zeros(0, dtype=complex),
                       np.zeros(0, dtype=np.int64))
        return cls(np.array([t[0] for t in terms]), np.array([t[1] for t in terms]),
                   np.array([t[2] for t in terms], dtype=np.int64))

    def __call__(self, x):
        x = complex(x)
        out = np.zeros((2, 2), dtype=complex)
        for m, c, n in zip(self.coeffs, self.centers, self.powers):
            if n < 0 and x == c:
                raise PoleError(f"matrix evaluated at its pole x={c}", location=c)
            out += m * (x - c) ** int(n)
        return out

    def derivative(self):
        terms = [(m * n, c, n - 1) for m, c, n in zip(self.coeffs, self.centers, self.powers)
                 if n != 0]
        return RationalMatrix.from_terms(terms)

    def poles(self):
        return sorted({complex(c) for c, n in zip(self.centers, self.powers) if n < 0},
                      key=lambda z: (z.real, z.imag))

    def residue(self, c):
        """Coefficient of ``1/(x - c)``."""
        out = np.zeros((2, 2), dtype=complex)
        for m, cc, n in zip(self.coeffs, self.centers, self.powers):
            if n == -1 and complex(cc) == complex(c):
                out += m
        return out

    def trace_terms(self):
        return [(complex(np.trace(m)), complex(c), int(n))
                for m, c, n in zip(self.coeffs, self.centers, self.powers)]


# -- trajectories ---------------------------------------------------------------------


class Trajectory:
    """A solution ``t -> (y, conj)`` plus the gauge ``log u`` with ``log u(t0) = 0``."""

    def __init__(self, params, t0):
        self.params = params
        self.t0 = complex(t0)

    def point(self, t):
        raise NotImplementedError

    def _log_u(self, t):
        if gauge_rate(self.params, PhaseState(self.t0, 0j, 1 + 0j)) is None:
            return None

        def rate(s):
            y, c = self.point(s)
            return gauge_rate(self.params, PhaseState(s, y, c))

        return segment_integral(rate, self.t0, t)

    def state(self, t):
        t = complex(t)
        y, c = self.point(t)
        return PhaseState(t, y, c, self._log_u(t))

    def dconj(self, t):
        """``d conj / dt`` from the vector field."""
        return hamiltonian_rhs(self.params, self.state(t))[1]


class SeriesTrajectory(Trajectory):
    """A catalog series solution evaluated at t."""

    def __init__(self, sol, t0, params=None):
        super().__init__(params or sol.params, t0)
        self.sol = sol

    def point(self, t):
        return self.sol.y.evaluate_at_t(t), self.sol.conj.evaluate_at_t(t)


class ExactTrajectory(Trajectory):
    """A closed-form solution given by callables ``y(t)``, ``conj(t)``."""

    def __init__(self, params, y, conj, t0, log_u=None):
        super().__init__(params, t0)
        self._y, self._c, self._lu = y, conj, log_u

    def point(self, t):
        return complex(self._y(t)), complex(self._c(t))

    def _log_u(self, t):
        if self._lu is not None:
            return complex(self._lu(t)) - complex(self._lu(self.t0))
        return super()._log_u(t)


class ODETrajectory(Trajectory):
    """Numerical continuation of the Hamiltonian system from a phase point."""

    def __init__(self, params, start, rtol=1e-13, atol=1e-15):
        super().__init__(params, start.t)
        self.start = start
        self.rtol, self.atol = rtol, atol
        self._cache = {}

    def _integrate(self, t):
        from scipy.integrate import solve_ivp

        t = complex(t)
        if t in self._cache:
            return self._cache[t]
        t0 = self.t0
        d = t - t0
        has_gauge = gauge_rate(self.params, PhaseState(t0, self.start.y, self.start.conj)) is not None
        if d == 0:
            out = (complex(self.start.y), complex(self.start.conj), 0j if has_gauge else None)
            self._cache[t] = out
            return out

        def rhs(s, v):
            z = v[0::2] + 1j * v[1::2]
            dy, dc, dl = hamiltonian_rhs(self.params, PhaseState(t0 + s * d, z[0], z[1]))
            out = np.array([dy, dc, dl or 0j]) * d
            return np.column_stack([out.real, out.imag]).ravel()

        z0 = np.array([self.start.y, self.start.conj, 0j], dtype=complex)
        v0 = np.column_stack([z0.real, z0.imag]).ravel()
        sol = solve_ivp(rhs, (0.0, 1.0), v0, method="DOP853", rtol=self.rtol, atol=self.atol)
        if not sol.success:
            raise PoleError(f"trajectory integration failed: {sol.message}", location=t)
        v = sol.y[:, -1]
        z = v[0::2] + 1j * v[1::2]
        out = (complex(z[0]), complex(z[1]), complex(z[2]) if has_gauge else None)
        self._cache[t] = out
        return out

    def point(self, t):
        y, c, _ = self._integrate(t)
        return y, c

    def _log_u(self, t):
        return self._integrate(t)[2]


def trajectory_for(kind, p, s, t0):
    """Wrap a series, classical solution or phase point as a :class:`Trajectory`."""
    from .catalog import ClassicalSolution, SeriesSolution

    kind = K.parse(kind)
    if isinstance(s, Trajectory):
        return s
    if isinstance(s, SeriesSolution):
        sol = s.as_normalized() if kind is K.P6_NORMALIZED and s.kind is K.P6 else s
        return SeriesTrajectory(sol, t0, p)
    if isinstance(s, ClassicalSolution):
        if kind is K.P6_NORMALIZED and s.params.kind is K.P6:
            def zbar(t, s=s):
                return canonical_shift_p6(s.conj(t), s.y(t), t, s.params, "to_bar")
            return ExactTrajectory(p, s.y, zbar, t0)
        return ExactTrajectory(p, s.y, s.conj, t0)
    if isinstance(s, PhaseState):
        return ODETrajectory(p, s)
    raise ParameterError(f"cannot build a trajectory from {type(s).__name__}")


# -- the pairs ------------------------------------------------------------------------


def _need_gauge(kind, log_u):
    if log_u is None:
        raise ParameterError(f"{kind.value} Lax pair needs the auxiliary gauge u")
    return cmath.exp(log_u)


def p6_normalized_data(p, t, y, zbar, kbar=1.0):
    """Residue data ``(zbar_j, ubar_j)`` for ``j = 0, 1, t`` of the normalized P6 pair."""
    a0, a1, _, a3, a4 = p.alpha
    th0, th1, tht, thi = a4, a3, a0, 1 - a1
    if thi == 0:
        raise PoleError("theta_inf = 0: the normalized residues are undefined", location=0)
    yy = y * (y - 1) * (y - t)
    z0 = (y * yy * zbar ** 2 + thi * yy * zbar + thi ** 2 / 4 * (y - 1) * (y - t)
          - (thi + th0) ** 2 / 4 * t + th1 ** 2 / 4 * y / (y - 1) * (t - 1)
          - tht ** 2 / 4 * t * (t - 1) * y / (y - t)) / (t * thi)
    z1 = -(yy * (y - 1) * zbar ** 2 + thi * yy * zbar + thi ** 2 / 4 * y * (y - t)
           + (thi + th1) ** 2 / 4 * (t - 1) - th0 ** 2 / 4 * (y - 1) / y * t
           - tht ** 2 / 4 * t * (t - 1) * (y - 1) / (y - t)) / ((t - 1) * thi)
    zt = (yy * (y - t) * zbar ** 2 + thi * yy * zbar + thi ** 2 / 4 * y * (y - 1)
          - (thi + tht) ** 2 / 4 * t * (t - 1) - th0 ** 2 / 4 * (y - t) / y * t
          + th1 ** 2 / 4 * (t - 1) * (y - t) / (y - 1)) / (t * (t - 1) * thi)
    u0 = kbar * y / (t * z0)
    u1 = -kbar * (y - 1) / ((t - 1) * z1)
    ut = kbar * (y - t) / (t * (t - 1) * zt)
    return {"0": (z0, u0, th0), "1": (z1, u1, th1), "t": (zt, ut, tht), "inf": thi}


def _residue_p6(zj, uj, thj):
    return _m(zj + thj / 2, -uj * zj, (zj + thj) / uj, -zj - thj / 2)


def _pair_terms(kind, p, s, dconj):
    """``(A terms, B terms, aux)`` at the phase point ``s``."""
    t, y, c = complex(s.t), complex(s.y), complex(s.conj)
    if kind is K.P1:
        z = c
        A = [(_m(0, 1, 0, 0), 0, 2), (_m(0, y, 4, 0), 0, 1), (_m(-z, y * y + t / 2, -4 * y, z), 0, 0)]
        B = [(_m(0, 0.5, 0, 0), 0, 1), (_m(0, y, 2, 0), 0, 0)]
        return A, B, {}
    if kind is K.P2:
        th = p.th("theta")
        u = _need_gauge(kind, s.log_u)
        z = c
        A = [(SIGMA3, 0, 2), (_m(0, u, -2 * z / u, 0), 0, 1),
             (_m(z + t / 2, -u * y, -2 * (th + y * z) / u, -z - t / 2), 0, 0)]
        B = [(SIGMA3 / 2, 0, 1), (_m(0, u, -2 * z / u, 0) / 2, 0, 0)]
        return A, B, {"u": u}
    if kind is K.P3_D8:
        z, dz = c, dconj
        A = [(_m(z, -y, 0, -z), 0, 0), (_m(0, 1, 0, 0), 0, 1),
             (_m(0, 0, -z * z, -2), 0, -1), (_m(0, 0, -(y * z * z + z - 0.25), 0), 0, -2),
             (_m(0, 0, -t * t / (4 * y), 0), 0, -3)]
        B = [(_m(2 * y * z / t, 0, 0, -2 * y * z / t), 0, 0), (_m(0, 2 * y / t, 0, 0), 0, 1),
             (_m(0, 0, t / (2 * y), 0), 0, -2), (_m(0, 0, -(2 * y * z * z + t * dz) / t, 0), 0, -1)]
        return A, B, {"dz": dz}
    if kind is K.P3_D7:
        z, dz = c, dconj
        th0 = p.th("0")
        A = [(_m(0, 0, -y * z * z + th0 * z + 0.25, -t), 0, -2),
             (_m(0, 0, -z * z, th0 - 1), 0, -1),
             (_m(z, -y, 0, -z), 0, 0), (_m(0, 1, 0, 0), 0, 1)]
        B = [(_m(y * z / t, 0, 0, -y * z / t), 0, 0), (_m(0, y / t, 0, 0), 0, 1),
             (_m(0, 0, -(z * z * y + t * dz) / t, 1), 0, -1)]
        return A, B, {"dz": dz}
    if kind is K.P3_D6:
        th0, thi = p.th("0"), p.th("inf")
        z = c
        w = _need_gauge(kind, s.log_u)
        u = -y * z * w
        # G = [[a, b], [c, d]] with a = 1; v from (G^-1 R G)_11 = theta0/2
        ab, cd, adbc = -w * z / t, (t - z) / (t * w), 1 - 2 * z / t
        v = (-thi * adbc / 2 + u * cd - th0 / 2) / ab
        G2 = _m(z - t / 2, -w * z, (z - t) / w, -z + t / 2)
        A = [(SIGMA3 * t / 2, 0, 0), (_m(-thi / 2, u, v, thi / 2), 0, -1), (G2, 0, -2)]
        B = [(SIGMA3 / 2, 0, 1), (_m(0, u, v, 0) / t, 0, 0), (-G2 / t, 0, -1)]
        return A, B, {"u": u, "v": v, "w": w}
    if kind is K.P4:
        th0, thi = p.th("0"), p.th("inf")
        u = _need_gauge(kind, s.log_u)
        w = c
        z = y * w
        A = [(SIGMA3, 0, 1), (_m(t, u, 2 * (z - th0 - thi) / u, -t), 0, 0),
             (_m(-z + th0, -u * y / 2, 2 * w / u * (z - 2 * th0), z - th0), 0, -1)]
        B = [(SIGMA3, 0, 1), (_m(0, u, 2 * (z - th0 - thi) / u, 0), 0, 0)]
        return A, B, {"u": u, "z": z}
    if kind is K.P5:
        t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
        u = _need_gauge(kind, s.log_u)
        w = c
        z = y * w - (t0 + t1 + ti) / 2
        e1 = z + (t0 - t1 + ti) / 2
        e2 = z + (t0 + t1 + ti) / 2
        A = [(SIGMA3 * t / 2, 0, 0),
             (_m(z + t0 / 2, -u * (z + t0), z / u, -z - t0 / 2), 0, -1),
             (_m(-z - (t0 + ti) / 2, u * y * e1, -e2 / (u * y), z + (t0 + ti) / 2), 1, -1)]
        B = [(SIGMA3 / 2, 0, 1),
             (_m(0, -u * (z + t0 - y * e1), (z - e2 / y) / u, 0) / t, 0, 0)]
        return A, B, {"u": u, "z": z}
    if kind in (K.P6, K.P6_NORMALIZED):
        if kind is K.P6:
            zbar = complex(canonical_shift_p6(c, y, t, p, "to_bar"))
        else:
            zbar = c
        kbar = cmath.exp(s.log_u) if s.log_u is not None else 1.0
        data = p6_normalized_data(p, t, y, zbar, kbar)
        res = {j: _residue_p6(*data[j]) for j in ("0", "1", "t")}
        A = [(res["0"], 0, -1), (res["1"], 1, -1), (res["t"], t, -1)]
        B = [(-res["t"], t, -1)]
        if kind is K.P6:
            for j, pole in (("0", 0), ("1", 1), ("t", t)):
                A.append((np.eye(2) * data[j][2] / 2, pole, -1))
            B.append((-np.eye(2) * data["t"][2] / 2, t, -1))
        return A, B, {"kbar": kbar, "zbar": zbar, "residues": data}
    raise ParameterError(f"no Lax pair for {kind}")


@dataclass
class LaxPair:
    """``A(x)``, ``B(x)`` at one deformation time, plus the data they came from."""

    kind: K
    params: ParamSet
    state: PhaseState
    A: RationalMatrix
    B: RationalMatrix
    aux: dict = field(default_factory=dict)
    trajectory: Trajectory = None
    dA_dt: object = None

    @property
    def t(self):
        return self.state.t

    def at(self, t):
        """The same solution's pair at another time (same gauge normalization)."""
        if self.trajectory is None:
            raise ParameterError("this pair has no trajectory to move along")
        return _pair_from_trajectory(self.kind, self.params, self.trajectory, t)

    @classmethod
    def null(cls, kind="P1"):
        zero = RationalMatrix.from_terms([])
        pair = cls(K.parse(kind), None, PhaseState(0j, 0j, 0j), zero, zero)
        pair.trajectory = _ConstantTrajectory(pair)
        return pair


class _ConstantTrajectory(Trajectory):
    def __init__(self, pair):
        self.pair = pair

    def state(self, t):
        return self.pair.state


def _pair_from_trajectory(kind, p, traj, t):
    if isinstance(traj, _ConstantTrajectory):
        return traj.pair
    s = traj.state(t)
    dconj = traj.dconj(t) if kind in (K.P3_D8, K.P3_D7) else None
    A, B, aux = _pair_terms(kind, p, s, dconj)
    return LaxPair(kind, p, s, RationalMatrix.from_terms(A), RationalMatrix.from_terms(B),
                   aux, traj)


def build_pair(kind, p, s, t, t0=None):
    """The Lax pair of ``kind`` along the solution ``s`` at time ``t``.

    ``s`` is a catalog series, a closed-form solution, a phase point (the
    system is integrated from it) or a :class:`Trajectory`.  The gauge is
    normalized by ``u(t0) = 1`` with ``t0 = t`` by default.
    """
    kind = K.parse(kind)
    if p.kind is not kind and not (kind is K.P6_NORMALIZED and p.kind is K.P6):
        p = p.with_kind(kind) if {p.kind, kind} == {K.P6, K.P6_NORMALIZED} else p
    if kind is K.P6_NORMALIZED and p.kind is K.P6:
        p = p.with_kind(K.P6_NORMALIZED)
    t = complex(t)
    t0 = t if t0 is None else complex(t0)
    if isinstance(s, PhaseState) and complex(s.t) != t0:
        t0 = complex(s.t)
    traj = trajectory_for(kind, p, s, t0)
    return _pair_from_trajectory(kind, p, traj, t)


def p5_minus1_pair(theta_inf, t, u0=1.0, t0=None):
    """The pair obtained from ``y = -1`` with ``theta0 = theta1 = 1/2``.

    ``u = u0 * exp((t - t0)/2)``; ``dA_dt`` is the exact t-derivative of A.
    """
    ti = complex(theta_inf)
    t = complex(t)
    t0 = t if t0 is None else complex(t0)
    u = u0 * cmath.exp((t - t0) / 2)

    def terms(t, u):
        return [(SIGMA3 * t / 2, 0, 0),
                (-_m(ti / 4 + t / 8, u * ((1 - ti) / 4 - t / 8),
                     ((1 + ti) / 4 + t / 8) / u, -ti / 4 - t / 8), 0, -1),
                (-_m(ti / 4 - t / 8, u * ((-1 + ti) / 4 - t / 8),
                     -((1 + ti) / 4 - t / 8) / u, -ti / 4 + t / 8), 1, -1)]

    def dterms(t, u):
        # d/dt with du/dt = u/2
        return [(SIGMA3 / 2, 0, 0),
                (-_m(1 / 8, u * ((1 - ti) / 8 - t / 16 - 1 / 8),
                     -((1 + ti) / 8 + t / 16) / u + 1 / (8 * u), -1 / 8), 0, -1),
                (-_m(-1 / 8, u * ((-1 + ti) / 8 - t / 16 - 1 / 8),
                     ((1 + ti) / 8 - t / 16) / u + 1 / (8 * u), 1 / 8), 1, -1)]

    A = RationalMatrix.from_terms(terms(t, u))
    B = RationalMatrix.from_terms([(SIGMA3 / 2, 0, 1), (_m(0, u / 4, -1 / (4 * u), 0), 0, 0)])
    p = ParamSet.from_theta(K.P5, {"0": 0.5, "1": 0.5, "inf": ti})
    state = PhaseState(t, -1 + 0j, -(1 + ti) / 4 + t / 8, cmath.log(u))
    return LaxPair(K.P5, p, state, A, B, {"u": u},
                   dA_dt=RationalMatrix.from_terms(dterms(t, u)))


def integrability_residual(lp, x, t=None, dt=None):
    """Max-entry size of ``dA/dt - dB/dx + [A, B]`` at ``(x, t)``.

    ``dB/dx`` is exact.  ``dA/dt`` is exact when the pair carries it and no
    step is given; otherwise a central difference along the trajectory with
    step ``dt`` (default ``1e-4 * |t|``).
    """
    if t is not None and complex(t) != lp.t:
        lp = lp.at(t)
    x = complex(x)
    A = lp.A(x)
    B = lp.B(x)
    dB = lp.B.derivative()(x)
    if lp.dA_dt is not None and dt is None:
        dA = lp.dA_dt(x)
    elif lp.trajectory is None:
        raise ParameterError("pair has neither an exact dA/dt nor a trajectory")
    else:
        h = dt if dt is not None else 1e-4 * max(abs(lp.t), 1e-3)
        dA = (lp.at(lp.t + h).A(x) - lp.at(lp.t - h).A(x)) / (2 * h)
    R = dA - dB + A @ B - B @ A
    return float(np.abs(R).max())


def constraint_residuals(lp):
    """Residuals of the residue constraints of the normalized P6 pair."""
    if lp.kind not in (K.P6, K.P6_NORMALIZED):
        raise ParameterError("residue constraints exist for P6 only")
    d = lp.aux["residues"]
    thetas = [d[j][2] for j in ("0", "1", "t")] + [d["inf"]]
    z = {j: d[j][0] for j in ("0", "1", "t")}
    u = {j: d[j][1] for j in ("0", "1", "t")}
    th = {j: d[j][2] for j in ("0", "1", "t")}
    t = lp.t
    return {
        "sum_z": abs(sum(z.values()) + sum(thetas) / 2),
        "sum_uz": abs(sum(u[j] * z[j] for j in z)),
        "sum_z_theta_over_u": abs(sum((z[j] + th[j]) / u[j] for j in z)),
        "kbar": abs((t + 1) * u["0"] * z["0"] + t * u["1"] * z["1"] + u["t"] * z["t"]
                    - lp.aux["kbar"]),
    }


def a_infinity(lp):
    """``-sum`` of the residues at the finite poles."""
    return -sum((lp.A.residue(c) for c in lp.A.poles()), np.zeros((2, 2), dtype=complex))


# -- singularities ----------------------------------------------------------------------


@dataclass(frozen=True)
class SingularityInfo:
    location: object
    type: str
    poincare_rank: int
    exponents: np.ndarray


def singularities(lp):
    """Singular points of ``dY/dx = A Y`` with local exponents at the regular ones."""
    out = []
    for c in lp.A.poles():
        order = max(-int(n) for cc, n in zip(lp.A.centers, lp.A.powers) if complex(cc) == c and n < 0)
        if order == 1:
            ev = np.linalg.eigvals(lp.A.residue(c))
            ev = ev[np.argsort(-ev.real)]
            out.append(SingularityInfo(c, "regular", 0, np.diag(ev)))
        else:
            out.append(SingularityInfo(c, "irregular", order - 1, np.zeros((2, 2), dtype=complex)))
    top = max((int(n) for n, m in zip(lp.A.powers, lp.A.coeffs) if np.any(m != 0)), default=-2)
    if top <= -1:
        # dY/dzeta = a_infinity / zeta * Y with zeta = 1/x
        ev = np.linalg.eigvals(a_infinity(lp))
        ev = ev[np.argsort(-ev.real)]
        out.append(SingularityInfo("inf", "regular", 0, np.diag(ev)))
    else:
        out.append(SingularityInfo("inf", "irregular", top + 1, np.zeros((2, 2), dtype=complex)))
    return out


# -- reductions -----------------------------------------------------------------------


@dataclass
class ReducedEquation:
    """A scalar second-order ODE with two closed-form solutions.

    ``residual(f, x)`` evaluates the left-hand side of the ODE on an
    analytic function ``f``; ``matrix_solution``/``matrix_A`` (when present)
    give the fundamental matrix of the first-order system it came from.
    """

    family: str
    parameters: dict
    fundamental_solutions: tuple
    residual: object
    variable: str = "x"
    matrix_solution: object = None
    matrix_A: object = None
    singular_points: tuple = ()

    def solution_residuals(self, x, radius=None):
        return [abs(self.residual(f, x, radius)) for f in self.fundamental_solutions]


def _safe_radius(x, points, radius=None):
    # stay clear of each point and of its principal-branch cut (-inf, p]
    x = complex(x)
    d = [abs(x - complex(p)) for p in points] + [1.0]
    d += [abs(x.imag - complex(p).imag) for p in points if x.real < complex(p).real]
    d = min(d)
    return radius if radius is not None else 0.25 * d


def _second_order_operator(p_coef, q_coef, points):
    """``f'' + P f' + Q f`` evaluated with a circular stencil."""
    def residual(f, x, radius=None):
        r = _safe_radius(x, points, radius)
        f0, f1, f2 = derivatives(f, complex(x), r, order=2)
        return f2 + p_coef(x) * f1 + q_coef(x) * f0
    return residual


def _check_not_integer(value, what):
    v = complex(value)
    n = round(v.real)
    if abs(v - n) < 1e-12:
        raise ResonanceError(int(n), v - n)


def _p4_reduction(p):
    th0, thi = p.th("0"), p.th("inf")
    k = (2 * thi - 1) / 4
    m = (2 * th0 - 1) / 4
    _check_not_integer(2 * m, "2m")
    u = 1.0

    def v(mm):
        return lambda xi: cpow(xi, 0.25) * whittaker_L(k, mm, cmath.sqrt(xi))

    residual = _second_order_operator(
        lambda xi: 0, lambda xi: -0.25 + k / xi + (0.25 - m * m) / (xi * xi), (0,))
    c1 = (-2 * k - 2 * m - 1) / (u * (2 * m + 1))
    c2 = -4 * m / u

    def fundamental(x):
        return _m(whittaker_L(k, m, x), whittaker_L(k, -m, x),
                  c1 * whittaker_L(k + 0.5, m + 0.5, x), c2 * whittaker_L(k + 0.5, -m - 0.5, x))

    def A(x):
        return _m(x + th0 / x, u, -2 * (th0 + thi) / u, -x - th0 / x)

    return ReducedEquation("Whittaker", {"k": k, "m": m, "u": u}, (v(m), v(-m)), residual,
                           "xi", fundamental, A, (0,))


def _eliminated_operator(A, dA, points):
    """Scalar equation for the first component of ``Psi' = A Psi``."""
    def residual(f, x, radius=None):
        r = _safe_radius(x, points, radius)
        f0, f1, f2 = derivatives(f, complex(x), r, order=2)
        a = A(x)
        da = dA(x)
        g = da[0, 1] / a[0, 1] + a[1, 1]
        return f2 - (a[0, 0] * f1 + da[0, 0] * f0 + g * (f1 - a[0, 0] * f0) + a[0, 1] * a[1, 0] * f0)
    return residual


def _p5_reduction(p, u0=1.0):
    t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
    _check_not_integer(t0, "theta0")
    if ti == 0 or t0 - t1 + ti == 0:
        raise ParameterError("solution (I) does not exist for these parameters")
    a0 = (t0 - t1 - ti) / (t0 - t1 + ti)
    b0 = (t0 - t1 + ti) * (t0 + t1 + ti) / (-4 * ti)
    y = a0
    z = y * b0 - (t0 + t1 + ti) / 2
    e1 = z + (t0 - t1 + ti) / 2
    e2 = z + (t0 + t1 + ti) / 2
    R0 = _m(z + t0 / 2, -u0 * (z + t0), z / u0, -z - t0 / 2)
    R1 = _m(-z - (t0 + ti) / 2, u0 * y * e1, -e2 / (u0 * y), z + (t0 + ti) / 2)

    def A(x):
        return R0 / x + R1 / (x - 1)

    def dA(x):
        return -R0 / x ** 2 - R1 / (x - 1) ** 2

    def pre(x, s0):
        return cpow(x, s0 * t0 / 2) * cpow(x - 1, -t1 / 2)

    def psi11(x):
        return pre(x, -1) * hyp2f1((ti - t0 - t1) / 2, 1 - (ti + t0 + t1) / 2, 1 - t0, x)

    def psi12(x):
        return pre(x, 1) * hyp2f1((ti + t0 - t1) / 2, 1 - (ti - t0 + t1) / 2, 1 + t0, x)

    def psi21(x):
        return pre(x, -1) / u0 * hyp2f1(-(ti + t0 + t1) / 2, 1 + (ti - t0 - t1) / 2, 1 - t0, x)

    col2 = z / (z + t0)

    def psi22(x):
        return col2 * pre(x, 1) / u0 * hyp2f1(-(ti - t0 + t1) / 2, 1 + (ti + t0 - t1) / 2, 1 + t0, x)

    def fundamental(x):
        return _m(psi11(x), psi12(x), psi21(x), psi22(x))

    params = {"theta0": t0, "theta1": t1, "theta_inf": ti, "y0": a0, "w0": b0, "z0": z,
              "u0": u0, "column2_factor": col2}
    return ReducedEquation("Gauss2F1", params, (psi11, psi12), _eliminated_operator(A, dA, (0, 1)),
                           "x", fundamental, A, (0, 1))


def _p6_gauss(p):
    a0, a1, a2, a3, a4 = p.alpha
    _check_not_integer(a0 - a4, "alpha0 - alpha4")

    def f1(x):
        return (cpow(x, (a0 - a4) / 2) * cpow(x - 1, -a3 / 2)
                * hyp2f1(a0 + a1 + a2, a0 + a2, 1 + a0 - a4, x))

    def f2(x):
        return (cpow(x, (a4 - a0) / 2) * cpow(x - 1, -a3 / 2)
                * hyp2f1(a1 + a2 + a4, a2 + a4, 1 + a4 - a0, x))

    residual = _second_order_operator(
        lambda x: 1 / x + 1 / (x - 1),
        lambda x: -((a0 - a4) ** 2 / (4 * x * x) + a3 ** 2 / (4 * (x - 1) ** 2)
                    - (1 - a1 ** 2 + a3 ** 2 + (a0 - a4) ** 2) / (4 * x * (x - 1))),
        (0, 1))
    return ReducedEquation("Gauss2F1", {"alpha": tuple(p.alpha)}, (f1, f2), residual, "x",
                           singular_points=(0, 1))


def _p6_heun(p):
    a0, _, _, _, a4 = p.alpha
    if a4 == a0:
        raise ResonanceError(0, 0j)
    s = a4 / (a4 - a0)

    def f1(xi):
        return cpow(xi, -a4 / 2) * cpow(xi - 1, a0 / 2)

    def f2(xi):
        return cpow(xi, a4 / 2) * cpow(xi - 1, -a0 / 2)

    residual = _second_order_operator(
        lambda x: 1 / x + 1 / (x - 1) - 1 / (x - s),
        lambda x: -(a4 ** 2 / (4 * x * x) + a0 ** 2 / (4 * (x - 1) ** 2)
                    + (-a4 ** 2 - a0 ** 2 + (a0 - a4) ** 2) / (4 * x * (x - 1))),
        (0, 1, s))
    return ReducedEquation("HeunWithApparent", {"s": s, "alpha0": a0, "alpha4": a4}, (f1, f2),
                           residual, "xi", singular_points=(0, 1, s))


def reduce_at_limit(kind, sid, p, limit=None, u0=1.0):
    """The closed-form equation obtained from ``sid`` at ``t = 0``.

    P4 symmetric solutions give Whittaker's equation in ``xi = x**2``, P5
    (I) the Gauss equation, P6 (0-I) the Gauss equation (``limit="gauss"``)
    or, with ``x = t xi``, a Heun equation solved by monomials
    (``limit="heun"``).
    """
    kind = K.parse(kind)
    sid = str(sid).upper().replace("-", "_")
    if kind is K.P4 and sid.startswith("P4_SYM"):
        return _p4_reduction(p)
    if kind is K.P5 and sid in ("P5_I", "I"):
        return _p5_reduction(p, u0)
    if kind in (K.P6, K.P6_NORMALIZED) and sid in ("P6_0_I", "0_I"):
        if limit in (None, "gauss"):
            return _p6_gauss(p)
        if limit == "heun":
            return _p6_heun(p)
        raise ParameterError(f"unknown limit {limit!r}")
    raise ParameterError(f"no reduction for {kind.value} {sid}")


# -- Fuchs transformation for y = -1 ------------------------------------------------------


class BranchCutError(ParameterError):
    """A sample (or its stencil) touches the cut of sqrt(x) or sqrt(x - 1)."""


@dataclass
class FuchsReport:
    theta_inf: complex
    scalar_residual: float
    matrix_x_residual: float
    matrix_t_residual: float
    reduced_residual: float
    mapping_residual: float
    tolerances: dict

    @property
    def passed(self):
        t = self.tolerances
        return (self.scalar_residual <= t["scalar"]
                and max(self.matrix_x_residual, self.matrix_t_residual) <= t["matrix"]
                and max(self.reduced_residual, self.mapping_residual) <= t["reduced"])

    def to_dict(self):
        return {"theta_inf": self.theta_inf, "scalar_residual": self.scalar_residual,
                "matrix_x_residual": self.matrix_x_residual,
                "matrix_t_residual": self.matrix_t_residual,
                "reduced_residual": self.reduced_residual,
                "mapping_residual": self.mapping_residual, "passed": self.passed}


def _roots(x):
    return cmath.sqrt(x), cmath.sqrt(x - 1)


def fuchs_fundamental(x, t, theta_inf, c=1.0):
    """The closed-form fundamental matrix of the ``y = -1`` pair."""
    ti = complex(theta_inf)
    sx, sx1 = _roots(x)
    S = sx * sx1
    W = sx + sx1
    pre = cpow(x, -0.25) * cpow(x - 1, -0.25)
    e = cmath.exp
    return pre * _m(e(t / 4 + t / 2 * S) * W ** (1 - ti), e(t / 4 - t / 2 * S) * W ** (-1 + ti),
                    c * e(-t / 4 + t / 2 * S) * W ** (-1 - ti), c * e(-t / 4 - t / 2 * S) * W ** (1 + ti))


def _fuchs_scalar_coeffs(x, t, ti):
    d = 2 * t * x - t + 2 * (1 - ti)
    P = 1 / x + 1 / (x - 1) - 2 * t / d
    Q = -(t * t / 4 + 1 / (16 * x * x) + 1 / (16 * (x - 1) ** 2)
          + 4 * (1 - ti) * t * t / (t * t - 4 * (1 - ti) ** 2) / d
          + (t / 2 + ti / 2 - (ti / 4 + t / 8) * 2 * t / (t - 2 * (1 - ti)) + 1 / 8
             - t * t / 16 - ti * ti / 4 - t * ti / 4) / x
          + (t / 2 - ti / 2 + (ti / 4 - t / 8) * 2 * t / (t + 2 * (1 - ti)) - 1 / 8
             + t * t / 16 + ti * ti / 4 - t * ti / 4) / (x - 1))
    return P, Q, 0.5 - (1 - ti) / t if t != 0 else None


def _check_cuts(x, radius):
    x = complex(x)
    if abs(x.imag) <= radius and x.real - radius < 1:
        raise BranchCutError(f"sample x={x} is within {radius} of the cut (-inf, 1]")


def fuchs_transform_check(theta_inf, samples, c=1.0, radius=0.05):
    """Check the closed-form solutions of the ``y = -1`` linear problem.

    For each ``(x, t)`` sample: the first row of the fundamental matrix
    solves the scalar equation; the matrix solves both ``d/dx`` and ``d/dt``
    equations; after the change of variables to ``xi`` the first row equals
    ``2**(1+a) * xi**a`` with ``a = -1 +- (1 - theta_inf)/2`` and these
    powers solve the reduced Euler equation.
    """
    ti = complex(theta_inf)
    exps = (-1 + (1 - ti) / 2, -1 - (1 - ti) / 2)
    scalar = mx = mt = red = mapping = 0.0
    for x, t in samples:
        x, t = complex(x), complex(t)
        _check_cuts(x, radius)
        u = -cmath.exp(t / 2) / c
        lp = p5_minus1_pair(ti, t, u0=u, t0=t)
        Psi = fuchs_fundamental(x, t, ti, c)
        scale = max(1.0, float(np.abs(Psi).max()))
        P, Q, apparent = _fuchs_scalar_coeffs(x, t, ti)
        r = radius
        if apparent is not None:
            r = min(r, 0.25 * abs(x - apparent))
        for j in range(2):
            f0, f1, f2 = derivatives(lambda s: fuchs_fundamental(s, t, ti, c)[0, j], x, r)
            scalar = max(scalar, abs(f2 + P * f1 + Q * f0) / scale)
        dx = matrix_derivative(lambda s: fuchs_fundamental(s, t, ti, c), x, r)
        dtm = matrix_derivative(lambda s: fuchs_fundamental(x, s, ti, c), t, 0.05)
        mx = max(mx, float(np.abs(dx - lp.A(x) @ Psi).max()) / scale)
        mt = max(mt, float(np.abs(dtm - lp.B(x) @ Psi).max()) / scale)
        # change of variables
        sx, sx1 = _roots(x)
        S = sx * sx1
        log_xi = cmath.log(x - 0.5 + S) + t * S / (1 - ti)
        prefactor = (cpow(x, -0.25) * cpow(x - 1, -0.25) * (x - 0.5 + S)
                     * cmath.exp(t / 4 + t * S / (1 - ti)))
        for j, a in enumerate(exps):
            phi = Psi[0, j] / prefactor
            target = 2 ** (1 + a) * cmath.exp(a * log_xi)
            mapping = max(mapping, abs(phi - target) / max(1.0, abs(target)))
            xi = cmath.exp(log_xi)
            val = cmath.exp(a * log_xi)
            d1 = a * val / xi
            d2 = a * (a - 1) * val / (xi * xi)
            lhs = d2 + 3 / xi * d1 + (1 - ((1 - ti) / 2) ** 2) * val / (xi * xi)
            red = max(red, abs(lhs) / max(1.0, abs(val / (xi * xi))))
    tol = {"scalar": 1e-7, "matrix": 1e-8, "reduced": 1e-12}
    return FuchsReport(ti, scalar, mx, mt, red, mapping, tol)
