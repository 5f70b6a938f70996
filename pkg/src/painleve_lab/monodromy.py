"""Monodromy of the linear problem: numerical loops and closed-form matrices.

Path convention: if ``Y`` is continued along ``gamma`` then ``Y -> Y M``.
Continuing along ``gamma_1`` and then ``gamma_2`` gives ``M_2 M_1``, so the
product ``M_inf M_1 M_t M_0`` belongs to the path that circles 0 first.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, ParameterError, PoleError
from .lax import RationalMatrix, build_pair
from .special import gamma, rgamma
from .systems import K, ParamSet
from .transport import BACKEND, transport

I2 = np.eye(2, dtype=complex)
LOCAL_TOL = 1e-12
PICARD_REFERENCE = {"c2": 1 / 3, "p0t": 1.0}


def picard_p0t(c2):
    """Reference trace ``p_0t = -2 cos(2 pi c2)`` of the elliptic-function family."""
    return -2 * math.cos(2 * math.pi * c2)


def _e(a):
    return cmath.exp(1j * math.pi * complex(a))


def _mat(a, b, c, d):
    return np.array([[a, b], [c, d]], dtype=complex)


# -- paths ------------------------------------------------------------------------------


@dataclass(frozen=True)
class LoopPath:
    """A closed path from ``basepoint`` made of segments and circular arcs.

    Each piece is ``("seg", a, b)`` or ``("arc", center, radius, phi0, phi1)``
    (counter-clockwise when ``phi1 > phi0``).
    """

    basepoint: complex
    pieces: tuple
    encircled: str = ""

    def as_array(self):
        rows = []
        for pc in self.pieces:
            if pc[0] == "seg":
                rows.append([0, pc[1], pc[2], 0, 0])
            else:
                rows.append([1, pc[1], pc[2], pc[3], pc[4]])
        return np.array(rows, dtype=complex).reshape(-1, 5)

    def sample(self, per_piece=256):
        """Points along the path, in order."""
        out = []
        s = np.linspace(0.0, 1.0, per_piece + 1)
        for pc in self.pieces:
            if pc[0] == "seg":
                out.extend(complex(pc[1]) + (complex(pc[2]) - complex(pc[1])) * s)
            else:
                phi = pc[3] + (pc[4] - pc[3]) * s
                out.extend(complex(pc[1]) + pc[2] * np.exp(1j * phi))
        return np.array(out)

    def length(self):
        total = 0.0
        for pc in self.pieces:
            if pc[0] == "seg":
                total += abs(complex(pc[2]) - complex(pc[1]))
            else:
                total += abs(pc[2] * (pc[4] - pc[3]))
        return total

    def clearance(self, points):
        """Smallest distance from ``points`` to the path."""
        if not len(points):
            return math.inf
        best = math.inf
        for pc in self.pieces:
            for p in points:
                p = complex(p)
                if pc[0] == "seg":
                    a, b = complex(pc[1]), complex(pc[2])
                    d = b - a
                    s = 0.0 if d == 0 else min(1.0, max(0.0, ((p - a) * d.conjugate()).real / abs(d) ** 2))
                    best = min(best, abs(a + s * d - p))
                else:
                    c, r, p0, p1 = complex(pc[1]), pc[2], pc[3], pc[4]
                    phi = np.linspace(p0, p1, 2049)
                    best = min(best, float(np.abs(c + r * np.exp(1j * phi) - p).min()))
        return best

    def winding(self, point):
        z = self.sample() - complex(point)
        return int(round(float(np.sum(np.angle(z[1:] / z[:-1]))) / (2 * math.pi)))

    def is_closed(self, tol=1e-12):
        pts = self.sample(1)
        return abs(pts[0] - pts[-1]) <= tol and abs(pts[0] - self.basepoint) <= tol


def _polygon_arc(center, radius, phi0, phi1, sides):
    angles = np.linspace(phi0, phi1, sides + 1)
    verts = [complex(center) + radius * cmath.exp(1j * a) for a in angles]
    return [("seg", verts[i], verts[i + 1]) for i in range(sides)]


def loop_around(point, basepoint=-1.0, radius=0.05, approach=0.5, shape="circle",
                orientation=1, label=""):
    """Loop from ``basepoint`` to ``point + i*approach``, down to the circle, once around.

    ``shape="octagon"`` replaces the circle by the inscribed regular octagon
    with the same first vertex, which is homotopic in the punctured disc.
    """
    p, x0 = complex(point), complex(basepoint)
    top = p + 1j * approach
    start = p + 1j * radius
    phi0 = math.pi / 2
    phi1 = phi0 + 2 * math.pi * orientation
    if shape == "circle":
        body = [("arc", p, float(radius), phi0, phi1)]
    elif shape == "octagon":
        body = _polygon_arc(p, radius, phi0, phi1, 8)
    else:
        raise ParameterError(f"unknown loop shape {shape!r}")
    pieces = [("seg", x0, top), ("seg", top, start)] + body + [("seg", start, top), ("seg", top, x0)]
    return LoopPath(x0, tuple(pieces), label)


def loop_at_infinity(basepoint=-1.0, center=0.5, radius=3.0, shape="circle", orientation=-1,
                     label="inf"):
    """Large circle (clockwise by default) joined radially to the basepoint."""
    x0, c = complex(basepoint), complex(center)
    d = x0 - c
    phi0 = cmath.phase(d) if d != 0 else math.pi
    join = c + radius * cmath.exp(1j * phi0)
    phi1 = phi0 + 2 * math.pi * orientation
    body = ([("arc", c, float(radius), phi0, phi1)] if shape == "circle"
            else _polygon_arc(c, radius, phi0, phi1, 8))
    return LoopPath(x0, tuple([("seg", x0, join)] + body + [("seg", join, x0)]), label)


# -- integration ------------------------------------------------------------------------


def _as_rational(A):
    if isinstance(A, RationalMatrix):
        return A
    if A is None or (np.isscalar(A) and A == 0):
        return RationalMatrix.from_terms([])
    if isinstance(A, (list, tuple)):
        return RationalMatrix.from_terms(A)
    M = np.asarray(A, dtype=complex)
    if M.shape == (2, 2):
        return RationalMatrix.from_terms([(M, 0, 0)])
    raise ParameterError("A must be a RationalMatrix, a term list or a constant 2x2 matrix")


def integrate_loop(A, path, seed_basis=None, tol=LOCAL_TOL, clearance=1e-3):
    """Monodromy ``M`` with ``Y(end) = Y(start) M`` for ``dY/dx = A(x) Y``.

    ``A`` is a :class:`RationalMatrix` (or a term list or constant matrix).
    The seed basis defaults to the identity.
    """
    A = _as_rational(A)
    Y0 = I2 if seed_basis is None else np.asarray(seed_basis, dtype=complex)
    det = np.linalg.det(Y0)
    if abs(det) < 1e-14 * max(1.0, float(np.abs(Y0).max()) ** 2):
        raise ParameterError("seed basis is not invertible")
    poles = A.poles()
    if path.clearance(poles) < clearance:
        raise ParameterError(f"path passes within {clearance} of a singular point")
    Y, _ = transport(A.coeffs, A.centers, A.powers, path.as_array(), Y0, tol=tol)
    return np.linalg.solve(Y0, np.array(Y, dtype=complex))


# -- data types -------------------------------------------------------------------------


@dataclass
class MonodromyData:
    kind: K
    matrices: dict
    source: str
    solution_id: str = ""
    params: ParamSet = None
    t: complex = None
    info: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.matrices[key]

    def to_dict(self):
        return {"kind": self.kind.value, "id": self.solution_id, "source": self.source,
                "t": self.t, "matrices": dict(self.matrices), "info": dict(self.info)}


@dataclass
class TraceInvariants:
    traces: dict
    pairs: dict

    def to_dict(self):
        return {"traces": dict(self.traces), "pairs": dict(self.pairs)}

    def max_difference(self, other):
        keys = [("traces", k) for k in self.traces if k in other.traces]
        keys += [("pairs", k) for k in self.pairs if k in other.pairs]
        return max((abs(getattr(self, a)[k] - getattr(other, a)[k]) for a, k in keys),
                   default=0.0)


# -- numerical P6 -----------------------------------------------------------------------


@dataclass(frozen=True)
class LoopConfig:
    basepoint: complex = -1.0
    tol: float = LOCAL_TOL
    shape: str = "circle"
    approach: float = 0.5
    infinity_center: complex = 0.5
    infinity_radius: float = 3.0
    max_t: float = 0.3

    @classmethod
    def from_mapping(cls, cfg):
        if cfg is None:
            return cls()
        if isinstance(cfg, cls):
            return cfg
        return cls(**dict(cfg))


def p6_loops(t, cfg=None):
    """Loops about ``0, t, 1, inf`` from a common basepoint."""
    cfg = LoopConfig.from_mapping(cfg)
    pts = {"0": 0j, "t": complex(t), "1": 1 + 0j}
    vals = list(pts.values())
    gaps = [abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:]]
    radius = 0.5 * min(gaps + [abs(complex(cfg.basepoint) - v) for v in vals])
    approach = max(cfg.approach, max(v.imag for v in vals) + 0.5)
    loops = {j: loop_around(p, cfg.basepoint, radius, approach, cfg.shape, 1, j)
             for j, p in pts.items()}
    loops["inf"] = loop_at_infinity(cfg.basepoint, cfg.infinity_center, cfg.infinity_radius,
                                    cfg.shape)
    return loops


def series_radius(s, tail=6):
    """Root-test estimate of the convergence radius from the last coefficients."""
    c = np.asarray(s.coeffs)
    ests = []
    for j in range(max(1, c.size - tail), c.size):
        n = j + s.leading_exponent
        if n > 0 and c[j] != 0:
            ests.append(abs(c[j]) ** (-1.0 / n))
    return min(ests) if ests else math.inf


def numerical_monodromy_p6(p, sol, t, cfg=None):
    """``M_0, M_t, M_1, M_inf`` of the normalized P6 pair along ``sol`` at ``t``.

    Raises
    ------
    ConvergenceError
        When ``|t|`` exceeds half the estimated radius of the series.
    """
    cfg = LoopConfig.from_mapping(cfg)
    t = complex(t)
    if abs(t) > cfg.max_t:
        raise ParameterError(f"|t| = {abs(t):.3g} exceeds the series range {cfg.max_t}")
    if hasattr(sol, "y") and hasattr(sol.y, "coeffs"):
        r = min(series_radius(sol.y), series_radius(sol.conj))
        if abs(t) > 0.5 * r:
            raise ConvergenceError(f"|t| = {abs(t):.3g} is beyond half the series radius {r:.3g}")
    lp = build_pair(K.P6_NORMALIZED, p, sol, t)
    loops = p6_loops(t, cfg)
    mats = {"M" + j: integrate_loop(lp.A, loops[j], tol=cfg.tol) for j in ("0", "t", "1", "inf")}
    return MonodromyData(K.P6_NORMALIZED, mats, "numeric", getattr(sol, "id", ""), p, t,
                         {"basepoint": complex(cfg.basepoint), "backend": BACKEND,
                          "shape": cfg.shape})


def p5_large_loop_trace(p, sol, t, radius=2.0, center=0.5, tol=LOCAL_TOL):
    """Trace of the monodromy around a circle enclosing both x=0 and x=1 for P5."""
    lp = build_pair(K.P5, p, sol, t)
    path = loop_at_infinity(center - radius - 0.5, center, radius, orientation=1, label="0+1")
    return complex(np.trace(integrate_loop(lp.A, path, tol=tol)))


# -- closed forms -----------------------------------------------------------------------


def _p4_closed(p):
    th0, thi = p.th("0"), p.th("inf")
    k = (2 * thi - 1) / 4
    m = (2 * th0 - 1) / 4
    g = gamma
    M0 = np.diag([-_e(4 * m), -_e(-4 * m)])
    info = {"k": k, "m": m}
    try:
        G = _mat(g(-2 * m) * rgamma(0.5 - m - k), g(-2 * m) * _e(-(k + m + 0.5)) * rgamma(0.5 - m + k),
                 g(2 * m) * rgamma(0.5 + m - k), g(2 * m) * _e(-(k - m + 0.5)) * rgamma(0.5 + m + k))
    except PoleError:
        # 2m integer: the connection matrix is undefined, the Stokes data are not
        G = None
        info["resonant"] = "2m is an integer; Gamma is undefined"
    P = 2 * math.pi * rgamma(0.5 - m - k) * rgamma(0.5 + m - k)
    Q = 2 * math.pi * rgamma(0.5 - m + k) * rgamma(0.5 + m + k)
    mats = {
        "M0": M0, "Gamma": G,
        "G1": _mat(1, 0, _e(-0.5 + 2 * k) * P, 1), "G2": _mat(1, _e(-0.5 - 4 * k) * Q, 0, 1),
        "G3": _mat(1, 0, _e(-0.5 + 6 * k) * P, 1), "G4": _mat(1, _e(-0.5 - 8 * k) * Q, 0, 1),
        "E": np.diag([-_e(-4 * k), -_e(4 * k)]),
    }
    if G is None:
        del mats["Gamma"]
    return mats, info


def _p5_closed(p):
    t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
    g, rg = gamma, rgamma
    G0 = _mat(_e(-(ti - t1 - t0) / 2) * g(1 - t0) * g(1 - ti) * rg(1 - (ti + t1 + t0) / 2)
              * rg(1 - (ti - t1 + t0) / 2),
              _e(-(ti - t1 + t0) / 2) * g(1 + t0) * g(1 - ti) * rg(1 - (ti - t1 - t0) / 2)
              * rg(1 - (ti + t1 - t0) / 2),
              -_e((ti + t1 + t0) / 2) * g(1 - t0) * g(ti - 1) * rg((ti - t1 - t0) / 2)
              * rg((ti + t1 - t0) / 2),
              -_e((ti + t1 - t0) / 2) * g(1 + t0) * g(ti - 1) * rg((ti - t1 + t0) / 2)
              * rg((ti + t1 + t0) / 2))
    G1 = _mat(g(1 - t1) * g(1 - ti) * rg(1 - (ti + t1 + t0) / 2) * rg(1 - (ti + t1 - t0) / 2),
              _e(t1) * g(1 + t1) * g(1 - ti) * rg(1 - (ti - t1 + t0) / 2) * rg(1 - (ti - t1 - t0) / 2),
              g(1 - t1) * g(ti - 1) * rg((ti - t1 - t0) / 2) * rg((ti - t1 + t0) / 2),
              _e(t1) * g(1 + t1) * g(ti - 1) * rg((ti + t1 - t0) / 2) * rg((ti + t1 + t0) / 2))
    mats = {"M0": np.diag([_e(-t0), _e(t0)]), "M1": np.diag([_e(-t1), _e(t1)]),
            "Gamma0inf": G0, "Gamma1inf": G1, "G1": I2.copy(), "G2": I2.copy(),
            "E": np.diag([_e(ti), _e(-ti)])}
    return mats, {}


def _p5_minus1_closed(p):
    ti = p.th("inf")
    mats = {"M0": _mat(0, 1j * _e(ti), 1j * _e(-ti), 0), "M1": _mat(0, -1j, -1j, 0),
            "Gamma0inf": I2.copy(), "Gamma1inf": I2.copy(), "G1": I2.copy(), "G2": I2.copy(),
            "E": np.diag([_e(-ti), _e(ti)])}
    return mats, {}


def _p6_closed(p):
    a0, a1, a2, a3, a4 = p.alpha
    g, rg = gamma, rgamma
    d = a0 - a4
    if abs(d - round(d.real)) < 1e-12:
        raise ParameterError("alpha0 - alpha4 is an integer: the closed form does not apply")
    G01 = _mat(g(1 + a0 - a4) * g(a3) * rg(1 - a1 - a2 - a4) * rg(1 - a2 - a4),
               g(1 + a4 - a0) * g(a3) * rg(1 - a0 - a1 - a2) * rg(1 - a0 - a2),
               g(1 + a0 - a4) * g(-a3) * rg(a0 + a1 + a2) * rg(a0 + a2),
               g(1 + a4 - a0) * g(-a3) * rg(a1 + a2 + a4) * rg(a2 + a4))
    G0i = _mat(_e(a0 + a1 + a2) * g(1 + a0 - a4) * g(-a1) * rg(a0 + a2) * rg(1 - a1 - a2 - a4),
               _e(a1 + a2 + a4) * g(1 + a4 - a0) * g(-a1) * rg(a2 + a4) * rg(1 - a0 - a1 - a2),
               _e(a0 + a2) * g(1 + a0 - a4) * g(a1) * rg(a0 + a1 + a2) * rg(1 - a2 - a4),
               _e(a2 + a4) * g(1 + a4 - a0) * g(a1) * rg(a1 + a2 + a4) * rg(1 - a0 - a2))
    M1 = np.linalg.solve(G01, np.diag([_e(-a3), _e(a3)]) @ G01)
    Mi = np.linalg.solve(G0i, np.diag([-_e(a1), -_e(-a1)]) @ G0i)
    mats = {"M0": np.diag([_e(-a4), _e(a4)]), "Mt": np.diag([_e(a0), _e(-a0)]),
            "M1": M1, "Minf": Mi, "Gamma01": G01, "Gamma0inf": G0i}
    return mats, {}


_CLOSED = {"P4": (K.P4, _p4_closed), "P5_I": (K.P5, _p5_closed),
           "P5_RATIONAL_MINUS1": (K.P5, _p5_minus1_closed), "P6_0_I": (K.P6, _p6_closed)}


def _closed_key(sid):
    s = str(sid).upper().replace("-", "_")
    if s.startswith("P4_SYM"):
        return "P4"
    if s in ("P5_MINUS1", "P5_Y_MINUS1"):
        return "P5_RATIONAL_MINUS1"
    if s == "P6N_0_I":
        return "P6_0_I"
    return s


def closed_form_monodromy(sid, p):
    """Closed-form monodromy matrices of solution ``sid`` at parameters ``p``.

    Supported: P4 symmetric (``M0``, ``Gamma``, ``G1..G4``, formal ``E``),
    P5 (I) and the P5 ``y = -1`` solution (``M0``, ``M1``, ``Gamma0inf``,
    ``Gamma1inf``, ``G1``, ``G2``, ``E``) and P6 (0-I) (``M0``, ``Mt``,
    ``M1``, ``Minf`` with ``Gamma01``, ``Gamma0inf``).

    Raises
    ------
    PoleError
        A Gamma factor sits on a pole (resonant parameters).
    """
    key = _closed_key(sid)
    if key not in _CLOSED:
        raise ParameterError(f"no closed-form monodromy for {sid!r}")
    kind, fn = _CLOSED[key]
    if p.kind is K.P6_NORMALIZED:
        p = p.with_kind(K.P6)
    if p.kind is not kind:
        raise ParameterError(f"{sid} needs {kind.value} parameters, got {p.kind.value}")
    if key == "P5_RATIONAL_MINUS1" and (abs(p.th("0") - 0.5) > 1e-12 or abs(p.th("1") - 0.5) > 1e-12):
        raise ParameterError("the y = -1 solution needs theta0 = theta1 = 1/2")
    mats, info = fn(p)
    out_kind = K.P6_NORMALIZED if kind is K.P6 else kind
    return MonodromyData(out_kind, mats, "closed_form", key, p, None, info)


# -- invariants -------------------------------------------------------------------------


def _p6_like(d):
    return all(k in d.matrices for k in ("M0", "Mt", "M1", "Minf"))


def trace_invariants(d):
    """Traces of every ``M_j`` and, for P6, ``p_ij = tr(M_i M_j)``."""
    mats = d.matrices if isinstance(d, MonodromyData) else dict(d)
    traces = {k: complex(np.trace(v)) for k, v in mats.items() if k.startswith("M")}
    pairs = {}
    if all(k in mats for k in ("M0", "Mt", "M1")):
        pairs = {"p0t": complex(np.trace(mats["Mt"] @ mats["M0"])),
                 "p1t": complex(np.trace(mats["M1"] @ mats["Mt"])),
                 "p01": complex(np.trace(mats["M1"] @ mats["M0"]))}
    return TraceInvariants(traces, pairs)


def cyclic_product(d, kind=None):
    mats = d.matrices if isinstance(d, MonodromyData) else dict(d)
    kind = K.parse(kind) if kind is not None else getattr(d, "kind", None)
    if "G4" in mats and "Gamma" not in mats:
        raise ParameterError("the connection matrix is undefined at these parameters")
    if "Gamma" in mats and "G4" in mats:
        G = mats["Gamma"]
        return (np.linalg.solve(G, mats["M0"] @ G) @ mats["G1"] @ mats["G2"] @ mats["G3"]
                @ mats["G4"] @ mats["E"])
    if "Gamma0inf" in mats and "Gamma1inf" in mats and "G1" in mats:
        G0, G1 = mats["Gamma0inf"], mats["Gamma1inf"]
        return (G0 @ mats["M0"] @ np.linalg.inv(G0) @ G1 @ mats["M1"] @ np.linalg.inv(G1)
                @ mats["G1"] @ mats["G2"] @ mats["E"])
    if all(k in mats for k in ("M0", "Mt", "M1", "Minf")):
        return mats["Minf"] @ mats["M1"] @ mats["Mt"] @ mats["M0"]
    raise ParameterError(f"cannot form the cyclic relation for {kind} from {sorted(mats)}")


def verify_cyclic(d, kind=None):
    """Max-entry norm of (cyclic product - I)."""
    return float(np.abs(cyclic_product(d, kind) - I2).max())


def det_defects(d):
    return {k: abs(complex(np.linalg.det(v)) - 1) for k, v in d.matrices.items() if k.startswith("M")}
