"""Painleve Hamiltonian systems, parameter dictionaries and series residuals.

Every vector field is written once, over generic arithmetic, so the same
code evaluates complex numbers and :class:`TruncatedSeries`.  Each system
is stored in weighted form ``weight(t) * dy/dt = F_y``, ``weight(t) *
dc/dt = F_c`` where ``c`` is the momentum (``conj``) of the kind.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import ParameterError, PoleError
from .series import TruncatedSeries, t_as_series

CONSTRAINT_TOL = 1e-12


class PainleveKind(str, enum.Enum):
    P1 = "P1"
    P2 = "P2"
    P3_D6 = "P3_D6"
    P3_D7 = "P3_D7"
    P3_D8 = "P3_D8"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P6_NORMALIZED = "P6_normalized"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper().replace("-", "_")
        aliases = {"P6N": "P6_NORMALIZED", "D6": "P3_D6", "D7": "P3_D7", "D8": "P3_D8"}
        key = aliases.get(key, key)
        try:
            return cls[key]
        except KeyError:
            raise ParameterError(f"unknown Painleve kind {value!r}") from None


K = PainleveKind

# theta keys per kind; "inf" is theta at infinity
THETA_KEYS = {
    K.P1: (),
    K.P2: ("theta",),
    K.P3_D8: (),
    K.P3_D7: ("0",),
    K.P3_D6: ("0", "inf"),
    K.P4: ("0", "inf"),
    K.P5: ("0", "1", "inf"),
    K.P6: ("0", "1", "t", "inf"),
    K.P6_NORMALIZED: ("0", "1", "t", "inf"),
}

# number of alpha parameters; P3_D6 stores (alpha0, alpha1, beta0, beta1)
ALPHA_COUNT = {
    K.P1: 0,
    K.P2: 2,
    K.P3_D8: 0,
    K.P3_D7: 2,
    K.P3_D6: 4,
    K.P4: 3,
    K.P5: 4,
    K.P6: 5,
    K.P6_NORMALIZED: 5,
}

# Affine constraints as (coefficients, value)
_CONSTRAINTS = {
    K.P2: [((1, 1), 1)],
    K.P3_D7: [((1, 1), 1)],
    K.P3_D6: [((1, 1, 0, 0), 1), ((0, 0, 1, 1), 1)],
    K.P4: [((1, 1, 1), 1)],
    K.P5: [((1, 1, 1, 1), 1)],
    K.P6: [((1, 1, 2, 1, 1), 1)],
    K.P6_NORMALIZED: [((1, 1, 2, 1, 1), 1)],
}


def _theta_to_alpha(kind, th):
    if kind is K.P2:
        a1 = 1 - th["theta"]
        return (1 - a1, a1)
    if kind is K.P3_D6:
        a1 = (th["0"] + th["inf"]) / 2
        b1 = (th["inf"] - th["0"]) / 2
        return (1 - a1, a1, 1 - b1, b1)
    if kind is K.P4:
        return (th["inf"] + th["0"], -2 * th["0"], 1 + th["0"] - th["inf"])
    if kind is K.P5:
        t0, t1, ti = th["0"], th["1"], th["inf"]
        return (1 - t0, (t0 - t1 + ti) / 2, t1, (t0 - t1 - ti) / 2)
    if kind in (K.P6, K.P6_NORMALIZED):
        a0, a1, a3, a4 = th["t"], 1 - th["inf"], th["1"], th["0"]
        return (a0, a1, (1 - a0 - a1 - a3 - a4) / 2, a3, a4)
    if kind is K.P3_D7:
        raise ParameterError("P3_D7 has no theta/alpha dictionary; give one representation only")
    return ()


def _alpha_to_theta(kind, a):
    if kind is K.P2:
        return {"theta": 1 - a[1]}
    if kind is K.P3_D6:
        return {"0": a[1] - a[3], "inf": a[1] + a[3]}
    if kind is K.P4:
        t0 = -a[1] / 2
        return {"0": t0, "inf": a[0] - t0}
    if kind is K.P5:
        return {"0": 1 - a[0], "1": a[2], "inf": a[1] - a[3]}
    if kind in (K.P6, K.P6_NORMALIZED):
        return {"0": a[4], "1": a[3], "t": a[0], "inf": 1 - a[1]}
    if kind is K.P3_D7:
        raise ParameterError("P3_D7 has no theta/alpha dictionary; give one representation only")
    return {}


def _check_constraints(kind, alpha):
    for coeffs, value in _CONSTRAINTS.get(kind, ()):
        s = sum(c * x for c, x in zip(coeffs, alpha))
        if abs(s - value) > CONSTRAINT_TOL:
            raise ParameterError(
                f"{kind.value} parameters violate the affine constraint: sum = {s} (expected {value})")


def _complete_alpha(kind, alpha):
    """Fill the single ``None`` entry from the affine constraint."""
    missing = [i for i, x in enumerate(alpha) if x is None]
    if not missing:
        return alpha
    if len(missing) > 1:
        raise ParameterError("only one parameter can be completed")
    i = missing[0]
    for coeffs, value in _CONSTRAINTS.get(kind, ()):
        if coeffs[i]:
            rest = sum(c * x for j, (c, x) in enumerate(zip(coeffs, alpha)) if j != i and c)
            alpha = list(alpha)
            alpha[i] = (value - rest) / coeffs[i]
            return tuple(alpha)
    raise ParameterError(f"alpha_{i} is not fixed by a constraint")


@dataclass(frozen=True)
class ParamSet:
    """Parameters of one Painleve kind in theta and alpha form.

    ``theta`` maps keys of :data:`THETA_KEYS` to complex values, ``alpha`` is
    the tuple ``(alpha_0, ...)``.  Either may be ``None`` for ``P3_D7``,
    which has no known dictionary between the two.
    """

    kind: PainleveKind
    theta: object = None
    alpha: tuple = None
    _source: str = field(default="alpha", compare=False, repr=False)

    @classmethod
    def from_theta(cls, kind, theta=None, **kw):
        kind = K.parse(kind)
        th = dict(theta or {})
        th.update(kw)
        keys = THETA_KEYS[kind]
        if set(th) != set(keys):
            raise ParameterError(f"{kind.value} needs theta keys {keys}, got {sorted(th)}")
        th = {k: complex(v) for k, v in th.items()}
        alpha = None if kind is K.P3_D7 else tuple(complex(x) for x in _theta_to_alpha(kind, th))
        return cls(kind, MappingProxyType(th), alpha, "theta")

    @classmethod
    def from_alpha(cls, kind, alpha=(), complete=False):
        kind = K.parse(kind)
        alpha = tuple(alpha)
        if len(alpha) != ALPHA_COUNT[kind]:
            raise ParameterError(f"{kind.value} needs {ALPHA_COUNT[kind]} alpha parameters, got {len(alpha)}")
        if complete:
            alpha = _complete_alpha(kind, alpha)
        if any(x is None for x in alpha):
            raise ParameterError("incomplete parameter map")
        alpha = tuple(complex(x) for x in alpha)
        _check_constraints(kind, alpha)
        theta = None if kind is K.P3_D7 else MappingProxyType(
            {k: complex(v) for k, v in _alpha_to_theta(kind, alpha).items()})
        return cls(kind, theta, alpha, "alpha")

    @classmethod
    def empty(cls, kind):
        kind = K.parse(kind)
        if THETA_KEYS[kind] or ALPHA_COUNT[kind]:
            raise ParameterError(f"{kind.value} has parameters")
        return cls(kind, MappingProxyType({}), (), "alpha")

    def with_kind(self, kind):
        """Same parameters read as another kind sharing the dictionary."""
        return ParamSet(K.parse(kind), self.theta, self.alpha, self._source)

    # shorthands used throughout the package
    def a(self, i):
        if self.alpha is None:
            raise ParameterError(f"{self.kind.value}: alpha parameters unavailable")
        return self.alpha[i]

    def th(self, key):
        if self.theta is None:
            raise ParameterError(f"{self.kind.value}: theta parameters unavailable")
        return self.theta[key]

    @property
    def classical(self):
        """Coefficients (alpha, beta, gamma, delta) of the scalar equation."""
        k = self.kind
        if k is K.P1 or k is K.P3_D8:
            return {}
        if k is K.P2:
            return {"alpha": 0.5 - self.th("theta")}
        if k is K.P3_D7:
            if self.theta is not None:
                return {"alpha": 2, "beta": 4 * (self.th("0") + 1), "gamma": 2, "delta": 0}
            return {"beta": 4 * (1 - self.a(1))}
        if k is K.P3_D6:
            return {"alpha": 4 * self.th("0"), "beta": 4 * (1 - self.th("inf")), "gamma": 4, "delta": -4}
        if k is K.P4:
            return {"alpha": 2 * self.th("inf") - 1, "beta": -8 * self.th("0") ** 2}
        if k is K.P5:
            t0, t1, ti = self.th("0"), self.th("1"), self.th("inf")
            return {"alpha": 0.5 * ((t0 - t1 + ti) / 2) ** 2,
                    "beta": -0.5 * ((t0 - t1 - ti) / 2) ** 2,
                    "gamma": 1 - t0 - t1, "delta": -0.5}
        a = self.alpha
        return {"alpha": a[1] ** 2 / 2, "beta": -a[4] ** 2 / 2,
                "gamma": a[3] ** 2 / 2, "delta": (1 - a[0] ** 2) / 2}

    def to_dict(self):
        out = {"kind": self.kind.value}
        if self.theta is not None:
            out["theta"] = dict(self.theta)
        if self.alpha is not None:
            out["alpha"] = list(self.alpha)
        return out


def convert_params(p, target):
    """Rebuild ``p`` from its ``target`` representation ("theta" or "alpha").

    Raises ParameterError when the source representation is missing.
    """
    if target == "theta":
        if p.theta is None:
            raise ParameterError("incomplete parameter map: theta representation missing")
        if not p.theta and THETA_KEYS[p.kind]:
            raise ParameterError("incomplete parameter map")
        if not THETA_KEYS[p.kind]:
            return ParamSet.empty(p.kind)
        return ParamSet.from_theta(p.kind, dict(p.theta))
    if target == "alpha":
        if p.alpha is None:
            raise ParameterError("incomplete parameter map: alpha representation missing")
        if not ALPHA_COUNT[p.kind]:
            return ParamSet.empty(p.kind)
        return ParamSet.from_alpha(p.kind, p.alpha)
    raise ParameterError(f"unknown parameter representation {target!r}")


@dataclass(frozen=True)
class PhaseState:
    """A point ``(t, y, conj)`` of a Hamiltonian system plus an optional gauge."""

    t: complex
    y: complex
    conj: complex
    log_u: complex = None


# -- vector fields ---------------------------------------------------------------


def weight(kind, t):
    """The factor multiplying d/dt on the left of the kind's system."""
    kind = K.parse(kind)
    if kind in (K.P1, K.P2, K.P4):
        return 1
    if kind in (K.P6, K.P6_NORMALIZED):
        return t * (t - 1)
    return t


def weighted_field(p, t, y, c):
    """Right-hand sides ``(F_y, F_c)`` of ``weight * d(y, c)/dt``.

    Works for complex scalars and for truncated series alike.
    """
    k = p.kind
    if k is K.P1:
        return c, 6 * y * y + t
    if k is K.P2:
        th = p.th("theta")
        return y * y + c + t / 2, -2 * y * c - th
    if k is K.P3_D8:
        return 4 * y * y * c + 2 * y, -4 * y * c * c - 2 * c - t * t / (2 * (y * y)) + 0.5
    if k is K.P3_D7:
        th0 = p.th("0")
        return 2 * y * y * c - th0 * y + t, -2 * y * c * c + th0 * c + 0.25
    if k is K.P3_D6:
        th0, thi = p.th("0"), p.th("inf")
        fy = 4 * c * y * y - 2 * t * y * y + (2 * thi - 1) * y + 2 * t
        fc = -4 * y * c * c + (4 * t * y - 2 * thi + 1) * c + (th0 + thi) * t
        return fy, fc
    if k is K.P4:
        th0, thi = p.th("0"), p.th("inf")
        fy = -4 * y * c + y * y + 2 * t * y + 4 * th0
        fc = 2 * c * c - 2 * y * c - 2 * t * c + (th0 + thi)
        return fy, fc
    if k is K.P5:
        t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
        s = t0 + 3 * t1 + ti
        y2 = y * y
        fy = (t * y - 2 * y2 * y * c + y2 * (s / 2) + 4 * y2 * c - y * (2 * t1 + ti)
              - 2 * y * c - (t0 - t1 - ti) / 2)
        c2 = c * c
        fc = (3 * y2 * c2 - y * c * s + c2 - c * t - 4 * y * c2 + c * (2 * t1 + ti)
              + t1 * (t0 + t1 + ti) / 2)
        return fy, fc
    if k is K.P6:
        a0, a1, a2, a3, a4 = p.alpha
        ym1 = y - 1
        ymt = y - t
        fy = 2 * c * y * ym1 * ymt - a4 * ym1 * ymt - a3 * y * ymt - (a0 - 1) * y * ym1
        fc = ((-3 * y * y + 2 * (1 + t) * y - t) * c * c
              + ((2 * y - 1 - t) * a4 + (2 * y - t) * a3 + (2 * y - 1) * (a0 - 1)) * c
              - a2 * (a1 + a2))
        return fy, fc
    if k is K.P6_NORMALIZED:
        a0, a1, _, a3, a4 = p.alpha
        ym1 = y - 1
        ymt = y - t
        fy = 2 * y * ym1 * ymt * c + y * ym1
        fc = ((-3 * y * y + 2 * (1 + t) * y - t) * c * c - (2 * y - 1) * c
              - (1 - a1 * a1) / 4
              - (a4 * a4 / 4) * t / (y * y)
              + (a3 * a3 / 4) * (t - 1) / (ym1 * ym1)
              - (a0 * a0 / 4) * t * (t - 1) / (ymt * ymt))
        return fy, fc
    raise ParameterError(f"no vector field for {k}")


def _singular_t(kind, t):
    if kind in (K.P1, K.P2, K.P4):
        return False
    if kind in (K.P6, K.P6_NORMALIZED):
        return t == 0 or t == 1
    return t == 0


def gauge_rate(p, s):
    """d(log u)/dt of the auxiliary gauge, or None if the kind has none.

    For P6 the gauge is the numerator constant of the
    (1,2) entry of the coefficient matrix.
    """
    k = p.kind
    t, y, c = s.t, s.y, s.conj
    if k is K.P2:
        return -y
    if k is K.P4:
        return -y - 2 * t
    if k is K.P5:
        return (-2 * y * c + p.th("1") + p.th("inf") + y * (y * c - p.th("1")) + c) / t
    if k is K.P3_D6:
        th0, thi = p.th("0"), p.th("inf")
        return (-(th0 + thi) * t / c - 2 * t * y + thi) / t
    if k in (K.P6, K.P6_NORMALIZED):
        return -p.a(1) * (y - t) / (t * (t - 1))
    return None


def hamiltonian_rhs(p, s):
    """``(dy/dt, dconj/dt, dlog_u/dt)`` at the phase point ``s``."""
    t = complex(s.t)
    if _singular_t(p.kind, t):
        raise PoleError(f"t={t} is a fixed singularity of {p.kind.value}", location=t)
    y, c = complex(s.y), complex(s.conj)
    try:
        fy, fc = weighted_field(p, t, y, c)
    except ZeroDivisionError as exc:
        raise PoleError(f"vector field of {p.kind.value} has a pole at y={y}", location=y) from exc
    w = weight(p.kind, t)
    g = gauge_rate(p, PhaseState(t, y, c))
    return complex(fy) / w, complex(fc) / w, (None if g is None else complex(g))


def hamiltonian(p, s):
    """The Hamiltonian ``H`` (already divided by its t-weight).

    Its symplectic gradient is the vector field of :func:`weighted_field`: for P5 the bracket multiplying ``w`` carries
    no constant ``theta0 + theta1``; for P3_D6 the linear term in ``z`` is
    ``2(-t y^2 + (theta_inf - 1/2) y + t) z``.
    """
    k = p.kind
    t, y, c = complex(s.t), complex(s.y), complex(s.conj)
    if k is K.P1:
        return c * c / 2 - (2 * y ** 3 + t * y)
    if k is K.P2:
        return c * c / 2 + (y * y + t / 2) * c + p.th("theta") * y
    if k is K.P3_D8:
        return (2 * y * y * c * c + 2 * y * c - y / 2 - t * t / (2 * y)) / t
    if k is K.P3_D7:
        return (y * y * c * c + (-p.th("0") * y + t) * c - y / 4) / t
    if k is K.P3_D6:
        th0, thi = p.th("0"), p.th("inf")
        return (2 * y * y * c * c + 2 * (-t * y * y + (thi - 0.5) * y + t) * c
                - (th0 + thi) * t * y - t * t - (th0 ** 2 - thi ** 2) / 4) / t
    if k is K.P4:
        th0, thi = p.th("0"), p.th("inf")
        return -2 * y * c * c + y * y * c + 2 * t * y * c + 4 * th0 * c - (th0 + thi) * y
    if k is K.P5:
        t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
        bracket = ((-t0 + t1 + ti) / 2) * (y - 1) ** 2 + (t0 + t1) * y * (y - 1) + t * y
        return (-y * (y - 1) ** 2 * c * c + bracket * c - t1 * (t0 + t1 + ti) / 2 * y) / t
    if k is K.P6:
        a0, a1, a2, a3, a4 = p.alpha
        val = (y * (y - 1) * (y - t) * c * c
               - (a4 * (y - 1) * (y - t) + a3 * y * (y - t) + (a0 - 1) * y * (y - 1)) * c
               + a2 * (a1 + a2) * (y - t))
        return val / (t * (t - 1))
    if k is K.P6_NORMALIZED:
        a0, a1, _, a3, a4 = p.alpha
        val = (y * (y - 1) * (y - t) * c * c + y * (y - 1) * c
               - ((1 - a1 * a1) / -4 * y + a4 * a4 / 4 * t / y
                  - a3 * a3 / 4 * (t - 1) / (y - 1) + a0 * a0 / 4 * t * (t - 1) / (y - t)))
        return val / (t * (t - 1))
    raise ParameterError(f"no Hamiltonian for {k}")


# -- series residuals ----------------------------------------------------------------


def d_dt(s):
    """d/dt of a series in its local variable."""
    tag = s.variable_tag
    d = s.derivative()
    if tag == "t":
        return d
    if tag == "1-t":
        return -d
    sigma = TruncatedSeries.variable(s.order + 2, "1/t")
    return -(d * sigma * sigma)


def euler_field(p, tag, tau, y, c):
    """``(tau * dy/dtau, tau * dc/dtau)`` in the local variable ``tau``."""
    order = max(y.order, c.order) + 2
    t = t_as_series(tag, order)
    fy, fc = weighted_field(p, t, y, c)
    w = weight(p.kind, t)
    if tag == "t":
        factor = tau / w if not isinstance(w, int) else tau * (1.0 / w)
    elif tag == "1-t":
        factor = -(tau / w) if not isinstance(w, int) else -tau * (1.0 / w)
    else:
        factor = -(t / w) if not isinstance(w, int) else -t * (1.0 / w)
    return fy * factor, fc * factor


def series_residual(p, y, conj):
    """``weight * dy/dt - F_y`` and ``weight * dconj/dt - F_c`` as series.

    ``weight`` is 1 (P1, P2, P4), ``t`` (P3, P5) or ``t(t-1)`` (P6); the
    derivative is taken in t even when the series live in ``1-t`` or ``1/t``.
    """
    if y.variable_tag != conj.variable_tag:
        raise ValueError("y and conj live in different local variables")
    tag = y.variable_tag
    order = max(y.order, conj.order) + 2
    t = t_as_series(tag, order)
    fy, fc = weighted_field(p, t, y, conj)
    w = weight(p.kind, t)
    return w * d_dt(y) - fy, w * d_dt(conj) - fc


def canonical_shift_p6(conj, y, t, p, direction="to_bar"):
    """Convert between ``z`` and ``z_bar`` along ``y``.

    ``2 (z - z_bar) = alpha4/y + alpha3/(y-1) + alpha0/(y-t)``.  Scalars and
    series are both accepted; ``t`` must then be of the same type as ``y``.
    """
    a0, a3, a4 = p.a(0), p.a(3), p.a(4)
    try:
        shift = (a4 / y + a3 / (y - 1) + a0 / (y - t)) / 2
    except ZeroDivisionError as exc:
        raise PoleError("y hits 0, 1 or t in the canonical shift", location=y) from exc
    if direction == "to_bar":
        return conj - shift
    if direction == "from_bar":
        return conj + shift
    raise ValueError(f"unknown direction {direction!r}")


# -- P5 canonical coordinates ------------------------------------------------------


def p5_to_qp(p, y, w):
    """``(y, w) -> (q, p)`` with ``y = 1 - 1/q`` and ``w = -p q^2 - alpha2 q``."""
    q = 1 / (1 - y)
    pp = -(w + p.a(2) * q) / (q * q)
    return q, pp


def p5_from_qp(p, q, pp):
    return 1 - 1 / q, -pp * q * q - p.a(2) * q


def p4_to_qp(y, w, t):
    """``p = y + 2t - 2w`` turns the (y, w) system into the table's (q, p)."""
    return y, y + 2 * t - 2 * w


def p4_from_qp(q, pp, t):
    return q, (q + 2 * t - pp) / 2


def nearest_integer_distance(x):
    x = complex(x)
    return math.hypot(x.real - round(x.real), x.imag)


def is_integer(x, tol=1e-9):
    x = complex(x)
    return abs(x.imag) < tol and abs(x.real - round(x.real)) < tol
