"""Catalog of local solutions at the fixed singularities.

Meromorphic solutions at t = 0, 1, infinity are obtained by writing the
Hamiltonian system in a chart ``y = y_c + x^a (Y0 + U)``, ``conj = c_c +
x^b (Z0 + V)`` around the leading data and solving the resulting
Briot-Bouquet system.  ``x`` is the local variable (t, 1-t or 1/t), and an
optional symmetry power ``m`` makes ``U, V`` functions of ``x^m``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .briot_bouquet import BBSystem, bb_solve
from .errors import ExistenceError, ParameterError, ResonanceError
from .series import TruncatedSeries, t_as_series
from .special import hyp1f1, hyp2f1
from .systems import (K, ParamSet, canonical_shift_p6, euler_field, is_integer)

DEFAULT_ORDER = 20
POINT_OF_TAG = {"t": "0", "1-t": "1", "1/t": "inf"}
TAG_OF_POINT = {v: k for k, v in POINT_OF_TAG.items()}


# -- existence conditions ------------------------------------------------------------

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class Condition:
    """``form`` must be nonzero ("nonzero") or not an integer ("nonint").

    ``form`` is a linear combination ``{symbol: coefficient}`` of alpha
    indices (ints) or theta keys (strings).
    """

    test: str
    form: tuple

    def value(self, p):
        total = 0j
        for sym, coef in self.form:
            total += coef * (p.a(sym) if isinstance(sym, int) else p.th(sym))
        return total

    def holds(self, p, tol=1e-9):
        v = self.value(p)
        if self.test == "nonzero":
            return abs(v) >= tol
        return not is_integer(v, tol)

    def describe(self):
        parts = []
        for i, (sym, coef) in enumerate(self.form):
            name = f"α{str(sym).translate(_SUB)}" if isinstance(sym, int) else \
                ("θ∞" if sym == "inf" else f"θ{sym.translate(_SUB)}")
            sign = "−" if coef < 0 else ("+" if i else "")
            mag = "" if abs(coef) == 1 else f"{abs(coef):g}"
            parts.append(f"{sign}{mag}{name}")
        lhs = "".join(parts)
        return f"{lhs} = 0" if self.test == "nonzero" else f"{lhs} ∈ ℤ"

    def renamed(self, perm):
        return Condition(self.test, tuple((perm.get(s, s), c) for s, c in self.form))


def _nz(**form):
    return Condition("nonzero", _form(form))


def _ni(**form):
    return Condition("nonint", _form(form))


def _form(kw):
    out = []
    for key, coef in kw.items():
        sym = int(key[1:]) if key.startswith("a") else key[2:]
        out.append((sym, coef))
    return tuple(out)


@dataclass(frozen=True)
class ExistenceResult:
    ok: bool
    condition: str = None
    value: complex = None

    def __bool__(self):
        return self.ok


# -- charts --------------------------------------------------------------------------


@dataclass(frozen=True)
class Chart:
    tag: str
    y_power: int
    y_lead: object
    c_power: int
    c_lead: object
    y_center: complex = 0
    c_center: complex = 0
    symmetry: int = 1


def chart_system(p, chart):
    """The Briot-Bouquet system of ``chart`` with leading data at ``p``."""
    Y0, Z0 = chart.y_lead(p), chart.c_lead(p)
    m = chart.symmetry
    a, b = chart.y_power, chart.c_power

    def local(U, V):
        order = m * (U.order + 1)
        x = TruncatedSeries.variable(order, chart.tag)
        Ux = U.with_tag(chart.tag).spread(m)
        Vx = V.with_tag(chart.tag).spread(m)
        y = chart.y_center + (Y0 + Ux).shifted(a)
        c = chart.c_center + (Z0 + Vx).shifted(b)
        ey, ec = euler_field(p, chart.tag, x, y, c)
        fy = ey.shifted(-a) - a * (Y0 + Ux)
        fc = ec.shifted(-b) - b * (Z0 + Vx)
        return fy.gather(m) / m, fc.gather(m) / m

    last = [None, None, None]

    def both(U, V):
        if last[0] is not U or last[1] is not V:
            last[:] = [U, V, local(U, V)]
        return last[2]

    return BBSystem(lambda U, V, x: both(U, V)[0].with_tag(chart.tag),
                    lambda U, V, x: both(U, V)[1].with_tag(chart.tag),
                    chart.tag, guard=4 + 2 * max(abs(a), abs(b)))


def solve_chart(p, chart, order):
    sol = bb_solve(chart_system(p, chart), order)
    m = chart.symmetry
    Y0, Z0 = chart.y_lead(p), chart.c_lead(p)
    y = chart.y_center + (Y0 + sol.u.spread(m)).shifted(chart.y_power)
    c = chart.c_center + (Z0 + sol.v.spread(m)).shifted(chart.c_power)
    return y.normalized(), c.normalized()


# -- solution records ----------------------------------------------------------------


@dataclass(frozen=True)
class SeriesSolution:
    """A local solution ``(y, conj)`` of one Painleve kind as truncated series."""

    id: str
    params: ParamSet
    y: TruncatedSeries
    conj: TruncatedSeries
    expansion_point: str
    conditions: tuple = ()

    @property
    def kind(self):
        return self.params.kind

    @property
    def zbar(self):
        """Normalized P6 momentum ``z_bar`` along the solution."""
        if self.kind is not K.P6:
            raise ParameterError("z_bar only exists for P6 solutions")
        t = t_as_series(self.y.variable_tag, self.y.order + 2)
        return canonical_shift_p6(self.conj, self.y, t, self.params, "to_bar")

    def as_normalized(self):
        """The same solution as a solution of the normalized P6 system."""
        return SeriesSolution(self.id, self.params.with_kind(K.P6_NORMALIZED), self.y,
                              self.zbar, self.expansion_point, self.conditions)


@dataclass(frozen=True)
class ClassicalSolution:
    """A closed-form (rational, algebraic or Riccati) solution.

    ``y`` and ``conj`` are callables of t; ``series`` optionally holds
    exact local series ``(y, conj)``.
    """

    id: str
    params: ParamSet
    y: object
    conj: object
    description: str
    series: tuple = None
    dy: object = None
    dconj: object = None


# -- catalog entries -----------------------------------------------------------------


def _p5_I(p):
    t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
    return (t0 - t1 - ti) / (t0 - t1 + ti), (t0 - t1 + ti) * (t0 + t1 + ti) / (-4 * ti)


def _p5_II(p):
    t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
    return (-t0 + t1 + ti) / (t0 - t1 + ti), (t0 - t1 + ti) * t1 / (-2 * (t0 - t1))


def _p5_III(p):
    t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
    return 1.0, (t0 + t1 + ti) * t1 / (2 * (t0 + t1))


def _a(i):
    return lambda p: p.a(i)


P6_CHARTS = {
    "0_I": Chart("t", 1, lambda p: p.a(4) / (p.a(4) - p.a(0)),
                 -1, lambda p: p.a(4) - p.a(0)),
    "0_II": Chart("t", 1, lambda p: p.a(4) / (p.a(4) + p.a(0)),
                  0, lambda p: p.a(2) * (p.a(1) + p.a(2)) / (1 - p.a(4) - p.a(0))),
    "0_III": Chart("t", 0, lambda p: (p.a(1) + p.a(3)) / p.a(1),
                   0, lambda p: -p.a(1) * p.a(2) / (p.a(1) + p.a(3))),
    "0_IV": Chart("t", 0, lambda p: (p.a(1) - p.a(3)) / p.a(1),
                  0, lambda p: -p.a(1) * (p.a(1) + p.a(2)) / (p.a(1) - p.a(3))),
    "1_I": Chart("1-t", 1, lambda p: p.a(3) / (p.a(0) - p.a(3)),
                 -1, lambda p: p.a(0) - p.a(3), y_center=1),
    "1_II": Chart("1-t", 1, lambda p: -p.a(3) / (p.a(0) + p.a(3)),
                  0, lambda p: p.a(2) * (p.a(1) + p.a(2)) / (p.a(0) + p.a(3) - 1), y_center=1),
    "1_III": Chart("1-t", 0, lambda p: -p.a(4) / p.a(1),
                   0, lambda p: p.a(1) * p.a(2) / (p.a(1) + p.a(4))),
    "1_IV": Chart("1-t", 0, lambda p: p.a(4) / p.a(1),
                  0, lambda p: p.a(1) * (p.a(1) + p.a(2)) / (p.a(1) - p.a(4))),
    "INF_I": Chart("1/t", -1, lambda p: (p.a(1) - p.a(0)) / p.a(1),
                   1, lambda p: -p.a(1) * (p.a(1) + p.a(2)) / (p.a(1) - p.a(0))),
    "INF_II": Chart("1/t", -1, lambda p: (p.a(1) + p.a(0)) / p.a(1),
                    1, lambda p: -p.a(1) * p.a(2) / (p.a(1) + p.a(0))),
    "INF_III": Chart("1/t", 0, lambda p: p.a(4) / (p.a(4) + p.a(3)),
                     1, lambda p: p.a(2) * (p.a(1) + p.a(2)) / (1 - p.a(3) - p.a(4))),
    "INF_IV": Chart("1/t", 0, lambda p: p.a(4) / (p.a(4) - p.a(3)),
                    0, lambda p: p.a(4) - p.a(3)),
}

_P6_BASE_CONDITIONS = {
    "I": (_nz(a1=1), _ni(a4=1, a0=-1)),
    "II": (_nz(a1=1), _ni(a4=1, a0=1)),
    "III": (_ni(a1=1), _ni(a1=1, a3=1)),
    "IV": (_ni(a1=1), _ni(a1=1, a3=-1)),
}

# t -> 1 - t swaps alpha3 and alpha4; t -> 1/t swaps alpha1 and alpha4
_POINT_PERM = {"0": {}, "1": {3: 4, 4: 3}, "INF": {1: 4, 4: 1}}
# denominators of the leading data that the mapped conditions do not cover
_P6_EXTRA = {"INF_I": (_nz(a1=1),), "INF_II": (_nz(a1=1),)}


def _p6_conditions(name):
    point, variant = name.split("_")
    conds = tuple(c.renamed(_POINT_PERM[point]) for c in _P6_BASE_CONDITIONS[variant])
    return conds + _P6_EXTRA.get(name, ())


P5_CHARTS = {
    "I": Chart("t", 0, lambda p: _p5_I(p)[0], 0, lambda p: _p5_I(p)[1]),
    "II": Chart("t", 0, lambda p: _p5_II(p)[0], 0, lambda p: _p5_II(p)[1]),
    "III": Chart("t", 0, lambda p: _p5_III(p)[0], 0, lambda p: _p5_III(p)[1]),
}

_P5_CONDITIONS = {
    "I": (_nz(th0=1, th1=-1, thinf=1), _nz(thinf=1)),
    "II": (_nz(th0=1, th1=-1, thinf=1), _nz(th0=1, th1=-1)),
    "III": (_ni(th0=1, th1=1),),
}

P4_CHARTS = {
    "PLUS_ZERO": Chart("t", 1, lambda p: 4 * p.th("0"), 1, lambda p: p.th("0") + p.th("inf"),
                       symmetry=2),
    "MINUS_ZERO": Chart("t", 1, lambda p: -4 * p.th("0"), -1, lambda p: -0.5, symmetry=2),
    "PLUS_POLE": Chart("t", -1, lambda p: 1.0, -1, lambda p: 0.5, symmetry=2),
    "MINUS_POLE": Chart("t", -1, lambda p: -1.0, 1, lambda p: -(p.th("0") + p.th("inf")),
                        symmetry=2),
}
P4_VARIANTS = {("+", "zero"): "PLUS_ZERO", ("-", "zero"): "MINUS_ZERO",
               ("+", "pole"): "PLUS_POLE", ("-", "pole"): "MINUS_POLE"}


@dataclass(frozen=True)
class Entry:
    kind: K
    chart: Chart = None
    conditions: tuple = ()
    builder: object = None
    point: str = "0"


CATALOG = {}
for _name, _chart in P6_CHARTS.items():
    CATALOG[f"P6_{_name}"] = Entry(K.P6, _chart, _p6_conditions(_name),
                                   point=POINT_OF_TAG[_chart.tag])
for _name, _chart in P5_CHARTS.items():
    CATALOG[f"P5_{_name}"] = Entry(K.P5, _chart, _P5_CONDITIONS[_name])
for _name, _chart in P4_CHARTS.items():
    CATALOG[f"P4_SYM_{_name}"] = Entry(K.P4, _chart)


# -- direct substitution for P1 and P2 --------------------------------------------


def _second_order_series(rhs, lead, lead_coeff, step, top, tag="t"):
    """Coefficients of ``y'' = rhs(y, t)`` on exponents ``lead + step*j``.

    ``lead_coeff`` fixes the first coefficient (None solves for it too).
    Each coefficient enters the residual at exponent ``k - 2`` linearly, so
    two probes determine it.
    """
    coeffs = {}
    if lead_coeff is not None:
        coeffs[lead] = complex(lead_coeff)
    k = lead + (step if lead_coeff is not None else 0)
    while k <= top:
        probes = []
        for trial in (0.0, 1.0):
            cur = dict(coeffs)
            cur[k] = trial
            y = TruncatedSeries.from_absolute(cur, k + 1, tag)
            t = TruncatedSeries.variable(k - lead + 2, tag)
            res = y.derivative().derivative() - rhs(y, t)
            probes.append(res.coefficient(k - 2))
        slope = probes[1] - probes[0]
        if abs(slope) < 1e-12:
            if abs(probes[0]) > 1e-10:
                raise ResonanceError(k, slope)
            coeffs[k] = 0j
        else:
            coeffs[k] = -probes[0] / slope
        k += step
    return TruncatedSeries.from_absolute(coeffs, top + 1, tag)


def _p1(which, order):
    rhs = lambda y, t: 6 * y * y + t
    if which == 1:
        return _second_order_series(rhs, 3, None, 5, order)
    return _second_order_series(rhs, -2, 1.0, 5, order)


def _p2(which, p, order):
    alpha = p.classical["alpha"]
    rhs = lambda y, t: 2 * y * y * y + t * y + alpha
    if which == 1:
        return _second_order_series(rhs, 2, None, 3, order)
    return _second_order_series(rhs, -1, 1.0 if which == 2 else -1.0, 3, order)


def _p1p2_solution(sid, p, order):
    kind, _, which = sid.split("_")
    which = int(which)
    if kind == "P1":
        y = _p1(which, order)
        conj = y.derivative()
    else:
        y = _p2(which, p, order)
        t = TruncatedSeries.variable(order + 2)
        conj = y.derivative() - y * y - t / 2
    return SeriesSolution(sid, p, y, conj, "0")


for _k in (1, 2):
    CATALOG[f"P1_SYM_{_k}"] = Entry(K.P1, builder=_p1p2_solution)
for _k in (1, 2, 3):
    CATALOG[f"P2_SYM_{_k}"] = Entry(K.P2, builder=_p1p2_solution)


# -- public API -------------------------------------------------------------------------

_ALIASES = {
    "P4_SYM": "P4_SYM_PLUS_ZERO",
    "P1_SYM1": "P1_SYM_1", "P1_SYM2": "P1_SYM_2",
    "P2_SYM1": "P2_SYM_1", "P2_SYM2": "P2_SYM_2", "P2_SYM3": "P2_SYM_3",
}


def solution_id(kind, name):
    """Canonical id from a kind and a short name such as ``0-I`` or ``sym1``."""
    kind = K.parse(kind)
    prefix = "P6" if kind in (K.P6, K.P6_NORMALIZED) else kind.value
    n = str(name).strip().upper().replace("-", "_").replace("∞", "INF")
    n = n.replace("(", "_").replace(")", "").replace(",", "_").replace("+", "PLUS")
    if n.startswith(prefix + "_"):
        n = n[len(prefix) + 1:]
    sid = f"{prefix}_{n}"
    sid = _ALIASES.get(sid, sid)
    if sid not in CATALOG and sid not in CLASSICAL_IDS:
        raise ParameterError(f"unknown solution {name!r} for {kind.value}")
    return sid


def p4_sym_id(sign_y, sign_branch):
    return "P4_SYM_" + P4_VARIANTS[(sign_y, sign_branch)]


def list_solutions(kind=None):
    ids = sorted(CATALOG)
    if kind is None:
        return ids
    kind = K.parse(kind)
    if kind is K.P6_NORMALIZED:
        kind = K.P6
    return [i for i in ids if CATALOG[i].kind is kind]


def _entry(sid):
    try:
        return CATALOG[_ALIASES.get(sid, sid)]
    except KeyError:
        raise ParameterError(f"unknown solution id {sid!r}") from None


def _coerce(sid, p):
    e = _entry(sid)
    if e.kind is K.P6 and p.kind is K.P6_NORMALIZED:
        p = p.with_kind(K.P6)
    if p.kind is not e.kind:
        raise ParameterError(f"{sid} is a {e.kind.value} solution, got {p.kind.value} parameters")
    return e, p


def existence_check(sid, p):
    """``ExistenceResult(ok)`` or the first violated condition."""
    e, p = _coerce(sid, p)
    for cond in e.conditions:
        if not cond.holds(p):
            return ExistenceResult(False, cond.describe(), cond.value(p))
    return ExistenceResult(True)


def build_solution(sid, p, order=DEFAULT_ORDER):
    """Series solution ``sid`` at parameters ``p``.

    Raises
    ------
    ExistenceError
        When an existence condition fails.
    ResonanceError
        When the recursion meets a vanishing determinant.
    """
    sid = _ALIASES.get(sid, sid)
    e, p = _coerce(sid, p)
    check = existence_check(sid, p)
    if not check:
        v = check.value
        if e.builder is None and v is not None and v != 0 and is_integer(v):
            # a nonzero integer here is a resonance of the recursion at order |v|
            try:
                solve_chart(p, e.chart, max(order, int(abs(round(v.real)))))
            except ResonanceError as err:
                raise ResonanceError(err.n, err.delta, check.condition) from None
        raise ExistenceError(check.condition)
    if e.builder is not None:
        return e.builder(sid, p, order)
    y, c = solve_chart(p, e.chart, order)
    return SeriesSolution(sid, p, y, c, e.point, tuple(x.describe() for x in e.conditions))


def identify(sol, order=8, tol=1e-9, candidates=None):
    """Catalog id whose series at ``sol.params`` matches ``sol``, or None."""
    ids = candidates or [i for i in list_solutions(sol.kind)
                         if CATALOG[i].point == sol.expansion_point]
    for sid in ids:
        try:
            ref = build_solution(sid, sol.params, order=order + 4)
        except (ExistenceError, ResonanceError, ValueError, ZeroDivisionError):
            continue
        if pair_error(sol, ref, order) <= tol:
            return sid
    return None


def pair_error(sol, ref, order=8):
    """Largest coefficient difference of the ``(y, conj)`` pair up to ``order``.

    The difference is scaled by the largest coefficient of the pair, since
    maps between solutions mix ``y`` and ``conj`` and inherit their common scale.
    """
    diff, scale = 0.0, 1.0
    for a, b in ((sol.y, ref.y), (sol.conj, ref.conj)):
        lo = min(a.leading_exponent, b.leading_exponent)
        hi = min(a.precision, b.precision, order + 1)
        if hi <= lo:
            return float("inf")
        ca, cb = a.coefficients(lo, hi), b.coefficients(lo, hi)
        diff = max(diff, float(abs(ca - cb).max()))
        scale = max(scale, float(abs(ca).max()), float(abs(cb).max()))
    return diff / scale


def series_agree(a, b, order, tol):
    """Relative coefficient agreement on exponents below ``lead + order + 1``."""
    lo = min(a.leading_exponent, b.leading_exponent)
    hi = min(a.precision, b.precision, lo + order + 1)
    if hi <= lo:
        return False
    ca, cb = a.coefficients(lo, hi), b.coefficients(lo, hi)
    scale = max(1.0, float(abs(ca).max()), float(abs(cb).max()))
    return float(abs(ca - cb).max()) <= tol * scale


# -- classical solutions ----------------------------------------------------------

CLASSICAL_IDS = ("P5_RATIONAL_MINUS1", "P4_RATIONAL_2T3", "P4_RATIONAL_MINUS2T",
                 "P6_ALGEBRAIC_SQRT_T")

SPECIAL_TOL = 1e-12


def _poly_series(coeffs, order, tag="t"):
    return TruncatedSeries.from_absolute(dict(enumerate(coeffs)), order + 1, tag)


def _near(x, v=0.0):
    return abs(complex(x) - v) < SPECIAL_TOL


def _log_derivative_2f1(a, b, c, powers=()):
    """``d/dt log( prod (t - r)^e * 2F1(a, b; c; t) )`` as a callable."""
    def f(t):
        t = complex(t)
        val = sum(e / (t - r) for r, e in powers)
        return val + a * b / c * hyp2f1(a + 1, b + 1, c + 1, t) / hyp2f1(a, b, c, t)
    return f


def _p4_classical(p):
    out = []
    th0, thi = p.th("0"), p.th("inf")
    a0, a1, a2 = p.alpha
    if _near(a0) and _near(a2):
        # theta0 = -1/2 and theta_inf = 1/2
        out.append(ClassicalSolution(
            "P4_RATIONAL_MINUS2T", p, lambda t: -2 * t, lambda t: 0j,
            "y = -2t, w = 0", (_poly_series([0, -2], 4), _poly_series([0], 4)),
            lambda t: -2.0, lambda t: 0j))
    if all(_near(x, 1 / 3) for x in p.alpha):
        out.append(ClassicalSolution(
            "P4_RATIONAL_2T3", p, lambda t: -2 * t / 3, lambda t: t / 3,
            "y = -2t/3, w = t/3", (_poly_series([0, -2 / 3], 4), _poly_series([0, 1 / 3], 4)),
            lambda t: -2 / 3, lambda t: 1 / 3))
    if _near(a2):
        # p = y + 2t - 2w = 0 and y = u'/u with u'' + 2t u' - 4 theta0 u = 0
        def make(branch):
            if branch == 0:
                u = lambda t: hyp1f1(-th0, 0.5, -t * t)
                du = lambda t: -2 * t * (-th0 / 0.5) * hyp1f1(1 - th0, 1.5, -t * t)
            else:
                u = lambda t: t * hyp1f1(0.5 - th0, 1.5, -t * t)
                du = lambda t: (hyp1f1(0.5 - th0, 1.5, -t * t)
                                - 2 * t * t * ((0.5 - th0) / 1.5) * hyp1f1(1.5 - th0, 2.5, -t * t))
            y = lambda t: du(t) / u(t)
            return y, (lambda t: (y(t) + 2 * t) / 2)
        for branch in (0, 1):
            y, w = make(branch)
            out.append(ClassicalSolution(
                f"RICCATI_P4_ALPHA2_{branch + 1}", p, y, w,
                "alpha2 = 0: p = 0, y' = -y^2 - 2ty + 4 theta0 (Weber functions)"))
    return out


def _p5_classical(p, order):
    out = []
    t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
    if _near(t0, 0.5) and _near(t1, 0.5):
        out.append(ClassicalSolution(
            "P5_RATIONAL_MINUS1", p, lambda t: -1.0 + 0j, lambda t: -(1 + ti) / 4 + t / 8,
            "y = -1, w = -(1 + theta_inf)/4 + t/8",
            (_poly_series([-1], order), _poly_series([-(1 + ti) / 4, 1 / 8], order)),
            lambda t: 0j, lambda t: 1 / 8))
    for name, cond, which in (("W_ZERO", t0 + t1 + ti, "w"), ("Y_ZERO", t0 - t1 - ti, "y")):
        if _near(cond) and not _near(t0 - t1 + ti) and not _near(ti):
            # the solution (I) is the Riccati solution through its initial point
            y, w = solve_chart(p, P5_CHARTS["I"], order)
            out.append(ClassicalSolution(
                f"RICCATI_P5_{name}", p, y.evaluate_at_t, w.evaluate_at_t,
                f"{which} = 0 and the other component solves a Riccati equation", (y, w)))
    return out


def _p6_classical(p, order):
    out = []
    a0, a1, a2, a3, a4 = p.alpha
    if _near(a1, a4) and _near(a0, a3):
        k = (2 * a3 + 2 * a4 - 1) / 4
        tau = TruncatedSeries.variable(order, "1-t")
        ys = _sqrt_series(1 - tau)
        out.append(ClassicalSolution(
            "P6_ALGEBRAIC_SQRT_T", p, cmath.sqrt, lambda t: k / cmath.sqrt(t),
            "y = sqrt(t), z = (2 alpha3 + 2 alpha4 - 1) / (4 sqrt(t))",
            (ys, k * ys.reciprocal()),
            lambda t: 0.5 / cmath.sqrt(t), lambda t: -0.5 * k / cmath.sqrt(t) ** 3))
    if _near(a2):
        for i, (aa, bb, cc, powers) in enumerate((
                (a4, 1 - a3, a0 + a4, ((1, a4),)),
                (1 - a0, 1 + a1, 1 + a1 + a3, ((0, a1 + a3), (1, a4))))):
            ld = _log_derivative_2f1(aa, bb, cc, powers)
            out.append(ClassicalSolution(
                f"RICCATI_P6_ALPHA2_{i + 1}", p,
                (lambda ld: lambda t: -t * (t - 1) / a1 * ld(t))(ld), lambda t: 0j,
                "alpha2 = 0: z = 0 and y is a 2F1 log-derivative"))
    if _near(a0):
        for i, (aa, bb, cc, powers) in enumerate((
                (a2, a1 + a2, 1 - a4, ()),
                (a2 + a4, a1 + a2 + a4, 1 + a4, ((0, a4),)))):
            ld = _log_derivative_2f1(aa, bb, cc, powers)
            out.append(ClassicalSolution(
                f"RICCATI_P6_ALPHA0_{i + 1}", p, lambda t: complex(t), ld,
                "alpha0 = 0: y = t and z is a 2F1 log-derivative"))
    if _near(a3):
        for i, (aa, bb, cc, powers) in enumerate((
                (a2, a2 + a4, 1 - a1, ((0, a2),)),
                (a1 + a2, a1 + a2 + a4, 1 + a1, ((0, a1 + a2),)))):
            ld = _log_derivative_2f1(aa, bb, cc, powers)
            out.append(ClassicalSolution(
                f"RICCATI_P6_ALPHA3_{i + 1}", p, lambda t: 1.0 + 0j,
                (lambda ld: lambda t: -t * ld(t))(ld),
                "alpha3 = 0: y = 1 and z is a 2F1 log-derivative"))
    if _near(a4):
        for i, (aa, bb, cc, powers) in enumerate((
                (a2, a2 + a3, 1 - a0, ((1, a2),)),
                (a0 + a2, a0 + a2 + a3, 1 + a0, ((0, a0), (1, a2))))):
            ld = _log_derivative_2f1(aa, bb, cc, powers)
            out.append(ClassicalSolution(
                f"RICCATI_P6_ALPHA4_{i + 1}", p, lambda t: 0j,
                (lambda ld: lambda t: (t - 1) * ld(t))(ld),
                "alpha4 = 0: y = 0 and z is a 2F1 log-derivative"))
    return out


def _sqrt_series(s):
    """Square root of a series with leading coefficient 1 (binomial series)."""
    x = s - 1
    acc = TruncatedSeries.constant(0.0, s.order, s.variable_tag)
    coef = 1.0
    power = TruncatedSeries.constant(1.0, s.order, s.variable_tag)
    for n in range(s.order + 1):
        acc = acc + coef * power
        coef *= (0.5 - n) / (n + 1)
        power = power * x
    return acc


def classical_specialize(kind, p, order=12):
    """Every closed-form solution the catalog knows at parameters ``p``.

    Generic parameters give an empty list.
    """
    kind = K.parse(kind)
    if kind is K.P4:
        return _p4_classical(p)
    if kind is K.P5:
        return _p5_classical(p, order)
    if kind in (K.P6, K.P6_NORMALIZED):
        return _p6_classical(p.with_kind(K.P6), order)
    return []


def classical_solution(sid, p, order=12):
    for sol in classical_specialize(p.kind, p, order):
        if sol.id == sid:
            return sol
    raise ExistenceError(f"{sid} does not exist at these parameters")
