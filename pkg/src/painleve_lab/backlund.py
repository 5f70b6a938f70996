"""Backlund transformation groups acting on ``(alpha, q, p, t)``.

Every generator is stored verbatim as a birational map in the canonical
coordinates of its table.  Words are applied left to right: ``"s1 s2"``
applies ``s1`` first.  Series solutions are moved between the catalog's
coordinates and the table coordinates by :func:`to_table` /
:func:`from_table`.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, PoleError, UnsupportedRetag
from .series import TruncatedSeries, t_as_series
from .systems import K, ParamSet, PhaseState

I = 1j


def _div(a, b):
    if not isinstance(b, TruncatedSeries) and b == 0:
        raise PoleError("Backlund map hits a vanishing denominator", location=0)
    return a / b


# Each generator: (alpha map, (q, p) map, t map name).  The (q, p) map
# receives (alpha, q, p, t) with the *old* alpha and t.

def _p2_f(a, q, p, t):
    return p - 2 * q * q - t


_P2 = {
    "s0": (lambda a: (-a[0], a[1] + 2 * a[0]),
           lambda a, q, p, t: (q + _div(a[0], _p2_f(a, q, p, t)),
                               p + _div(4 * a[0] * q, _p2_f(a, q, p, t))
                               + _div(2 * a[0] ** 2, _p2_f(a, q, p, t) ** 2)), "id"),
    "s1": (lambda a: (a[0] + 2 * a[1], -a[1]),
           lambda a, q, p, t: (q + _div(a[1], p), p), "id"),
    "pi": (lambda a: (a[1], a[0]),
           lambda a, q, p, t: (-q, -_p2_f(a, q, p, t)), "id"),
}

_D8 = {
    "pi": (lambda a: a,
           lambda a, q, p, t: (_div(t, q), -_div(q * (2 * q * p + 1), 2 * t)), "id"),
}

_D7 = {
    "s0": (lambda a: (-a[0], a[1] + 2 * a[0]),
           lambda a, q, p, t: (q, p - _div(a[0], q) + _div(t, q * q)), "neg"),
    "s1": (lambda a: (a[0] + 2 * a[1], -a[1]),
           lambda a, q, p, t: (-q - _div(a[1], p) - _div(1, p * p), -p), "neg"),
    "sigma": (lambda a: (a[1], a[0]),
              lambda a, q, p, t: (t * p, -_div(q, t)), "neg"),
}


def _d6_f1(a, q, p, t):
    return a[3] * q + (p - 1) * q * q + t


def _d6_f2(a, q, p, t):
    return a[1] * q + p * q * q + t


def _d6_s0(a, q, p, t):
    c = a[1] + a[3] - 1
    f1 = _d6_f1(a, q, p, t)
    qn = q + _div(a[0], (p - 1) + _div(c, q) + _div(t, q * q))
    pn = p - _div(a[0] * (2 * q * (p - 1) + c), f1) - _div(a[0] ** 2 * t, f1 * f1)
    return qn, pn


def _d6_s0p(a, q, p, t):
    c = a[1] + a[3] - 1
    f2 = _d6_f2(a, q, p, t)
    qn = q + _div(a[2], p + _div(c, q) + _div(t, q * q))
    pn = p - _div(a[2] * (2 * q * p + c), f2) - _div(a[2] ** 2 * t, f2 * f2)
    return qn, pn


# D6 parameters are (alpha0, alpha1, beta0, beta1)
_D6 = {
    "s0": (lambda a: (-a[0], a[1] + 2 * a[0], a[2], a[3]), _d6_s0, "id"),
    "s1": (lambda a: (a[0] + 2 * a[1], -a[1], a[2], a[3]),
           lambda a, q, p, t: (q + _div(a[1], p), p), "id"),
    "s0p": (lambda a: (a[0], a[1], -a[2], a[3] + 2 * a[2]), _d6_s0p, "id"),
    "s1p": (lambda a: (a[0], a[1], a[2] + 2 * a[3], -a[3]),
            lambda a, q, p, t: (q + _div(a[3], p - 1), p), "id"),
    "pi1": (lambda a: (a[1], a[0], a[2], a[3]),
            lambda a, q, p, t: (-_div(t, q), _div(q, t) * (q * (p - 1) + a[3]) + 1), "id"),
    "pi2": (lambda a: (a[0], a[1], a[3], a[2]),
            lambda a, q, p, t: (_div(t, q), -_div(q, t) * (q * p + a[1])), "id"),
    "sigma1": (lambda a: (a[2], a[3], a[0], a[1]),
               lambda a, q, p, t: (-q, 1 - p), "neg"),
    "sigma2": (lambda a: (a[3], a[2], a[1], a[0]),
               lambda a, q, p, t: (q, p + _div(a[1] + a[3] - 1, q) + _div(t, q * q)), "neg"),
}


def _p4_f(q, p, t):
    return p - q - 2 * t


_P4 = {
    "s0": (lambda a: (-a[0], a[1] + a[0], a[2] + a[0]),
           lambda a, q, p, t: (q + _div(2 * a[0], _p4_f(q, p, t)),
                               p + _div(2 * a[0], _p4_f(q, p, t))), "id"),
    "s1": (lambda a: (a[0] + a[1], -a[1], a[2] + a[1]),
           lambda a, q, p, t: (q, p - _div(2 * a[1], q)), "id"),
    "s2": (lambda a: (a[0] + a[2], a[1] + a[2], -a[2]),
           lambda a, q, p, t: (q + _div(2 * a[2], p), p), "id"),
    "pi": (lambda a: (a[1], a[2], a[0]),
           lambda a, q, p, t: (-p, -_p4_f(q, p, t)), "id"),
    "sigma1": (lambda a: (a[0], a[2], a[1]),
               lambda a, q, p, t: (-I * p, -I * q), "i"),
    "sigma2": (lambda a: (a[2], a[1], a[0]),
               lambda a, q, p, t: (I * q, -I * _p4_f(q, p, t)), "i"),
}

_P5 = {
    "s0": (lambda a: (-a[0], a[1] + a[0], a[2], a[3] + a[0]),
           lambda a, q, p, t: (q + _div(a[0], p + t), p), "id"),
    "s1": (lambda a: (a[0] + a[1], -a[1], a[2] + a[1], a[3]),
           lambda a, q, p, t: (q, p - _div(a[1], q)), "id"),
    "s2": (lambda a: (a[0], a[1] + a[2], -a[2], a[3] + a[2]),
           lambda a, q, p, t: (q + _div(a[2], p), p), "id"),
    "s3": (lambda a: (a[0] + a[3], a[1], a[2] + a[3], -a[3]),
           lambda a, q, p, t: (q, p - _div(a[3], q - 1)), "id"),
    "pi": (lambda a: (a[1], a[2], a[3], a[0]),
           lambda a, q, p, t: (-_div(p, t), t * (q - 1)), "id"),
    "sigma": (lambda a: (a[0], a[3], a[2], a[1]),
              lambda a, q, p, t: (1 - q, -p), "neg"),
}

_P6 = {
    "s0": (lambda a: (-a[0], a[1], a[2] + a[0], a[3], a[4]),
           lambda a, q, p, t: (q, p - _div(a[0], q - t)), "id"),
    "s1": (lambda a: (a[0], -a[1], a[2] + a[1], a[3], a[4]),
           lambda a, q, p, t: (q, p), "id"),
    "s2": (lambda a: (a[0] + a[2], a[1] + a[2], -a[2], a[3] + a[2], a[4] + a[2]),
           lambda a, q, p, t: (q + _div(a[2], p), p), "id"),
    "s3": (lambda a: (a[0], a[1], a[2] + a[3], -a[3], a[4]),
           lambda a, q, p, t: (q, p - _div(a[3], q - 1)), "id"),
    "s4": (lambda a: (a[0], a[1], a[2] + a[4], a[3], -a[4]),
           lambda a, q, p, t: (q, p - _div(a[4], q)), "id"),
    "pi1": (lambda a: (a[3], a[4], a[2], a[0], a[1]),
            lambda a, q, p, t: (_div(t, q), -_div(q * (q * p + a[2]), t)), "id"),
    "pi2": (lambda a: (a[1], a[0], a[2], a[4], a[3]),
            lambda a, q, p, t: (_div((q - 1) * t, q - t),
                                -_div(p * (q - t) ** 2 + a[2] * (q - t), t * (t - 1))), "id"),
    "sigma1": (lambda a: (a[0], a[1], a[2], a[4], a[3]),
               lambda a, q, p, t: (1 - q, -p), "one_minus"),
    "sigma2": (lambda a: (a[0], a[4], a[2], a[3], a[1]),
               lambda a, q, p, t: (_div(1, q), -q * (q * p + a[2])), "inv"),
    "sigma3": (lambda a: (a[4], a[1], a[2], a[3], a[0]),
               lambda a, q, p, t: (_div(t - q, t - 1), -(t - 1) * p), "ratio"),
}

TABLES = {K.P2: _P2, K.P3_D8: _D8, K.P3_D7: _D7, K.P3_D6: _D6, K.P4: _P4, K.P5: _P5,
          K.P6: _P6, K.P6_NORMALIZED: _P6}

_T_MAPS = {
    "id": lambda t: t,
    "neg": lambda t: -t,
    "i": lambda t: I * t,
    "one_minus": lambda t: 1 - t,
    "inv": lambda t: _div(1, t),
    "ratio": lambda t: _div(t, t - 1),
}

_NAME_ALIASES = {"π": "pi", "σ": "sigma", "'": "p", "′": "p", "₀": "0", "₁": "1", "₂": "2",
                 "₃": "3", "₄": "4"}


def generators(kind):
    return tuple(TABLES[K.parse(kind)])


def _table(kind):
    kind = K.parse(kind)
    if kind not in TABLES:
        raise ParameterError(f"{kind.value} has no Backlund transformations")
    return TABLES[kind]


def normalize_name(g):
    g = str(g).strip()
    for k, v in _NAME_ALIASES.items():
        g = g.replace(k, v)
    return g.lower()


def parse_word(word):
    if isinstance(word, str):
        word = word.replace(",", " ").replace("*", " ").split()
    return [normalize_name(g) for g in word]


# -- point maps ----------------------------------------------------------------------


def _raw(kind, g, alpha, q, p, t):
    table = _table(kind)
    g = normalize_name(g)
    if g not in table:
        raise ParameterError(f"unknown generator {g!r} for {K.parse(kind).value}")
    amap, qpmap, tmap = table[g]
    try:
        qn, pn = qpmap(alpha, q, p, t)
        tn = _T_MAPS[tmap](t)
    except ZeroDivisionError as exc:
        if isinstance(exc, PoleError):
            raise
        raise PoleError(f"{g} hits a vanishing denominator") from exc
    return tuple(amap(alpha)), qn, pn, tn


def apply_generator(kind, g, state, params):
    """Apply one generator to a table-coordinate point.

    ``state`` is a :class:`PhaseState` or a tuple ``(q, p, t)``; returns the
    new ParamSet and PhaseState.

    Raises
    ------
    PoleError
        When a denominator of the map vanishes at the point.
    """
    kind = K.parse(kind)
    if isinstance(state, PhaseState):
        q, p, t = state.y, state.conj, state.t
    else:
        q, p, t = state
    alpha = tuple(params.alpha) if params.alpha is not None else ()
    a2, q2, p2, t2 = _raw(kind, g, alpha, complex(q), complex(p), complex(t))
    newp = ParamSet.from_alpha(kind, a2) if a2 else ParamSet.empty(kind)
    return newp, PhaseState(t2, q2, p2)


def apply_word(kind, word, state, params):
    """Apply the generators of ``word`` from left to right."""
    if not isinstance(state, PhaseState):
        q, p, t = state
        state = PhaseState(complex(t), complex(q), complex(p))
    for g in parse_word(word):
        params, state = apply_generator(kind, g, state, params)
    return params, state


# -- table Hamiltonians (for pushforward checks) ---------------------------------------


def table_field(kind, alpha, q, p, t):
    """``(dq/dt, dp/dt)`` of the Hamiltonian in the table's coordinates."""
    kind = K.parse(kind)
    a = alpha
    if kind is K.P2:
        return p - q * q - t / 2, 2 * q * p + a[1]
    if kind is K.P3_D8:
        return (2 * q * q * p + q) / t, (-2 * q * p * p - p + 0.5 - t / (2 * q * q)) / t
    if kind is K.P3_D7:
        return (2 * q * q * p + a[1] * q + t) / t, (-2 * q * p * p - a[1] * p - 1) / t
    if kind is K.P3_D6:
        s = a[1] + a[3]
        dq = 2 * q * q * p - (q * q - s * q - t)
        dp = -(2 * q * p * p - (2 * q - s) * p - a[1])
        return dq / t, dp / t
    if kind is K.P4:
        return 2 * p * q - q * q - 2 * t * q - 2 * a[1], -(p * p - 2 * p * q - 2 * t * p - 2 * a[2])
    if kind is K.P5:
        dq = q * (2 * p * q - 2 * p + t * q - t - a[1] - a[3]) + a[1]
        dp = -p * (2 * p * q - p + 2 * t * q - t - a[1] - a[3]) - a[2] * t
        return dq / t, dp / t
    if kind in (K.P6, K.P6_NORMALIZED):
        a0, a1, a2, a3, a4 = a
        dq = (2 * p * q * (q - 1) * (q - t) - a4 * (q - 1) * (q - t) - a3 * q * (q - t)
              - (a0 - 1) * q * (q - 1))
        dp = ((-3 * q * q + 2 * (1 + t) * q - t) * p * p
              + ((2 * q - 1 - t) * a4 + (2 * q - t) * a3 + (2 * q - 1) * (a0 - 1)) * p
              - a2 * (a1 + a2))
        w = t * (t - 1)
        return dq / w, dp / w
    raise ParameterError(f"no table Hamiltonian for {kind.value}")


# -- relations -----------------------------------------------------------------------


def _relations(kind):
    """``(name, lhs word, rhs word)``; an empty rhs is the identity."""
    kind = K.parse(kind)
    gens = generators(kind)
    rel = []
    for g in gens:
        if kind is K.P4 and g.startswith("sigma"):
            continue
        if kind in (K.P4, K.P5) and g == "pi":
            continue
        if kind is K.P3_D6 and g == "sigma2":
            continue
        rel.append((f"{g}^2 = id", [g, g], []))
    if kind is K.P2:
        rel.append(("pi s0 pi = s1", ["pi", "s0", "pi"], ["s1"]))
    if kind is K.P3_D7:
        rel.append(("sigma s1 sigma = s0", ["sigma", "s1", "sigma"], ["s0"]))
    if kind is K.P3_D6:
        rel.append(("sigma2^4 = id", ["sigma2"] * 4, []))
    if kind is K.P4:
        rel.append(("pi^3 = id", ["pi"] * 3, []))
        for i, j in (("s0", "s1"), ("s1", "s2"), ("s0", "s2")):
            rel.append((f"({i} {j})^3 = id", [i, j] * 3, []))
        for g in ("sigma1", "sigma2"):
            rel.append((f"{g}^4 = id", [g] * 4, []))
    if kind is K.P5:
        rel.append(("pi^4 = id", ["pi"] * 4, []))
        for i in range(4):
            j = (i + 1) % 4
            rel.append((f"(s{i} s{j})^3 = id", [f"s{i}", f"s{j}"] * 3, []))
        rel.append(("(s0 s2)^2 = id", ["s0", "s2"] * 2, []))
        rel.append(("(s1 s3)^2 = id", ["s1", "s3"] * 2, []))
    if kind in (K.P6, K.P6_NORMALIZED):
        rel.append(("pi1 = sigma2 sigma1 sigma3 sigma1",
                    ["sigma2", "sigma1", "sigma3", "sigma1"], ["pi1"]))
        rel.append(("pi2 = sigma1 sigma2 sigma3 sigma2",
                    ["sigma1", "sigma2", "sigma3", "sigma2"], ["pi2"]))
        for i in ("s0", "s1", "s3", "s4"):
            rel.append((f"({i} s2)^3 = id", [i, "s2"] * 3, []))
        for i, j in itertools.combinations(("s0", "s1", "s3", "s4"), 2):
            rel.append((f"({i} {j})^2 = id", [i, j] * 2, []))
    return rel


def sample_point(kind, rng):
    """Random parameters and a random table point away from the poles."""
    kind = K.parse(kind)
    n = {K.P2: 2, K.P3_D8: 0, K.P3_D7: 2, K.P3_D6: 4, K.P4: 3, K.P5: 4,
         K.P6: 5, K.P6_NORMALIZED: 5}[kind]
    raw = [complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.3, 0.3)) for _ in range(n)]
    if kind in (K.P2, K.P3_D7):
        raw[0] = None
    elif kind is K.P3_D6:
        raw[0] = None
        raw[2] = 1 - raw[3]
    elif kind in (K.P4, K.P5):
        raw[0] = None
    elif n == 5:
        raw[2] = None
    params = ParamSet.from_alpha(kind, raw, complete=True) if n else ParamSet.empty(kind)
    q, p, t = (complex(rng.uniform(0.3, 1.5), rng.uniform(-1, 1)) for _ in range(3))
    return params, (q, p, t)


@dataclass(frozen=True)
class RelationReport:
    kind: str
    samples: int
    errors: dict

    @property
    def max_error(self):
        return max(self.errors.values()) if self.errors else 0.0

    def passed(self, tol=1e-10):
        return self.max_error <= tol

    def to_dict(self):
        return {"kind": self.kind, "samples": self.samples, "errors": dict(self.errors),
                "max_error": self.max_error}


def _point_distance(r1, r2):
    (p1, s1), (p2, s2) = r1, r2
    diffs = [abs(a - b) / max(1.0, abs(a)) for a, b in zip(p1.alpha or (), p2.alpha or ())]
    for a, b in ((s1.y, s2.y), (s1.conj, s2.conj), (s1.t, s2.t)):
        diffs.append(abs(a - b) / max(1.0, abs(a)))
    return max(diffs)


def verify_relations(kind, samples=50, seed=0):
    """Check the defining relations of the group on random points.

    Points where some word meets a pole are redrawn.
    """
    kind = K.parse(kind)
    rng = np.random.default_rng(seed)
    errors = {name: 0.0 for name, _, _ in _relations(kind)}
    done = 0
    attempts = 0
    while done < samples:
        attempts += 1
        if attempts > 20 * samples:
            raise RuntimeError("could not draw pole-free sample points")
        params, state = sample_point(kind, rng)
        try:
            results = []
            for name, lhs, rhs in _relations(kind):
                left = apply_word(kind, lhs, state, params)
                right = apply_word(kind, rhs, state, params)
                results.append((name, _point_distance(left, right)))
        except PoleError:
            continue
        for name, err in results:
            errors[name] = max(errors[name], err)
        done += 1
    return RelationReport(kind.value, samples, errors)


# -- coordinates between catalog and tables ---------------------------------------------


def to_table(params, t, y, conj):
    """Catalog ``(y, conj)`` to table ``(q, p)``."""
    k = params.kind
    if k is K.P2:
        return y, 2 * y * y + conj + t
    if k is K.P4:
        return y, y + 2 * t - 2 * conj
    if k is K.P5:
        q = 1 / (1 - y)
        return q, -(conj + params.a(2) * q) / (q * q)
    if k is K.P6:
        return y, conj
    raise ParameterError(f"{k.value} has no catalog-to-table dictionary")


def from_table(params, t, q, p):
    k = params.kind
    if k is K.P2:
        return q, p - 2 * q * q - t
    if k is K.P4:
        return q, (q + 2 * t - p) / 2
    if k is K.P5:
        return 1 - 1 / q, -p * q * q - params.a(2) * q
    if k is K.P6:
        return q, p
    raise ParameterError(f"{k.value} has no catalog-to-table dictionary")


# -- series --------------------------------------------------------------------------

_NEW_TAG = {
    ("one_minus", "t"): ("1-t", "id"), ("one_minus", "1-t"): ("t", "id"),
    ("one_minus", "1/t"): ("1/t", "mobius"),
    ("inv", "t"): ("1/t", "id"), ("inv", "1/t"): ("t", "id"),
    ("inv", "1-t"): ("1-t", "mobius"),
    ("ratio", "t"): ("t", "mobius"), ("ratio", "1-t"): ("1/t", "mobius"),
    ("ratio", "1/t"): ("1-t", "mobius"),
    ("neg", "t"): ("t", "neg"), ("i", "t"): ("t", "i"),
}


def _retag(s, tmap, new_tag, how):
    if how == "id":
        return s.with_tag(new_tag)
    x = TruncatedSeries.variable(s.order + max(0, -s.leading_exponent) + 2, new_tag)
    if how == "neg":
        inner = -x
    elif how == "i":
        inner = -I * x
    else:
        inner = -x / (1 - x)
    return s.with_tag(new_tag).compose(inner).truncated_at(s.precision)


def _p5_orbit():
    cols = ("s0", "s1", "s2", "s3", "pi", "sigma")
    rows = {"I": "I II I II III I", "II": "III I III I II II", "III": "II III II III I III"}
    return {(f"P5_{r}", g): f"P5_{v}" for r, line in rows.items()
            for g, v in zip(cols, line.split())}


def _p6_orbit():
    arrows = []
    for point, gens in (("INF", ("s1", "s2", "s3")), ("0", ("s4", "s2", "s3")),
                        ("1", ("s3", "s2", "s4"))):
        names = [f"P6_{point}_{v}" for v in ("I", "II", "III", "IV")]
        for (a, b), g in zip(zip(names, names[1:]), gens):
            arrows.append((a, g, b))
    for v in ("I", "II", "III", "IV"):
        arrows.append((f"P6_INF_{v}", "sigma2", f"P6_0_{v}"))
        arrows.append((f"P6_0_{v}", "sigma1", f"P6_1_{v}"))
    table = {}
    for a, g, b in arrows:
        table[(a, g)] = b
        table[(b, g)] = a
    return table, arrows


P5_ORBIT = _p5_orbit()
P6_ORBIT, P6_ARROWS = _p6_orbit()


def orbit_target(sid, g):
    g = normalize_name(g)
    return P5_ORBIT.get((sid, g)) or P6_ORBIT.get((sid, g))


def apply_to_series(kind, g, sol, identify_target=True):
    """Transform a catalog series solution by one generator.

    The result's id follows the orbit tables; off the tables it is found by
    matching against the catalog (``None`` when nothing matches).

    Raises
    ------
    UnsupportedRetag
        When the map of t moves the expansion point outside t = 0, 1, inf.
    """
    from .catalog import POINT_OF_TAG, SeriesSolution, identify

    kind = K.parse(kind)
    if kind is K.P6_NORMALIZED:
        kind = K.P6
    g = normalize_name(g)
    table = _table(kind)
    if g not in table:
        raise ParameterError(f"unknown generator {g!r} for {kind.value}")
    params = sol.params.with_kind(kind) if sol.kind is not kind else sol.params
    tmap = table[g][2]
    tag = sol.y.variable_tag
    if tmap == "id":
        new_tag, how = tag, "id"
    elif (tmap, tag) in _NEW_TAG:
        new_tag, how = _NEW_TAG[(tmap, tag)]
    else:
        raise UnsupportedRetag(f"{g} maps the expansion point {POINT_OF_TAG[tag]} off the chart")
    order = max(sol.y.order, sol.conj.order) + 4
    t = t_as_series(tag, order)
    q, p = to_table(params, t, sol.y, sol.conj)
    a2, qn, pn, _ = _raw(kind, g, tuple(params.alpha), q, p, t)
    newp = ParamSet.from_alpha(kind, a2)
    qn = _retag(qn, tmap, new_tag, how)
    pn = _retag(pn, tmap, new_tag, how)
    tn = t_as_series(new_tag, order)
    y, c = from_table(newp, tn, qn, pn)
    point = POINT_OF_TAG[new_tag]
    out = SeriesSolution(None, newp, y.normalized(1e-14), c.normalized(1e-14), point)
    target = orbit_target(sol.id, g) if sol.id else None
    if target is None and identify_target:
        target = identify(out)
    return SeriesSolution(target, newp, out.y, out.conj, point)


# -- simple symmetries ---------------------------------------------------------------

_SIMPLE = {K.P1: (5, 3, 1, 2), K.P2: (3, 1, 2, 2), K.P4: (2, 1, 1, 1)}


def simple_symmetry(kind, sol, power=1):
    """Parameter-preserving map ``y -> r^a y(t / r^b)`` on a series solution.

    P1 uses a fifth root of unity (``y -> z^3 y``, ``t -> z t``), P2 a cube
    root (``y -> w y``, ``t -> w^2 t``), P4 the sign flip.
    """
    from .catalog import SeriesSolution

    kind = K.parse(kind)
    if kind not in _SIMPLE:
        raise ParameterError(f"{kind.value} has no simple symmetry")
    n, ay, at, ac = _SIMPLE[kind]
    r = cmath.exp(2j * cmath.pi * power / n)

    def act(s, amp):
        k = s.leading_exponent + np.arange(s.coeffs.size)
        return TruncatedSeries(s.coeffs * r ** amp * r ** (-at * k), s.leading_exponent,
                               s.variable_tag)

    return SeriesSolution(sol.id, sol.params, act(sol.y, ay), act(sol.conj, ac),
                          sol.expansion_point)


def is_symmetric(kind, sol, tol=1e-12):
    img = simple_symmetry(kind, sol)
    scale = max(1.0, float(np.abs(sol.y.coeffs).max()))
    d = max(float(np.abs(img.y.coeffs - sol.y.coeffs).max()),
            float(np.abs(img.conj.coeffs - sol.conj.coeffs).max()))
    return d <= tol * scale
