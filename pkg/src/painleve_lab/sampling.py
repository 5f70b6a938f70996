"""Random generic parameter draws for checks and sweeps."""

from __future__ import annotations

import numpy as np

from .catalog import CATALOG
from .errors import ParameterError
from .systems import ALPHA_COUNT, K, ParamSet, nearest_integer_distance

# the dependent alpha, completed from the affine constraint
_FREE_INDEX = {K.P6: 2, K.P6_NORMALIZED: 2}
GENERIC_MARGIN = 0.1
P5_MARGIN = 0.15


def condition_margin(p, sid):
    """Distance of ``p`` from violating the existence conditions of ``sid``."""
    m = np.inf
    for cond in CATALOG[sid].conditions:
        v = cond.value(p.with_kind(CATALOG[sid].kind))
        m = min(m, abs(v) if cond.test == "nonzero" else nearest_integer_distance(v))
    return m


def p5_margin(p):
    """Distance from the P5 parameter sets where solutions (I)-(III) collide or blow up."""
    t0, t1, ti = p.th("0"), p.th("1"), p.th("inf")
    m = min(abs(x) for x in (t0 - t1 + ti, ti, t0 - t1, t0 - t1 - ti, t0 + t1 + ti))
    return min(m, nearest_integer_distance(t0 + t1), nearest_integer_distance(t0))


def draw_alpha(kind, rng, lo=-0.45, hi=0.45, imag=0.2):
    kind = K.parse(kind)
    n = ALPHA_COUNT[kind]
    raw = [complex(rng.uniform(lo, hi), rng.uniform(-imag, imag) if imag else 0.0)
           for _ in range(n)]
    raw[_FREE_INDEX.get(kind, 0)] = None
    return ParamSet.from_alpha(kind, raw, complete=True)


def generic_params(kind, rng, ids=(), margin=GENERIC_MARGIN, lo=-0.45, hi=0.45, imag=0.2,
                   extra=None, max_tries=10000):
    """A parameter draw at least ``margin`` away from the existence conditions of ``ids``.

    P5 draws are also kept ``P5_MARGIN`` away from the degenerate sets of
    :func:`p5_margin`; ``extra(p)`` may add a further acceptance test.
    """
    kind = K.parse(kind)
    for _ in range(max_tries):
        p = draw_alpha(kind, rng, lo, hi, imag)
        if any(condition_margin(p, sid) < margin for sid in ids):
            continue
        if kind is K.P5 and p5_margin(p) < P5_MARGIN:
            continue
        if extra is not None and not extra(p):
            continue
        return p
    raise ParameterError(f"no generic {kind.value} draw found in {max_tries} tries")
