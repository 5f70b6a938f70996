"""The end-to-end acceptance checks, shared by the test suite and ``painleve-lab verify``."""

from __future__ import annotations

import cmath
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import reference
from .backlund import P5_ORBIT, P6_ARROWS, TABLES, apply_to_series, verify_relations
from .catalog import build_solution, classical_solution, list_solutions, pair_error
from .errors import ResonanceError
from .lax import fuchs_transform_check, matrix_derivative, reduce_at_limit
from .monodromy import (closed_form_monodromy, numerical_monodromy_p6, trace_invariants,
                        verify_cyclic)
from .sampling import (GENERIC_MARGIN, P5_MARGIN, condition_margin, generic_params,
                       p5_margin)
from .series import TruncatedSeries
from .systems import K, ParamSet, series_residual

ORDER = 12
P6_IDS = tuple(list_solutions("P6"))
P4_IDS = tuple(i for i in list_solutions("P4"))
P5_IDS = ("P5_I", "P5_II", "P5_III")


@dataclass
class CriterionResult:
    """Named sub-checks ``{name: (value, tolerance)}``; passes when every value < tolerance."""

    number: int
    title: str
    checks: dict
    detail: dict = field(default_factory=dict)
    error: str = None

    @property
    def passed(self):
        return self.error is None and all(v < tol for v, tol in self.checks.values())

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        body = "; ".join(f"{k}={v:.3e} (tol {tol:.0e})" for k, (v, tol) in self.checks.items())
        if self.error:
            body = f"error: {self.error}"
        return f"[{mark}] criterion {self.number:2d} {self.title}: {body}"

    def to_dict(self):
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "checks": {k: {"value": float(v), "tolerance": tol}
                           for k, (v, tol) in self.checks.items()},
                "detail": self.detail, "error": self.error}


def _rng(seed, n):
    return np.random.default_rng([seed, n])


def _residual_size(p, sol, upto):
    worst = 0.0
    for r in series_residual(p, sol.y, sol.conj):
        for k in range(r.leading_exponent, min(upto, r.precision - 1) + 1):
            worst = max(worst, abs(r.coefficient(k)))
    return worst


def _p6_draw(rng, ids=P6_IDS):
    return generic_params("P6", rng, ids)


# -- criteria ---------------------------------------------------------------------------


def criterion_1(seed=0, draws=10):
    rng = _rng(seed, 1)
    detail = {}
    for sid in P4_IDS + P5_IDS + P6_IDS:
        kind = sid.split("_")[0]
        worst = 0.0
        for _ in range(draws):
            p = generic_params(kind, rng, (sid,))
            sol = build_solution(sid, p, order=ORDER)
            worst = max(worst, _residual_size(sol.params, sol, ORDER - 1))
        detail[sid] = worst
    return CriterionResult(1, "series residuals", {"residual": (max(detail.values()), 1e-10)}, detail)


def criterion_2(seed=0, draws=5):
    rng = _rng(seed, 2)
    detail = {"P4_a1": 0.0, "P5_I_b1": 0.0}
    for _ in range(draws):
        p = generic_params("P4", rng, ("P4_SYM_PLUS_ZERO",))
        sol = build_solution("P4_SYM", p, order=ORDER)
        th0 = p.th("0")
        a1 = reference.p4_symmetric(th0, p.th("inf"))["a1"]
        detail["P4_a1"] = max(detail["P4_a1"], abs(sol.y.coefficient(3) - 4 * th0 * a1))
        p = generic_params("P5", rng, P5_IDS)
        sol = build_solution("P5_I", p, order=ORDER)
        b1 = reference.p5_first(p.th("0"), p.th("1"), p.th("inf"))["b1"]
        detail["P5_I_b1"] = max(detail["P5_I_b1"], abs(sol.conj.coefficient(1) - b1))
    for sid in P6_IDS:
        worst = 0.0
        for _ in range(draws):
            p = _p6_draw(rng)
            sol = build_solution(sid, p, order=ORDER)
            comp = {"y": sol.y, "z": sol.conj, "zbar": sol.zbar}
            for (c, k), v in reference.reference(sid, p.alpha).items():
                worst = max(worst, abs(comp[c].coefficient(k) - v) / max(1.0, abs(v)))
        detail[sid] = worst
    return CriterionResult(2, "tabulated coefficients", {"difference": (max(detail.values()), 1e-12)},
                           detail)


def criterion_3(seed=0, draws=5, order=8):
    rng = _rng(seed, 3)
    detail = {}
    entries = [("P5", sid, g, tgt) for (sid, g), tgt in P5_ORBIT.items()]
    for a, g, b in P6_ARROWS:
        entries += [("P6", a, g, b), ("P6", b, g, a)]
    for kind, sid, g, tgt in entries:
        worst = 0.0
        for _ in range(draws):
            while True:
                p = generic_params(kind, rng, (sid,))
                sol = build_solution(sid, p, order=ORDER)
                out = apply_to_series(kind, g, sol, identify_target=False)
                q = out.params
                if condition_margin(q, tgt) >= GENERIC_MARGIN and (
                        kind != "P5" or p5_margin(q) >= P5_MARGIN):
                    break
            ref = build_solution(tgt, out.params, order=ORDER)
            worst = max(worst, pair_error(out, ref, order))
        detail[f"{sid}.{g}->{tgt}"] = worst
    return CriterionResult(3, "orbit tables", {"pair_error": (max(detail.values()), 1e-9)}, detail)


def criterion_4(seed=0, samples=50):
    detail = {}
    for kind in TABLES:
        rep = verify_relations(kind, samples=samples, seed=seed)
        detail[kind.value] = rep.max_error
    return CriterionResult(4, "group relations", {"relation": (max(detail.values()), 1e-10)}, detail)


def criterion_5(seed=0, draws=10):
    rng = _rng(seed, 5)
    worst = 0.0
    for _ in range(draws):
        p = ParamSet.from_theta("P4", {"0": complex(rng.uniform(0.05, 0.45)),
                                       "inf": complex(rng.uniform(0.05, 0.45))})
        worst = max(worst, verify_cyclic(closed_form_monodromy("P4_SYM", p)))
        p = generic_params("P5", rng, ("P5_I",))
        worst = max(worst, verify_cyclic(closed_form_monodromy("P5_I", p)))
    degenerate = 0.0
    for _ in range(draws):
        a1 = rng.uniform(0.1, 0.9)
        d = closed_form_monodromy("P4_SYM", ParamSet.from_alpha("P4", [0, a1, 1 - a1]))
        degenerate = max(degenerate, *(np.abs(d[g] - np.eye(2)).max() for g in ("G2", "G4")))
        d = closed_form_monodromy("P4_SYM", ParamSet.from_alpha("P4", [1 - a1, a1, 0]))
        degenerate = max(degenerate, *(np.abs(d[g] - np.eye(2)).max() for g in ("G1", "G3")))
    return CriterionResult(5, "closed-form cyclic relations",
                           {"cyclic": (worst, 1e-10), "degenerate_stokes": (degenerate, 1e-10)})


def _monodromy_draw(rng):
    return generic_params("P6", rng, ("P6_0_I",), lo=0.05, hi=0.45, imag=0.0)


def criterion_6(seed=0, draws=5, t=0.1):
    rng = _rng(seed, 6)
    inv = cyc = 0.0
    for _ in range(draws):
        p = _monodromy_draw(rng)
        sol = build_solution("P6_0_I", p, order=30)
        d = numerical_monodromy_p6(p, sol, t)
        c = closed_form_monodromy("P6_0_I", p)
        inv = max(inv, trace_invariants(d).max_difference(trace_invariants(c)))
        cyc = max(cyc, verify_cyclic(d))
    return CriterionResult(6, "numeric vs closed-form P6 monodromy",
                           {"invariants": (inv, 1e-6), "cyclic": (cyc, 1e-7)}, {"t": t})


def criterion_7(seed=0, draws=5, ts=(0.05, 0.1, 0.2)):
    rng = _rng(seed, 7)
    worst = 0.0
    for _ in range(draws):
        p = _monodromy_draw(rng)
        sol = build_solution("P6_0_I", p, order=30)
        invs = [trace_invariants(numerical_monodromy_p6(p, sol, t)) for t in ts]
        for i in range(len(invs)):
            for j in range(i + 1, len(invs)):
                worst = max(worst, invs[i].max_difference(invs[j]))
    return CriterionResult(7, "isomonodromy", {"invariants": (worst, 1e-6)}, {"t": list(ts)})


def _matrix_residual(red, x, radius):
    Psi = red.matrix_solution(x)
    dPsi = matrix_derivative(red.matrix_solution, x, radius)
    return float(np.abs(dPsi - red.matrix_A(x) @ Psi).max()) / max(1.0, float(np.abs(Psi).max()))


def criterion_8(seed=0, points=20):
    rng = _rng(seed, 8)
    w = f = h = 0.0
    for _ in range(points):
        p = ParamSet.from_theta("P4", {"0": complex(rng.uniform(0.05, 0.45)),
                                       "inf": complex(rng.uniform(-0.45, 0.45))})
        red = reduce_at_limit("P4", "P4_SYM", p)
        x = cmath.rect(rng.uniform(0.4, 2.5), rng.uniform(-1.2, 1.2))
        w = max(w, _matrix_residual(red, x, 0.1), *red.solution_residuals(x * x))
        p = generic_params("P5", rng, ("P5_I",), imag=0.0)
        red = reduce_at_limit("P5", "P5_I", p)
        x = cmath.rect(rng.uniform(0.2, 0.6), rng.uniform(0.3, 2.8))
        f = max(f, _matrix_residual(red, x, 0.05), *red.solution_residuals(x))
        p = _monodromy_draw(rng)
        red = reduce_at_limit("P6", "P6_0_I", p, limit="heun")
        xi = cmath.rect(rng.uniform(0.3, 3.0), rng.uniform(-2.8, 2.8))
        h = max(h, *red.solution_residuals(xi))
    return CriterionResult(8, "t = 0 reductions",
                           {"whittaker": (w, 1e-8), "gauss": (f, 1e-8), "heun": (h, 1e-9)})


def criterion_9(seed=0, points=20):
    rng = _rng(seed, 9)
    ti = rng.uniform(0.05, 0.45)
    samples = [(complex(rng.uniform(1.2, 3.0), rng.uniform(0.1, 1.5)),
                complex(rng.uniform(0.05, 0.8), rng.uniform(-0.2, 0.2))) for _ in range(points)]
    rep = fuchs_transform_check(ti, samples)
    mat = max(rep.matrix_x_residual, rep.matrix_t_residual)
    p = ParamSet.from_theta("P5", {"0": 0.5, "1": 0.5, "inf": ti})
    cyc = verify_cyclic(closed_form_monodromy("P5_RATIONAL_MINUS1", p))
    return CriterionResult(9, "y = -1 transformation", {"matrix": (mat, 1e-8), "cyclic": (cyc, 1e-12)},
                           {"theta_inf": ti})


def _poly(coeffs, n, tag="t"):
    c = list(coeffs) + [0.0] * (n + 1 - len(coeffs))
    return TruncatedSeries(c, 0, tag)


def criterion_10(seed=0, draws=5):
    rng = _rng(seed, 10)
    p4 = ParamSet.from_alpha("P4", [1 / 3, 1 / 3, 1 / 3])
    r4 = _residual_size(p4, _Pair(_poly([0, -2 / 3], 8), _poly([0, 1 / 3], 8)), 6)
    r5 = 0.0
    for _ in range(draws):
        ti = complex(rng.uniform(-0.45, 0.45), rng.uniform(-0.2, 0.2))
        p5 = ParamSet.from_theta("P5", {"0": 0.5, "1": 0.5, "inf": ti})
        r5 = max(r5, _residual_size(p5, _Pair(_poly([-1], 8), _poly([-(1 + ti) / 4, 1 / 8], 8)), 6))
    sq = 0.0
    for _ in range(draws):
        a1, a0 = (complex(rng.uniform(0.05, 0.3), rng.uniform(-0.1, 0.1)) for _ in range(2))
        p6 = ParamSet.from_alpha("P6", [a0, a1, None, a0, a1], complete=True)
        cl = classical_solution("P6_ALGEBRAIC_SQRT_T", p6, order=8)
        sol = build_solution("P6_1_II", p6, order=8)
        sq = max(sq, max(abs(sol.y.coefficient(k) - cl.series[0].coefficient(k)) for k in range(5)))
    return CriterionResult(10, "classical specializations",
                           {"P4_rational": (r4, 1e-13), "P5_minus1": (r5, 1e-13),
                            "P6_sqrt_t_vs_1_II": (sq, 1e-13)})


@dataclass
class _Pair:
    y: TruncatedSeries
    conj: TruncatedSeries


def criterion_11(seed=0):
    p = ParamSet.from_alpha("P6", [0.2, 0.25, None, 0.15, 1.2], complete=True)
    try:
        build_solution("P6_0_I", p, order=ORDER)
    except ResonanceError as err:
        return CriterionResult(11, "resonance gate", {"order_mismatch": (abs(err.n - 1), 0.5)},
                               {"n": err.n, "message": str(err)})
    return CriterionResult(11, "resonance gate", {}, error="no ResonanceError raised")


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 12)}


def _run_one(args):
    n, seed = args
    try:
        return CRITERIA[n](seed=seed)
    except Exception as err:  # reported as a failure, never swallowed silently
        return CriterionResult(n, CRITERIA[n].__name__, {}, error=f"{type(err).__name__}: {err}")


def worker_count(requested=None):
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("PAINLEVE_LAB_THREADS")
    return max(1, int(env)) if env else 1


def run_acceptance(numbers=None, seed=0, workers=None):
    """Run the selected criteria; results are ordered by criterion number."""
    numbers = sorted(numbers or CRITERIA)
    jobs = [(n, seed) for n in numbers]
    nw = min(worker_count(workers), len(jobs))
    if nw <= 1:
        return [_run_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=nw) as ex:
        return list(ex.map(_run_one, jobs))
