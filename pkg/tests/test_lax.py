import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from painleve_lab.catalog import build_solution, classical_solution
from painleve_lab.errors import ParameterError, ResonanceError
from painleve_lab.lax import (BranchCutError, LaxPair, a_infinity, build_pair,
                              constraint_residuals, fuchs_transform_check, integrability_residual,
                              p5_minus1_pair, reduce_at_limit, singularities)
from painleve_lab.systems import ParamSet, PhaseState

X = (0.5 + 0.3j, -0.6 + 0.4j, 1.7 - 0.5j)


@pytest.fixture(scope="module")
def p6():
    return ParamSet.from_alpha("P6", [0.2, 0.3, None, 0.25, 0.1], complete=True)


@pytest.fixture(scope="module")
def p6n_pair(p6):
    return build_pair("P6_normalized", p6, build_solution("P6_0_I", p6, order=30), 0.1)


def test_p6_normalized_constraints(p6n_pair):
    assert max(constraint_residuals(p6n_pair).values()) < 1e-12


def test_p6_normalized_infinity_residue(p6, p6n_pair):
    thi = 1 - p6.alpha[1]
    assert np.abs(a_infinity(p6n_pair) - np.diag([thi / 2, -thi / 2])).max() < 1e-12


def test_p6_normalized_is_traceless(p6n_pair, rng):
    for _ in range(20):
        x = complex(*rng.uniform(-2, 2, 2))
        assert abs(np.trace(p6n_pair.A(x))) < 1e-12


def test_p6_singularities(p6, p6n_pair):
    info = {str(s.location): s for s in singularities(p6n_pair)}
    a0, a1, a2, a3, a4 = p6.alpha
    for loc, th in (("0j", a4), ("(1+0j)", a3), ("(0.1+0j)", a0)):
        assert info[loc].type == "regular"
        assert np.allclose(np.diag(info[loc].exponents), [th / 2, -th / 2], atol=1e-12)
    assert info["inf"].type == "regular"
    assert np.allclose(sorted(np.diag(info["inf"].exponents).real), [-(1 - a1) / 2, (1 - a1) / 2])


def test_p6_integrability(p6n_pair):
    assert integrability_residual(p6n_pair, 0.5 + 0.3j, dt=1e-4) < 1e-6


@pytest.mark.parametrize("kind,sid,params,t", [
    ("P4", "P4_SYM", {"0": 0.2, "inf": 0.3}, 0.1),
    ("P5", "P5_I", {"0": 0.3, "1": 0.4, "inf": 0.35}, 0.1),
])
def test_integrability_along_series(kind, sid, params, t):
    p = ParamSet.from_theta(kind, params)
    lp = build_pair(kind, p, build_solution(sid, p, order=16), t)
    for x in X:
        assert integrability_residual(lp, x) < 1e-7


def test_p5_irregular_infinity():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    lp = build_pair("P5", p, build_solution("P5_I", p, order=12), 0.1)
    info = {str(s.location): s for s in singularities(lp)}
    assert info["inf"].type == "irregular" and info["inf"].poincare_rank == 1
    assert info["0j"].type == "regular" and info["(1+0j)"].type == "regular"


def test_null_pair_residual_is_zero():
    assert integrability_residual(LaxPair.null(), 0.3 + 0.2j, t=0.5, dt=1e-3) == 0.0


def test_p5_minus1_pair_exact_residual():
    lp = p5_minus1_pair(0.35, 0.4)
    for x in X:
        assert integrability_residual(lp, x) < 1e-10


def test_p5_minus1_pair_matches_general_pair():
    ti, t = 0.35, 0.4
    exact = p5_minus1_pair(ti, t)
    p = ParamSet.from_theta("P5", {"0": 0.5, "1": 0.5, "inf": ti})
    general = build_pair("P5", p, PhaseState(t, -1 + 0j, -(1 + ti) / 4 + t / 8, 0j), t)
    for x in X:
        assert np.abs(exact.A(x) - general.A(x)).max() < 1e-14
        assert np.abs(exact.B(x) - general.B(x)).max() < 1e-14


def test_p5_minus1_pair_entries():
    ti, t = 0.35, 0.4
    lp = p5_minus1_pair(ti, t)
    x = 0.5 + 0.3j
    R0 = -np.array([[ti / 4 + t / 8, (1 - ti) / 4 - t / 8], [(1 + ti) / 4 + t / 8, -ti / 4 - t / 8]])
    R1 = -np.array([[ti / 4 - t / 8, (-1 + ti) / 4 - t / 8], [-((1 + ti) / 4 - t / 8), -ti / 4 + t / 8]])
    ref = np.diag([t / 2, -t / 2]) + R0 / x + R1 / (x - 1)
    assert np.abs(lp.A(x) - ref).max() < 1e-15


def test_p4_pair_at_zero_time_is_whittaker_system():
    p = ParamSet.from_theta("P4", {"0": 0.2, "inf": 0.3})
    lp = build_pair("P4", p, build_solution("P4_SYM", p, order=16), 0)
    red = reduce_at_limit("P4", "P4_SYM", p)
    for x in X:
        assert np.abs(lp.A(x) - red.matrix_A(x)).max() < 1e-14


@pytest.mark.parametrize("k,m", [(-0.1, -0.15), (0.0, -1 / 3)])
def test_p4_reduction_parameters_and_solutions(k, m):
    p = ParamSet.from_theta("P4", {"0": 2 * m + 0.5, "inf": 2 * k + 0.5})
    red = reduce_at_limit("P4", "P4_SYM", p)
    assert red.family == "Whittaker"
    assert abs(red.parameters["k"] - k) < 1e-15 and abs(red.parameters["m"] - m) < 1e-15
    for xi in (0.8 + 0.3j, 2.0 - 0.5j, -1.1 + 0.7j):
        assert max(red.solution_residuals(xi)) < 1e-8


def test_p4_reduction_resonance():
    with pytest.raises(ResonanceError):
        reduce_at_limit("P4", "P4_SYM", ParamSet.from_theta("P4", {"0": 0.5, "inf": 0.3}))


def test_p5_gauss_reduction():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    red = reduce_at_limit("P5", "P5_I", p)
    for x in (0.3 + 0.2j, -0.4 + 0.1j):
        assert max(red.solution_residuals(x)) < 1e-8


@pytest.mark.parametrize("limit", ["gauss", "heun"])
def test_p6_reductions(p6, limit):
    red = reduce_at_limit("P6", "P6_0_I", p6, limit=limit)
    points = (0.3 + 0.2j, -0.4 + 0.5j) if limit == "gauss" else (0.3 + 0.2j, 2.0 + 1.0j, -1.5 - 0.5j)
    for x in points:
        assert max(red.solution_residuals(x)) < 1e-8


def test_unknown_reduction_rejected(p6):
    with pytest.raises(ParameterError):
        reduce_at_limit("P6", "P6_1_I", p6)
    with pytest.raises(ParameterError):
        reduce_at_limit("P6", "P6_0_I", p6, limit="airy")


def test_fuchs_transform():
    rep = fuchs_transform_check(0.35, [(2 + 0.5j, 0.4)])
    assert rep.passed, rep.to_dict()


def test_fuchs_branch_cut():
    with pytest.raises(BranchCutError):
        fuchs_transform_check(0.35, [(0.5 + 0.01j, 0.4)])


@given(st.floats(0.0, 6.283))
def test_gauge_normalization_leaves_traces(phase):
    # rescaling u rotates the off-diagonal entries but not tr A or det A
    ti, t = 0.35, 0.4
    a = p5_minus1_pair(ti, t)
    b = p5_minus1_pair(ti, t, u0=cmath.exp(1j * phase))
    for x in X:
        assert abs(np.linalg.det(a.A(x)) - np.linalg.det(b.A(x))) < 1e-12
        assert abs(a.A(x)[0, 0] - b.A(x)[0, 0]) < 1e-14


def test_classical_pair_integrability():
    p = ParamSet.from_alpha("P4", [1 / 3, 1 / 3, 1 / 3])
    cl = classical_solution("P4_RATIONAL_2T3", p)
    lp = build_pair("P4", p, cl, 0.7)
    assert integrability_residual(lp, 0.5 + 0.3j) < 1e-7
