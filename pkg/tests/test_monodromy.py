import cmath
import math

import numpy as np
import pytest

from painleve_lab import _transport_py
from painleve_lab.catalog import build_solution
from painleve_lab.errors import ParameterError
from painleve_lab.lax import RationalMatrix, build_pair
from painleve_lab.monodromy import (PICARD_REFERENCE, _as_rational, closed_form_monodromy,
                                    det_defects, integrate_loop, loop_around, loop_at_infinity,
                                    numerical_monodromy_p6, p6_loops, picard_p0t,
                                    trace_invariants, verify_cyclic)
from painleve_lab.systems import ParamSet

try:
    from painleve_lab import _transport as _compiled
except ImportError:
    _compiled = None

ALPHA = [0.2, 0.3, None, 0.25, 0.1]


@pytest.fixture(scope="module")
def p6():
    return ParamSet.from_alpha("P6", ALPHA, complete=True)


@pytest.fixture(scope="module")
def p6_sol(p6):
    return build_solution("P6_0_I", p6, order=30)


@pytest.fixture(scope="module")
def p6_numeric(p6, p6_sol):
    return numerical_monodromy_p6(p6, p6_sol, 0.1)


def test_zero_connection_gives_identity():
    M = integrate_loop(0, loop_around(0.0))
    assert np.abs(M - np.eye(2)).max() < 1e-14


def test_fuchsian_diagonal_monodromy():
    th = 0.3
    A = RationalMatrix.from_terms([(np.diag([th, -th]), 0, -1)])
    M = integrate_loop(A, loop_around(0.0, radius=0.2))
    ref = np.diag([cmath.exp(0.6j * math.pi), cmath.exp(-0.6j * math.pi)])
    assert np.abs(M - ref).max() < 1e-10


def test_seed_basis_is_conjugation():
    A = RationalMatrix.from_terms([(np.array([[0.1, 0.4], [0.2, -0.1]]), 1, -1)])
    path = loop_around(1.0, radius=0.3)
    S = np.array([[1, 2], [0.5, 3]], dtype=complex)
    M = integrate_loop(A, path)
    MS = integrate_loop(A, path, seed_basis=S)
    assert np.abs(MS - np.linalg.solve(S, M @ S)).max() < 1e-10


def test_singular_seed_rejected():
    with pytest.raises(ParameterError):
        integrate_loop(0, loop_around(0.0), seed_basis=np.zeros((2, 2)))


def test_path_too_close_rejected():
    A = RationalMatrix.from_terms([(np.eye(2), 0, -1)])
    with pytest.raises(ParameterError):
        integrate_loop(A, loop_around(0.0, radius=1e-4))


def test_loop_geometry():
    loops = p6_loops(0.1)
    pts = {"0": 0, "t": 0.1, "1": 1}
    for j, p in pts.items():
        assert loops[j].is_closed()
        assert loops[j].winding(p) == 1
        assert all(loops[j].winding(q) == 0 for k, q in pts.items() if k != j)
        assert loops[j].clearance(list(pts.values())) > 1e-2
    assert all(loops["inf"].winding(q) == -1 for q in pts.values())
    assert loop_at_infinity().is_closed()


def test_local_traces_match_exponents(p6, p6_numeric):
    a0, a1, a2, a3, a4 = p6.alpha
    tr = trace_invariants(p6_numeric).traces
    assert abs(tr["M0"] - 2 * cmath.cos(math.pi * a4)) < 1e-8
    assert abs(tr["Mt"] - 2 * cmath.cos(math.pi * a0)) < 1e-8
    assert abs(tr["M1"] - 2 * cmath.cos(math.pi * a3)) < 1e-8
    assert abs(tr["Minf"] + 2 * cmath.cos(math.pi * a1)) < 1e-8


def test_numeric_pair_trace(p6, p6_numeric):
    a0, a4 = p6.alpha[0], p6.alpha[4]
    p0t = trace_invariants(p6_numeric).pairs["p0t"]
    assert abs(p0t - 2 * cmath.cos(math.pi * (a0 - a4))) < 1e-7


def test_numeric_cyclic_and_determinants(p6_numeric):
    assert verify_cyclic(p6_numeric) < 1e-7
    assert max(det_defects(p6_numeric).values()) < 1e-8


def test_numeric_matches_closed_form(p6, p6_numeric):
    c = closed_form_monodromy("P6_0_I", p6)
    assert trace_invariants(p6_numeric).max_difference(trace_invariants(c)) < 1e-6


def test_isomonodromy(p6, p6_sol):
    invs = [trace_invariants(numerical_monodromy_p6(p6, p6_sol, t)) for t in (0.05, 0.1, 0.2)]
    for a in invs[1:]:
        assert invs[0].max_difference(a) < 1e-6


def test_loop_shape_independence(p6, p6_sol, p6_numeric):
    oct_ = numerical_monodromy_p6(p6, p6_sol, 0.1, {"shape": "octagon"})
    for k in ("M0", "Mt", "M1", "Minf"):
        assert np.abs(oct_[k] - p6_numeric[k]).max() < 1e-8


def test_large_t_rejected(p6, p6_sol):
    with pytest.raises(ParameterError):
        numerical_monodromy_p6(p6, p6_sol, 0.5)


def test_p6_closed_form_cyclic_and_connection(p6):
    c = closed_form_monodromy("P6_0_I", p6)
    assert verify_cyclic(c) < 1e-10
    assert abs(np.linalg.det(c["Gamma01"])) > 1e-6
    assert max(det_defects(c).values()) < 1e-10


def test_p6_closed_form_rejects_integer_difference():
    p = ParamSet.from_alpha("P6", [0.2, 0.3, None, 0.25, 0.2], complete=True)
    with pytest.raises(ParameterError):
        closed_form_monodromy("P6_0_I", p)


def test_p4_closed_form_cyclic():
    p = ParamSet.from_theta("P4", {"0": 0.2, "inf": 0.3})
    assert verify_cyclic(closed_form_monodromy("P4_SYM", p)) < 1e-10


def test_p4_degenerate_stokes():
    d = closed_form_monodromy("P4_SYM", ParamSet.from_alpha("P4", [0, 0.4, 0.6]))
    assert np.abs(d["G2"] - np.eye(2)).max() < 1e-12 and np.abs(d["G4"] - np.eye(2)).max() < 1e-12
    d = closed_form_monodromy("P4_SYM", ParamSet.from_alpha("P4", [0.6, 0.4, 0]))
    assert np.abs(d["G1"] - np.eye(2)).max() < 1e-12 and np.abs(d["G3"] - np.eye(2)).max() < 1e-12


def test_p5_closed_form_cyclic():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    assert verify_cyclic(closed_form_monodromy("P5_I", p)) < 1e-10


def test_p5_closed_form_upper_triangular_case():
    # theta0 + theta1 - theta_inf = 0 puts a reciprocal-Gamma zero in the lower row
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.25, "inf": 0.55})
    c = closed_form_monodromy("P5_I", p)
    assert abs(c["Gamma0inf"][1, 0]) < 1e-12 or abs(c["Gamma0inf"][1, 1]) < 1e-12
    assert verify_cyclic(c) < 1e-10


def test_p5_minus1_matrices():
    ti = 0.35
    p = ParamSet.from_theta("P5", {"0": 0.5, "1": 0.5, "inf": ti})
    c = closed_form_monodromy("P5_RATIONAL_MINUS1", p)
    e = cmath.exp(1j * math.pi * ti)
    assert np.abs(c["M0"] - np.array([[0, 1j * e], [1j / e, 0]])).max() < 1e-15
    assert np.abs(c["M1"] - np.array([[0, -1j], [-1j, 0]])).max() < 1e-15
    assert np.abs(c["E"] - np.diag([1 / e, e])).max() < 1e-15
    assert verify_cyclic(c) < 1e-12


def test_p5_minus1_requires_half_thetas():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.5, "inf": 0.35})
    with pytest.raises(ParameterError):
        closed_form_monodromy("P5_RATIONAL_MINUS1", p)


def test_picard_reference():
    assert abs(picard_p0t(PICARD_REFERENCE["c2"]) - PICARD_REFERENCE["p0t"]) < 1e-14


@pytest.mark.skipif(_compiled is None, reason="compiled kernel not built")
def test_backends_agree(p6, p6_sol):
    A = _as_rational(build_pair("P6_normalized", p6, p6_sol, 0.1).A)
    for loop in p6_loops(0.1).values():
        args = (A.coeffs, A.centers, A.powers, loop.as_array(), np.eye(2, dtype=complex))
        Yp, np_ = _transport_py.transport(*args, tol=1e-12)
        Yc, nc = _compiled.transport(*args, tol=1e-12)
        assert np.abs(np.array(Yp) - np.array(Yc)).max() < 1e-12
        assert np_ == nc
