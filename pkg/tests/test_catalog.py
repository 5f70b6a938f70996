import numpy as np
import pytest

from painleve_lab.catalog import (CATALOG, build_solution, classical_solution,
                                  classical_specialize, existence_check, identify, list_solutions,
                                  pair_error, solution_id)
from painleve_lab.errors import ExistenceError, ParameterError, ResonanceError
from painleve_lab.sampling import generic_params
from painleve_lab.systems import ParamSet, PhaseState, hamiltonian_rhs, series_residual

ORDER = 12


def _p6(a0, a1, a3, a4):
    return ParamSet.from_alpha("P6", (a0, a1, None, a3, a4), complete=True)


def residual(p, sol, upto):
    worst = 0.0
    for r in series_residual(p, sol.y, sol.conj):
        for k in range(r.leading_exponent, min(upto, r.precision - 1) + 1):
            worst = max(worst, abs(r.coefficient(k)))
    return worst


# -- existence -------------------------------------------------------------------------------


def test_0I_integer_difference_violates():
    res = existence_check("P6_0_I", _p6(0.2, 0.25, 0.15, 1.2))
    assert not res and res.condition == "α₄−α₀ ∈ ℤ"


def test_p5_III_generic_point_ok():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.2})
    assert existence_check("P5_III", p)


def test_0III_alpha1_zero_violates():
    res = existence_check("P6_0_III", _p6(0.1, 0.0, 0.25, 0.3))
    assert not res and "α₁" in res.condition


def test_build_raises_existence_error_with_condition():
    with pytest.raises(ExistenceError) as info:
        build_solution("P6_0_I", _p6(0.2, 0.25, 0.15, 0.2))
    assert info.value.condition == "α₄−α₀ ∈ ℤ"


def test_resonance_reports_order_and_condition():
    with pytest.raises(ResonanceError) as info:
        build_solution("P6_0_I", _p6(0.2, 0.25, 0.15, 1.2), ORDER)
    assert info.value.n == 1 and info.value.condition == "α₄−α₀ ∈ ℤ"


# -- known values ------------------------------------------------------------------------------


def test_p4_sym_third_coefficient():
    sol = build_solution("P4_SYM", ParamSet.from_theta("P4", {"0": 0.2, "inf": 0.3}), 8)
    assert abs(sol.y.coefficient(3) - 4 * 0.2 * (-2 / 3) * (-0.4)) < 1e-15
    assert abs(sol.y.coefficient(3) - 0.21333333333333333) < 1e-15


def test_p5_I_leading_values():
    sol = build_solution("P5_I", ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35}), 10)
    assert abs(sol.y.coefficient(0) + 1.8) < 1e-15
    assert abs(sol.conj.coefficient(0) + 0.1875) < 1e-15


def test_p6_0I_first_coefficient():
    sol = build_solution("P6_0_I", ParamSet.from_alpha("P6", (0.1, 0.2, 0.15, 0.2, 0.2)), 8)
    assert abs(sol.y.coefficient(1) - 2) < 1e-14


def test_p1_symmetric_series():
    sol = build_solution("P1_SYM_1", ParamSet.empty("P1"), 13)
    expected = {3: 1 / 6, 8: 1 / 336, 13: 1 / 26208}
    assert sol.y.precision == 14
    for k in range(0, 14):
        assert abs(sol.y.coefficient(k) - expected.get(k, 0)) < 1e-16


# -- residual invariant ----------------------------------------------------------------------


@pytest.mark.parametrize("sid", list_solutions())
def test_every_solution_solves_its_system(sid, rng):
    e = CATALOG[sid]
    kind = e.kind.value
    for _ in range(20):
        if kind == "P1":
            p = ParamSet.empty("P1")
        elif kind == "P2":
            p = ParamSet.from_alpha("P2", [None, complex(rng.uniform(-1, 1), rng.uniform(-.3, .3))],
                                    complete=True)
        else:
            p = generic_params(kind, rng, (sid,))
        sol = build_solution(sid, p, ORDER)
        assert residual(p, sol, ORDER - 1) < 1e-10


# -- specializations --------------------------------------------------------------------------


@pytest.mark.parametrize("sid", ["P6_0_I", "P6_0_II"])
def test_alpha0_zero_gives_y_equal_t(sid):
    sol = build_solution(sid, _p6(0.0, 0.2 + 0.1j, 0.25, 0.3), ORDER)
    for k in range(0, ORDER):
        assert abs(sol.y.coefficient(k) - (1 if k == 1 else 0)) < 1e-12


@pytest.mark.parametrize("sid", ["P6_0_III", "P6_0_IV"])
def test_alpha3_zero_gives_y_equal_one(sid):
    sol = build_solution(sid, _p6(0.1, 0.2 + 0.1j, 0.0, 0.3), ORDER)
    for k in range(0, ORDER):
        assert abs(sol.y.coefficient(k) - (1 if k == 0 else 0)) < 1e-12


def test_p4_rational_equals_symmetric_series():
    p = ParamSet.from_alpha("P4", (1 / 3, 1 / 3, 1 / 3))
    sol = build_solution("P4_SYM_PLUS_ZERO", p, ORDER)
    for k in range(0, ORDER):
        assert abs(sol.y.coefficient(k) - (-2 / 3 if k == 1 else 0)) < 1e-12
        assert abs(sol.conj.coefficient(k) - (1 / 3 if k == 1 else 0)) < 1e-12


def test_sqrt_t_matches_1II():
    p = ParamSet.from_alpha("P6", (0.15, 0.2 + 0.05j, None, 0.15, 0.2 + 0.05j), complete=True)
    cl = classical_solution("P6_ALGEBRAIC_SQRT_T", p, order=8)
    sol = build_solution("P6_1_II", p, order=8)
    assert np.allclose(cl.series[0].coefficients(0, 5), [1, -0.5, -0.125, -0.0625, -0.0390625],
                       atol=1e-15)
    for k in range(5):
        assert abs(sol.y.coefficient(k) - cl.series[0].coefficient(k)) < 1e-13


def test_p5_minus1_specialization():
    p = ParamSet.from_theta("P5", {"0": 0.5, "1": 0.5, "inf": 0.35})
    found = [s for s in classical_specialize("P5", p) if s.id == "P5_RATIONAL_MINUS1"]
    assert len(found) == 1
    s = found[0]
    for t in (0.2, 1.3 - 0.4j):
        assert s.y(t) == -1
        assert abs(s.conj(t) - (-(1 + 0.35) / 4 + t / 8)) < 1e-15


def test_p6_riccati_branches_at_alpha2_zero():
    p = ParamSet.from_alpha("P6", (0.1, 0.2, 0.0, 0.4, 0.3))
    sols = [s for s in classical_specialize("P6", p) if s.id.startswith("RICCATI")]
    assert len(sols) == 2
    h = 1e-5
    for s in sols:
        for t in (0.3 + 0.1j, 0.6 - 0.2j):
            assert s.conj(t) == 0
            dy, _, _ = hamiltonian_rhs(p, PhaseState(t, s.y(t), 0))
            fd = (s.y(t + h) - s.y(t - h)) / (2 * h)
            assert abs(fd - dy) < 1e-7 * max(1, abs(dy))


def test_generic_p4_has_no_classical_solution():
    assert classical_specialize("P4", ParamSet.from_theta("P4", {"0": 0.23, "inf": 0.31})) == []


# -- ids ------------------------------------------------------------------------------------------


@pytest.mark.parametrize("kind,name,sid", [
    ("p6", "0-I", "P6_0_I"), ("P6", "inf-iv", "P6_INF_IV"), ("p4", "sym", "P4_SYM_PLUS_ZERO"),
    ("p1", "sym1", "P1_SYM_1"), ("p5", "I", "P5_I"), ("p5", "rational-minus1", "P5_RATIONAL_MINUS1"),
])
def test_solution_ids(kind, name, sid):
    assert solution_id(kind, name) == sid


def test_unknown_id_rejected():
    with pytest.raises(ParameterError):
        solution_id("p6", "5-I")


def test_identify_and_pair_error():
    p = _p6(0.1, 0.2, 0.25, 0.35)
    sol = build_solution("P6_1_III", p, ORDER)
    assert identify(sol) == "P6_1_III"
    assert pair_error(sol, sol) == 0
    other = build_solution("P6_1_IV", p, ORDER)
    assert pair_error(sol, other) > 1e-3
