import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from painleve_lab.catalog import build_solution
from painleve_lab.errors import ParameterError, PoleError
from painleve_lab.lax import trajectory_for
from painleve_lab.series import TruncatedSeries
from painleve_lab.systems import (ALPHA_COUNT, THETA_KEYS, K, ParamSet, PhaseState,
                                  canonical_shift_p6, convert_params, hamiltonian,
                                  hamiltonian_rhs, series_residual, weighted_field)


def max_coeff(pair, upto):
    worst = 0.0
    for r in pair:
        for k in range(r.leading_exponent, min(upto, r.precision - 1) + 1):
            worst = max(worst, abs(r.coefficient(k)))
    return worst


# -- parameters ---------------------------------------------------------------------------


def test_p6_alpha_to_theta():
    p = ParamSet.from_alpha("P6", (0.1, 0.2, 0.15, 0.2, 0.2))
    th = convert_params(p, "theta").theta
    assert th["0"] == pytest.approx(0.2) and th["1"] == pytest.approx(0.2)
    assert th["t"] == pytest.approx(0.1) and th["inf"] == pytest.approx(0.8)


def test_p4_classical_zero_case():
    c = ParamSet.from_theta("P4", {"0": 0, "inf": 0.5}).classical
    assert c["alpha"] == 0 and c["beta"] == 0


def test_p5_alpha1():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    assert p.alpha[1] == pytest.approx(0.125)


def test_constraint_violation_rejected():
    with pytest.raises(ParameterError):
        ParamSet.from_alpha("P6", (0.1, 0.2, 0.3, 0.2, 0.2))
    with pytest.raises(ParameterError):
        ParamSet.from_alpha("P5", (0.1, 0.2, 0.3, 0.2))


def test_complete_fills_the_free_parameter():
    p = ParamSet.from_alpha("P6", (0.1, 0.2, None, 0.2, 0.2), complete=True)
    assert p.alpha[2] == pytest.approx(0.15)
    with pytest.raises(ParameterError):
        ParamSet.from_alpha("P6", (0.1, 0.2, None, 0.2, 0.2))


def test_incomplete_map_rejected():
    p = ParamSet.from_theta("P3_D7", {"0": 0.3})
    with pytest.raises(ParameterError):
        convert_params(p, "alpha")


cpx = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)
ROUND_TRIP_KINDS = [k for k in K if ALPHA_COUNT[k] and k is not K.P3_D7]


@pytest.mark.parametrize("kind", ROUND_TRIP_KINDS, ids=lambda k: k.value)
@given(data=st.data())
def test_convert_params_round_trip(kind, data):
    th = {k: data.draw(cpx) for k in THETA_KEYS[kind]}
    p = ParamSet.from_theta(kind, th)
    back = convert_params(convert_params(p, "alpha"), "theta")
    for k in th:
        assert abs(back.theta[k] - th[k]) <= 1e-14 * max(1.0, abs(th[k]))
    again = convert_params(back, "alpha")
    assert np.allclose(again.alpha, p.alpha, rtol=0, atol=1e-14)


# -- vector fields ----------------------------------------------------------------------------


def test_p4_rational_solution_field():
    p = ParamSet.from_alpha("P4", (1 / 3, 1 / 3, 1 / 3))
    for t in (0.3, -1.2 + 0.4j, 2.0):
        dy, dw, _ = hamiltonian_rhs(p, PhaseState(t, -2 * t / 3, t / 3))
        assert abs(dy + 2 / 3) < 1e-14 and abs(dw - 1 / 3) < 1e-14


def test_p5_solution_I_is_a_fixed_point_at_t0():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    sol = build_solution("P5_I", p, order=2)
    fy, fc = weighted_field(p, 0.0, sol.y.coefficient(0), sol.conj.coefficient(0))
    assert abs(fy) < 1e-14 and abs(fc) < 1e-14


def test_p6_zero_momentum_field():
    p = ParamSet.from_alpha("P6_normalized", (0, 0, 0.5, 0, 0))
    for t, y in ((0.3 + 0.1j, 0.7), (2.0, -0.4 + 1j)):
        fy, _ = weighted_field(p, t, y, 0.0)
        assert abs(fy - y * (y - 1)) < 1e-14


def test_rhs_rejects_fixed_singularity():
    p = ParamSet.from_alpha("P6", (0.1, 0.2, None, 0.2, 0.2), complete=True)
    with pytest.raises(PoleError):
        hamiltonian_rhs(p, PhaseState(1.0, 0.3, 0.1))


def _random_params(kind, rng):
    if kind is K.P3_D7:
        return ParamSet.from_theta(kind, {"0": complex(rng.normal(), rng.normal()) * 0.5})
    if THETA_KEYS[kind]:
        return ParamSet.from_theta(kind, {k: complex(rng.normal(), rng.normal()) * 0.5
                                          for k in THETA_KEYS[kind]})
    return ParamSet.empty(kind)


@pytest.mark.parametrize("kind", list(K), ids=lambda k: k.value)
def test_rhs_is_symplectic_gradient(kind, rng):
    p = _random_params(kind, rng)
    h = 1e-6
    for _ in range(50):
        t, y, c = (complex(rng.normal(), rng.normal()) * 0.5 + off for off in (0.3, 0.2, 0))
        dy, dc, _ = hamiltonian_rhs(p, PhaseState(t, y, c))
        Hc = (hamiltonian(p, PhaseState(t, y, c + h)) - hamiltonian(p, PhaseState(t, y, c - h))) / (2 * h)
        Hy = (hamiltonian(p, PhaseState(t, y + h, c)) - hamiltonian(p, PhaseState(t, y - h, c))) / (2 * h)
        assert abs(Hc - dy) <= 1e-7 * (1 + abs(dy))
        assert abs(-Hy - dc) <= 1e-7 * (1 + abs(dc))


def _scalar_rhs(kind, p, t, y, y1):
    c = p.classical
    if kind == "P4":
        return y1 ** 2 / (2 * y) + 1.5 * y ** 3 + 4 * t * y ** 2 + 2 * (t * t - c["alpha"]) * y + c["beta"] / y
    a, b, g, d = c["alpha"], c["beta"], c["gamma"], c["delta"]
    if kind == "P5":
        return ((1 / (2 * y) + 1 / (y - 1)) * y1 ** 2 - y1 / t + (y - 1) ** 2 / t ** 2 * (a * y + b / y)
                + g * y / t + d * y * (y + 1) / (y - 1))
    return (0.5 * (1 / y + 1 / (y - 1) + 1 / (y - t)) * y1 ** 2 - (1 / t + 1 / (t - 1) + 1 / (y - t)) * y1
            + y * (y - 1) * (y - t) / (t ** 2 * (t - 1) ** 2)
            * (a + b * t / y ** 2 + g * (t - 1) / (y - 1) ** 2 + d * t * (t - 1) / (y - t) ** 2))


@pytest.mark.parametrize("kind,p", [
    ("P4", ParamSet.from_theta("P4", {"0": 0.2 + 0.1j, "inf": 0.3})),
    ("P5", ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4 - 0.1j, "inf": 0.35})),
    ("P6", ParamSet.from_alpha("P6", [0.1, 0.2, None, 0.3, 0.25 + 0.1j], complete=True)),
])
def test_momentum_elimination_gives_scalar_equation(kind, p):
    s = PhaseState(0.4 + 0.1j, 0.3 + 0.2j, 0.5 - 0.1j)
    traj = trajectory_for(kind, p, s, s.t)
    h = 1e-3
    for dt in (0.02, 0.05 + 0.02j, -0.03):
        t = s.t + dt
        ym, y0, yp = (traj.state(t + k * h).y for k in (-1, 0, 1))
        y1 = (yp - ym) / (2 * h)
        y2 = (yp - 2 * y0 + ym) / h ** 2
        assert abs(y2 - _scalar_rhs(kind, p, t, y0, y1)) < 1e-5


# -- series residuals --------------------------------------------------------------------------


def test_p5_solution_residual():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    sol = build_solution("P5_I", p, order=10)
    assert max_coeff(series_residual(p, sol.y, sol.conj), 9) < 1e-10


def test_zero_series_is_a_p6_fixed_point():
    # needs alpha4 = 0 besides alpha2 (alpha1 + alpha2) = 0
    p = ParamSet.from_alpha("P6", (0.3, 0.45, 0.0, 0.25, 0.0))
    zero = TruncatedSeries.constant(0.0, 8)
    ry, rc = series_residual(p, zero, zero)
    assert ry.is_zero() and rc.is_zero()


def test_zero_series_leaves_alpha4_t_in_the_y_equation():
    p = ParamSet.from_alpha("P6", (0.3, 0.2, 0.0, 0.25, 0.25))
    zero = TruncatedSeries.constant(0.0, 8)
    ry, rc = series_residual(p, zero, zero)
    assert rc.is_zero()
    assert abs(ry.coefficient(1) - 0.25) < 1e-15
    assert all(ry.coefficient(k) == 0 for k in range(ry.leading_exponent, ry.precision) if k != 1)


def test_p4_series_residual_and_closed_a1():
    p = ParamSet.from_theta("P4", {"0": 0.2, "inf": 0.3})
    sol = build_solution("P4_SYM", p, order=8)
    assert max_coeff(series_residual(p, sol.y, sol.conj), 7) < 1e-10
    a1 = -2 / 3 * (2 * 0.3 - 1)
    assert abs(sol.y.coefficient(3) - 4 * 0.2 * a1) < 1e-14


# -- canonical shift ------------------------------------------------------------------------


def test_canonical_shift_trivial():
    p = ParamSet.from_alpha("P6", (0, 0.3, None, 0, 0), complete=True)
    assert canonical_shift_p6(0.7 + 0.1j, 0.4, 0.2, p) == 0.7 + 0.1j


@given(cpx, cpx, cpx)
def test_canonical_shift_round_trip(z, y, t):
    p = ParamSet.from_alpha("P6", (0.1, 0.2, None, 0.2, 0.25), complete=True)
    if min(abs(y), abs(y - 1), abs(y - t)) < 1e-2:
        return
    zb = canonical_shift_p6(z, y, t, p, "to_bar")
    back = canonical_shift_p6(zb, y, t, p, "from_bar")
    assert abs(back - z) <= 1e-14 * max(1.0, abs(z), abs(zb))


def test_0I_leading_data_consistent_under_shift():
    p = ParamSet.from_alpha("P6", (0.1, 0.2, None, 0.2, 0.3), complete=True)
    sol = build_solution("P6_0_I", p, order=12)
    a0, a4 = p.alpha[0], p.alpha[4]
    assert abs(sol.y.coefficient(1) - a4 / (a4 - a0)) < 1e-14
    zbar = sol.zbar
    for t in (1e-3, 1e-4):
        z = sol.conj.evaluate(t)
        shifted = canonical_shift_p6(z, sol.y.evaluate(t), t, p, "to_bar")
        assert abs(shifted - zbar.evaluate(t)) < 1e-9
        assert abs(t * z - (a4 - a0)) < 10 * t
    assert abs(zbar.evaluate(1e-4) - zbar.evaluate(1e-5)) < 1e-3
