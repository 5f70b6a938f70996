import numpy as np
import pytest

from painleve_lab.backlund import (P5_ORBIT, P6_ARROWS, TABLES, apply_generator, apply_to_series,
                                   apply_word, generators, parse_word, sample_point,
                                   verify_relations)
from painleve_lab.backlund import _relations
from painleve_lab.catalog import build_solution, pair_error
from painleve_lab.errors import ParameterError, PoleError
from painleve_lab.sampling import GENERIC_MARGIN, P5_MARGIN, condition_margin, generic_params, p5_margin
from painleve_lab.systems import K, ParamSet, PhaseState

ORDER = 12


def rel_dist(a, b):
    return abs(a - b) / max(1.0, abs(a))


def test_p5_s1_point_map():
    p = ParamSet.from_alpha("P5", (None, 0.4, 0.3, 0.2), complete=True)
    newp, s = apply_generator("P5", "s1", (2, 1, 0.7), p)
    assert s.y == 2 and abs(s.conj - 0.8) < 1e-15 and s.t == 0.7
    a = p.alpha
    assert np.allclose(newp.alpha, (a[0] + a[1], -a[1], a[2] + a[1], a[3]), atol=1e-15)


def test_p5_s1_pole_at_q_zero():
    p = ParamSet.from_alpha("P5", (None, 0.4, 0.3, 0.2), complete=True)
    with pytest.raises(PoleError):
        apply_generator("P5", "s1", (0, 1, 0.7), p)


def test_p6_sigma2_point_map():
    p = ParamSet.from_alpha("P6", (0.1, 0.2, None, 0.2, 0.25), complete=True)
    assert abs(p.alpha[2] - 0.125) < 1e-15
    p = ParamSet.from_alpha("P6", (0.1, 0.2, 0.15, 0.3, 0.1))
    newp, s = apply_generator("P6", "sigma2", (2, 0.5, 0.3), p)
    assert abs(s.y - 0.5) < 1e-15
    assert abs(s.conj - (-2 * (2 * 0.5 + 0.15))) < 1e-15
    assert abs(s.t - 1 / 0.3) < 1e-14
    assert abs(newp.alpha[1] - p.alpha[4]) < 1e-15 and abs(newp.alpha[4] - p.alpha[1]) < 1e-15


def test_unicode_generator_names():
    assert parse_word("σ₂ σ₁ π") == ["sigma2", "sigma1", "pi"]
    assert parse_word("s0' s1") == ["s0p", "s1"]


def test_unknown_generator_rejected():
    p = ParamSet.from_alpha("P5", (None, 0.4, 0.3, 0.2), complete=True)
    with pytest.raises(ParameterError):
        apply_generator("P5", "s9", (2, 1, 0.7), p)


def test_empty_word_is_identity(rng):
    for kind in TABLES:
        params, (q, p, t) = sample_point(kind, rng)
        newp, s = apply_word(kind, "", (q, p, t), params)
        assert newp == params and (s.y, s.conj, s.t) == (q, p, t)


def _reflections(kind):
    return [name.split("^")[0] for name, lhs, rhs in _relations(kind)
            if name.endswith("^2 = id") and " " not in name.split("^")[0]]


@pytest.mark.parametrize("kind", list(TABLES), ids=lambda k: k.value)
def test_reflections_are_involutions(kind, rng):
    for g in _reflections(kind):
        done = 0
        while done < 10:
            params, state = sample_point(kind, rng)
            try:
                p1, s1 = apply_generator(kind, g, state, params)
                p2, s2 = apply_generator(kind, g, s1, p1)
            except PoleError:
                continue
            q, pp, t = state
            for a, b in ((q, s2.y), (pp, s2.conj), (t, s2.t)):
                assert rel_dist(a, b) <= 1e-11
            for a, b in zip(params.alpha or (), p2.alpha or ()):
                assert rel_dist(a, b) <= 1e-11
            done += 1


@pytest.mark.parametrize("kind,weights", [(K.P5, (1, 1, 1, 1)), (K.P6, (1, 1, 2, 1, 1)),
                                          (K.P4, (1, 1, 1)), (K.P2, (1, 1))])
def test_generators_preserve_the_affine_constraint(kind, weights, rng):
    for g in generators(kind):
        params, state = sample_point(kind, rng)
        try:
            newp, _ = apply_generator(kind, g, state, params)
        except PoleError:
            continue
        total = sum(w * a for w, a in zip(weights, newp.alpha))
        assert abs(total - 1) < 1e-14


@pytest.mark.parametrize("word,target", [("sigma2 sigma1 sigma3 sigma1", "pi1"),
                                         ("sigma1 sigma2 sigma3 sigma2", "pi2")])
def test_p6_pi_as_sigma_words(word, target, rng):
    done = 0
    while done < 20:
        params, state = sample_point("P6", rng)
        try:
            pa, sa = apply_word("P6", word, state, params)
            pb, sb = apply_word("P6", target, state, params)
        except PoleError:
            continue
        for a, b in ((sa.y, sb.y), (sa.conj, sb.conj), (sa.t, sb.t), *zip(pa.alpha, pb.alpha)):
            assert rel_dist(a, b) <= 1e-10
        done += 1


@pytest.mark.parametrize("kind", list(TABLES), ids=lambda k: k.value)
def test_group_relations(kind):
    rep = verify_relations(kind, samples=50, seed=3)
    assert rep.passed(1e-10), rep.errors


def test_named_relations_in_report():
    assert verify_relations("P5", 50).errors["pi^4 = id"] < 1e-10
    assert verify_relations("P2", 50).errors["s1^2 = id"] < 1e-10
    assert verify_relations("P6", 50).errors["sigma2^2 = id"] < 1e-10


# -- series maps ----------------------------------------------------------------------------


def _draw_for(kind, sid, target, rng):
    while True:
        p = generic_params(kind, rng, (sid,))
        return p


def test_p5_s1_maps_I_to_II():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    out = apply_to_series("P5", "s1", build_solution("P5_I", p, ORDER))
    assert out.id == "P5_II"
    ref = build_solution("P5_II", out.params, ORDER)
    assert pair_error(out, ref, 8) < 1e-10


def test_p5_sigma_keeps_I():
    p = ParamSet.from_theta("P5", {"0": 0.3, "1": 0.4, "inf": 0.35})
    out = apply_to_series("P5", "sigma", build_solution("P5_I", p, ORDER))
    assert out.id == "P5_I"
    assert pair_error(out, build_solution("P5_I", out.params, ORDER), 8) < 1e-10


def test_p6_sigma1_maps_0I_to_1I():
    p = ParamSet.from_alpha("P6", (0.1, 0.2, None, 0.25, 0.35), complete=True)
    out = apply_to_series("P6", "sigma1", build_solution("P6_0_I", p, ORDER))
    assert out.id == "P6_1_I" and out.expansion_point == "1"
    assert pair_error(out, build_solution("P6_1_I", out.params, ORDER), 8) < 1e-10


def _orbit_entries():
    entries = [("P5", sid, g, tgt) for (sid, g), tgt in P5_ORBIT.items()]
    for a, g, b in P6_ARROWS:
        entries += [("P6", a, g, b), ("P6", b, g, a)]
    return entries


@pytest.mark.parametrize("kind,sid,g,target", _orbit_entries(),
                         ids=lambda v: v if isinstance(v, str) else None)
def test_orbit_tables_close(kind, sid, g, target, rng):
    done = 0
    while done < 10:
        p = generic_params(kind, rng, (sid,))
        out = apply_to_series(kind, g, build_solution(sid, p, ORDER), identify_target=False)
        q = out.params
        if condition_margin(q, target) < GENERIC_MARGIN or (kind == "P5" and p5_margin(q) < P5_MARGIN):
            continue
        assert pair_error(out, build_solution(target, q, ORDER), 8) < 1e-9
        done += 1
