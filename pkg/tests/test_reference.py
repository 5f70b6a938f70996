import numpy as np
import pytest

from painleve_lab import reference
from painleve_lab.catalog import build_solution
from painleve_lab.sampling import generic_params
from painleve_lab.systems import ParamSet

INCONSISTENT = ["P6_0_II", "P6_1_I", "P6_1_II", "P6_1_IV", "P6_INF_I", "P6_INF_II"]


def _component(sol, c):
    return {"y": sol.y, "z": sol.conj, "zbar": sol.zbar}[c]


@pytest.mark.parametrize("sid", INCONSISTENT)
def test_tabulated_entries_differ_and_replacements_match(sid):
    rng = np.random.default_rng(7)
    p = generic_params("P6", rng, (sid,))
    sol = build_solution(sid, p, order=8)
    tabulated = reference.tabulated(sid, p.alpha)
    for key, value in reference.corrected(sid, p.alpha).items():
        got = _component(sol, key[0]).coefficient(key[1])
        assert abs(got - value) < 1e-12
        assert abs(got - tabulated[key]) > 1e-3


def test_p4_tabulated_b2_differs_from_recursion():
    th0, thi = 0.2, 0.3
    p = ParamSet.from_theta("P4", {"0": th0, "inf": thi})
    sol = build_solution("P4_SYM", p, order=10)
    ref = reference.p4_symmetric(th0, thi)
    lead = th0 + thi
    assert abs(sol.conj.coefficient(5) - lead * ref["b2"]) < 1e-12
    assert abs(lead * reference.p4_b2_tabulated(th0, thi) - sol.conj.coefficient(5)) > 1e-3
