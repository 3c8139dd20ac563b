import numpy as np

import qforest.verify as V
from qforest.gf import FieldCtx, field_of_order


def _broken_gf9():
    good = field_of_order(9)
    ctx = FieldCtx(good.p, good.k, good.modulus)
    table = good.mul_table.copy()
    table[4, 5] = table[5, 4] = (table[4, 5] + 1) % 9  # one wrong product
    ctx.__dict__["mul_table"] = table
    return ctx


def test_broken_gf9_multiplication_fails_fourpoint_criterion(monkeypatch):
    broken = _broken_gf9()
    assert not np.array_equal(broken.mul_table, field_of_order(9).mul_table)
    monkeypatch.setattr(V, "field_of_order", lambda q: broken if q == 9 else field_of_order(q))
    res = V.run_criterion(9, "quick")
    assert not res.passed
    assert "q=9" in res.actual


def test_quick_levels_pass_for_cheap_criteria():
    for res in V.verify_suite("quick", only=[3, 4, 6, 8, 10, 11, 13]):
        assert res.passed, res.line()


def test_result_line_format():
    res = V.run_criterion(13, "quick")
    assert res.line().startswith("criterion 13 [PASS] isotropic counts")
