import itertools

import pytest

from qforest.counting import count_nonvanishing
from qforest.gf import field_of_order
from qforest.graph import complete, complete_minus_star, cycle
from qforest.matroid import (R10_GOLDEN, Matroid, MatroidError, build_matroid, count_g_matroid,
                             eval_basis_poly, fourpoint_formula, graphic, parse_bases, r10,
                             uniform)
from qforest.shard import BudgetExceeded
from qforest.treepoly import eval_tree_poly


def test_uniform():
    assert len(uniform(2, 4).bases) == 6
    assert uniform(1, 2).bases == ((1,), (2,))


def test_r10_structure():
    M = r10()
    assert M.ground_size == 10 and M.rank == 5
    assert len(M.bases) == 162
    assert M.exchange_check(200)


def test_validation():
    with pytest.raises(MatroidError):
        Matroid(3, ())
    with pytest.raises(MatroidError):
        Matroid(3, ((1, 2), (3,)))
    assert not Matroid(4, ((1, 2), (3, 4))).exchange_check(100)


def test_eval_basis_poly():
    F2 = field_of_order(2)
    U = uniform(2, 4)
    assert int(eval_basis_poly(U, [1, 1, 1, 1], F2)) == 0
    assert int(eval_basis_poly(U, [1, 1, 0, 0], F2)) == 1


def test_graphic_matches_tree_polynomial():
    G = complete(4)
    M = graphic(G)
    ctx = field_of_order(3)
    for a in itertools.product(range(3), repeat=G.m):
        assert eval_basis_poly(M, a, ctx) == eval_tree_poly(G, a, "Q", ctx)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_four_point_line(q):
    ctx = field_of_order(q)
    brute = count_g_matroid(uniform(2, 4), ctx)
    assert brute == fourpoint_formula(q)
    assert count_g_matroid(uniform(2, 4), ctx, "eliminate") == brute


def test_graphic_counts_equal_g():
    for G in (cycle(4), complete(4), complete_minus_star(5, 2)):
        for q in (2, 3):
            ctx = field_of_order(q)
            want = count_nonvanishing(G, "g", ctx)
            assert count_g_matroid(graphic(G), ctx) == want
            assert count_g_matroid(graphic(G), ctx, "eliminate", pair=(2, G.m)) == want


@pytest.mark.parametrize("q", [2, 3])
def test_r10_golden_both_methods(q):
    ctx = field_of_order(q)
    assert count_g_matroid(r10(), ctx) == R10_GOLDEN[q]
    assert count_g_matroid(r10(), ctx, "eliminate") == R10_GOLDEN[q]


def test_r10_golden_q4_elimination():
    assert count_g_matroid(r10(), field_of_order(4), "eliminate") == R10_GOLDEN[4]


def test_basis_file(tmp_path):
    M = parse_bases("4 2\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    assert M == uniform(2, 4)
    path = tmp_path / "b.txt"
    path.write_text("2 1\n1\n2\n")
    assert build_matroid(str(path)) == uniform(1, 2)
    with pytest.raises(MatroidError):
        parse_bases("4 2\n1 2 3\n")


def test_build_specs():
    assert build_matroid("u24") == uniform(2, 4)
    assert build_matroid("uniform:3,5") == uniform(3, 5)
    assert build_matroid([(1, 2), (1, 3)]).ground_size == 3
    with pytest.raises(MatroidError):
        build_matroid("nonsense")


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_g_matroid(r10(), field_of_order(81))
