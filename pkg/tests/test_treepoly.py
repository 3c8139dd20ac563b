import itertools
import random

import numpy as np

from qforest.gf import field_of_order
from qforest.graph import complete, cycle, random_connected_graph
from qforest.treepoly import (det_batch, enumerate_trees, eval_det_rank, eval_tree_poly,
                              eval_tree_poly_batch, reduced_laplacian, tree_monomials)


def test_reduced_laplacian_cells():
    L0 = reduced_laplacian(cycle(3))
    assert L0.size == 2
    assert L0.cell(1, 1) == ((1, 1), (1, 3))
    assert L0.cell(1, 2) == L0.cell(2, 1) == ((-1, 1),)


def test_triangle_polynomials():
    G = complete(3)
    assert sorted(tree_monomials(G, "Q")) == [(0, 1), (0, 2), (1, 2)]
    assert sorted(tree_monomials(G, "P")) == [(0,), (1,), (2,)]


def test_matrix_tree_exhaustive_small():
    for q in (2, 3):
        ctx = field_of_order(q)
        for G in (complete(3), cycle(4), complete(4)):
            L0 = reduced_laplacian(G)
            for a in itertools.product(range(q), repeat=G.m):
                assert eval_det_rank(L0, a, ctx)[0] == eval_tree_poly(G, a, "Q", ctx)


def test_batch_routes_agree():
    rng = random.Random(5)
    for q in (4, 5, 9):
        ctx = field_of_order(q)
        G = random_connected_graph(rng, 5, 4)
        X = np.random.default_rng(q).integers(0, q, size=(500, G.m))
        det, _ = det_batch(G, X, ctx)
        assert (det == eval_tree_poly_batch(G, X, "Q", ctx)).all()


def test_single_vertex():
    from qforest.graph import Graph

    G = Graph(1)
    assert enumerate_trees(G) == [()]
    assert int(eval_tree_poly(G, [], "Q", field_of_order(2))) == 1


def test_rank_of_zero_assignment():
    L0 = reduced_laplacian(complete(4))
    _, r = eval_det_rank(L0, [0] * 6, field_of_order(3))
    assert r == 0
