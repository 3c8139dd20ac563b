import random

import numpy as np
import pytest
from sympy import Matrix

from qforest.gf import field_of_order
from qforest.linalg import (batch_det_rank, batch_rank, det_rank, odometer_digits, rank_of)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_det_rank_matches_sympy_over_prime_fields(p):
    ctx = field_of_order(p)
    rng = random.Random(p)
    for _ in range(60):
        n = rng.randint(1, 4)
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        d, r = det_rank(ctx, rows)
        M = Matrix(rows)
        assert d == M.det() % p
        assert (r == n) == (d != 0)


@pytest.mark.parametrize("q", [2, 3, 4, 9])
def test_batch_agrees_with_scalar(q):
    ctx = field_of_order(q)
    rng = np.random.default_rng(q)
    for n in (1, 2, 3, 4):
        mats = rng.integers(0, q, size=(300, n, n))
        det, rank = batch_det_rank(ctx, mats)
        for k in range(len(mats)):
            d, r = det_rank(ctx, mats[k].tolist())
            assert (det[k], rank[k]) == (d, r)
        assert (batch_rank(ctx, mats) == rank).all()


def test_rank_of_rectangular():
    ctx = field_of_order(3)
    assert rank_of(ctx, [[1, 2, 0], [2, 1, 0]]) == 1
    assert rank_of(ctx, [[1, 0], [0, 1], [1, 1]]) == 2


def test_rank_against_brute_span_size():
    # over GF(2) the row space of a rank-r matrix has exactly 2^r vectors
    ctx = field_of_order(2)
    rng = random.Random(0)
    for _ in range(50):
        rows = [[rng.randrange(2) for _ in range(4)] for _ in range(3)]
        span = {tuple(sum(c * r[j] for c, r in zip(cs, rows)) % 2 for j in range(4))
                for cs in np.ndindex(2, 2, 2)}
        assert len(span) == 2 ** rank_of(ctx, rows)


def test_odometer_first_variable_most_significant():
    X = odometer_digits(0, 9, 3, 2)
    assert X[:4].tolist() == [[0, 0], [0, 1], [0, 2], [1, 0]]
    assert odometer_digits(5, 6, 3, 2).tolist() == [[1, 2]]


def test_batch_rank_empty():
    ctx = field_of_order(2)
    assert batch_rank(ctx, np.zeros((3, 0, 0), dtype=np.int64)).tolist() == [0, 0, 0]
