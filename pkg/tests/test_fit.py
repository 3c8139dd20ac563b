import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qforest.counting import count_nonvanishing
from qforest.fit import (FitError, InsufficientPoints, RationalPoly, integer_coeff_check,
                         interpolate, polynomiality_probe, quasipoly_probe, read_points_csv,
                         write_points_csv)
from qforest.formulas import fano_h, fourpoint_formula
from qforest.gf import field_of_order, prime_powers
from qforest.graph import cycle

C4 = RationalPoly([0, 2, -2, -1, 1])  # q(q-1)(q^2-2)


def test_interpolate_examples():
    assert interpolate([(2, 2), (3, 6), (4, 12)]) == RationalPoly([0, -1, 1])
    assert interpolate([(2, 7)]) == RationalPoly([7])
    with pytest.raises(FitError):
        interpolate([(2, 1), (2, 3)])
    with pytest.raises(FitError):
        interpolate([])


def test_fit_cycle_from_counts():
    pts = [(q, count_nonvanishing(cycle(4), "g", field_of_order(q))) for q in (2, 3, 4, 5, 7)]
    assert interpolate(pts) == C4


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6),
       st.lists(st.integers(-30, 30), min_size=1, max_size=7, unique=True))
def test_interpolate_reproduces_points(coeffs, xs):
    ys = [sum(c * x ** i for i, c in enumerate(coeffs)) + (x % 3) for x in xs]
    poly = interpolate(list(zip(xs, ys)))
    assert all(poly(x) == y for x, y in zip(xs, ys))
    assert poly.degree < len(xs)


def test_polynomiality_probe():
    pts = [(q, C4(q)) for q in (2, 3, 4, 5, 7, 8)]
    res = polynomiality_probe(pts, 4)
    assert res.is_polynomial and res.polynomial == C4
    const = polynomiality_probe([(q, 5) for q in (2, 3, 4)], 0)
    assert const.polynomial == RationalPoly([5]) and const.polynomial.degree == 0
    with pytest.raises(InsufficientPoints):
        polynomiality_probe(pts[:5], 4)


def test_four_point_line_not_polynomial_and_shuffle_invariant():
    pts = [(q, fourpoint_formula(q)) for q in (2, 3, 4, 5, 7, 9)]
    res = polynomiality_probe(pts, 4)
    assert not res.is_polynomial and res.witness in pts
    rng = random.Random(1)
    for _ in range(5):
        rng.shuffle(pts)
        assert polynomiality_probe(pts, 4).witness == res.witness


def test_quasipoly_probe_four_point_line():
    qs = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 32, 64, 81, 243, 729]
    qp = quasipoly_probe([(q, fourpoint_formula(q)) for q in qs], 6, 4)
    assert qp.modulus == 3
    assert qp.branches[0] == RationalPoly([0, 0, 0, -1, 1])
    assert all(qp(q) == fourpoint_formula(q) for q in qs)


def test_quasipoly_polynomial_sequence_is_modulus_one():
    qp = quasipoly_probe([(q, C4(q)) for q in prime_powers(2, 16)], 3, 4)
    assert qp.modulus == 1 and qp.branches[0] == C4


def test_quasipoly_refuses_sparse_classes():
    with pytest.raises(InsufficientPoints) as info:
        quasipoly_probe([(q, fourpoint_formula(q)) for q in (2, 3, 4, 5, 7, 9, 11, 13)], 3, 4)
    assert info.value.classes


def test_fano_degree_21_needs_more_points():
    with pytest.raises(InsufficientPoints):
        polynomiality_probe([(q, fano_h(q)) for q in (2, 3, 4, 5, 7, 8, 9)], 21)
    with pytest.raises(InsufficientPoints):
        quasipoly_probe([(q, fano_h(q)) for q in (2, 3, 4, 5, 7, 8, 9)], 2, 21)


def test_quasipoly_none_when_nothing_fits():
    pts = [(q, q ** 7 + (q % 5)) for q in prime_powers(2, 40)]
    assert quasipoly_probe(pts, 1, 3) is None


def test_integer_coeff_check():
    assert integer_coeff_check(RationalPoly([0, -1, 1]))
    assert not integer_coeff_check(RationalPoly([0, 0, Fraction(1, 2)]))


def test_poly_str():
    assert str(C4) == "q^4 - q^3 - 2*q^2 + 2*q"
    assert str(RationalPoly()) == "0"
    assert str(RationalPoly([Fraction(-1, 2)])) == "-1/2"


def test_csv_round_trip(tmp_path):
    pts = [(2, 4), (3, 42)]
    path = tmp_path / "v.csv"
    path.write_text(write_points_csv(pts))
    assert read_points_csv(path) == pts
    assert read_points_csv(str(path)) == pts
    with pytest.raises(FitError):
        read_points_csv("x,y\n1,2\n")
