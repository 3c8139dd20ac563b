import itertools
import random

import pytest

from qforest.counting import (SupportPattern, count_nonvanishing, count_support_invertible,
                              count_support_symmetric, count_zero_set, embed_bipartite,
                              fano_pattern, isotropic_count, ordered_basis_count, parse_pattern,
                              rank_profile, span_dp, sym_rank_census)
from qforest.gf import field_of_order
from qforest.graph import (Graph, complete, complete_minus_clique, cycle, is_apex,
                           random_connected_graph)
from qforest.linalg import det_rank
from qforest.shard import BudgetExceeded
from qforest.treepoly import eval_tree_poly

F2, F3, F4 = (field_of_order(q) for q in (2, 3, 4))


def _naive_g(G, ctx, kind="g"):
    """Scalar oracle: evaluate Q_G (or P_G) at every assignment."""
    return sum(1 for a in itertools.product(range(ctx.q), repeat=G.m)
               if eval_tree_poly(G, a, "Q" if kind == "g" else "P", ctx))


def test_examples():
    assert count_nonvanishing(cycle(4), "g", F2) == 4
    assert count_nonvanishing(cycle(4), "f", F2) == 8
    assert count_nonvanishing(complete(3), "g", F2) == 4
    assert count_nonvanishing(Graph(4, ((1, 2), (3, 4))), "g", F3) == 0


def test_against_scalar_oracle():
    rng = random.Random(11)
    for _ in range(12):
        G = random_connected_graph(rng, rng.randint(2, 4), rng.randint(0, 2), multi=True)
        for ctx in (F2, F3):
            for kind in ("g", "f"):
                assert count_nonvanishing(G, kind, ctx) == _naive_g(G, ctx, kind)


def test_zero_set():
    assert count_zero_set(cycle(4), {1}, "g", "at_least", F3) == 8
    # a zero set containing a cycle kills P_G
    assert count_zero_set(cycle(3), {1, 2, 3}, "f", "at_least", F3) == 0
    G = complete(3)
    for ctx in (F2, F3):
        assert count_zero_set(G, (), "f", "exact", ctx) == count_zero_set(G, (), "g", "exact", ctx)


def test_exact_mode_sums_to_total():
    # summing exact counts over all zero sets gives the plain count
    G = cycle(3)
    total = sum(count_zero_set(G, S, "g", "exact", F3)
                for r in range(4) for S in itertools.combinations(range(1, 4), r))
    assert total == count_nonvanishing(G, "g", F3)


def test_loops_and_doubled_edges_scale_by_q():
    G = complete(3)
    base = count_nonvanishing(G, "g", F3)
    assert count_nonvanishing(G.with_edges([(2, 2)]), "g", F3) == 3 * base
    assert count_nonvanishing(G.with_edges([(1, 2)]), "g", F3) == 3 * base


def test_shard_independence():
    G = complete_minus_clique(5, 3)
    whole = count_nonvanishing(G, "g", F3)
    for shards in (2, 3, 7):
        parts = [count_nonvanishing(G, "g", F3, shards=shards, shard=i) for i in range(shards)]
        assert sum(parts) == whole
    assert count_nonvanishing(G, "g", F3, workers=2) == whole


def test_root_choice_irrelevant():
    G = complete_minus_clique(4, 2)
    assert len({count_nonvanishing(G, "g", F3, root=r) for r in range(1, 5)}) == 1


def test_rank_profile():
    assert rank_profile(complete_minus_clique(4, 3), F2).counts == [1, 3, 3, 1]
    assert rank_profile(complete(2), F3).counts == [1, 2]
    prof = rank_profile(complete(4), F3)
    assert prof.total() == 3 ** 6


def test_apex_top_rank_is_g():
    for G in (complete(4), complete_minus_clique(5, 2), complete_minus_clique(4, 3)):
        assert is_apex(G, G.n)
        for ctx in (F2, F3):
            assert rank_profile(G, ctx)[G.n - 1] == count_nonvanishing(G, "g", ctx)


def test_support_examples():
    assert count_support_invertible(SupportPattern.full(2), F2) == 6
    diag = SupportPattern(3, frozenset((i, i) for i in range(3)))
    assert count_support_invertible(diag, F3) == 8
    assert span_dp(diag, F4) == 27


def test_span_dp_matches_brute_on_random_patterns():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 4)
        S = SupportPattern(n, frozenset((i, j) for i in range(n) for j in range(n) if rng.random() < 0.55))
        for ctx in (F2, F3):
            if ctx.q ** len(S.allowed) > 3 ** 10:
                continue
            assert span_dp(S, ctx) == count_support_invertible(S, ctx, "brute")


def test_fano_q2_span_dp():
    assert span_dp(fano_pattern(), F2) == 184768


def test_fano_permutation_invariance():
    S = fano_pattern()
    assert span_dp(S.transpose(), F2) == span_dp(S, F2)


def test_pattern_parsing():
    S = parse_pattern("3\n110\n011\n101\n")
    assert S.to_rows() == ["110", "011", "101"]
    with pytest.raises(ValueError):
        parse_pattern("2\n10\n")
    with pytest.raises(ValueError):
        parse_pattern("2\n10\n11\n", symmetric=True)


def test_symmetric_zero_diagonal():
    off = SupportPattern(3, frozenset((i, j) for i in range(3) for j in range(3) if i != j), True)
    assert count_support_symmetric(off, F2) == 0
    assert count_support_symmetric(off, F3) == 8


def test_bipartite_embedding():
    T = SupportPattern(2, frozenset({(0, 0), (0, 1), (1, 1)}))
    for ctx in (F2, F3):
        assert count_support_symmetric(embed_bipartite(T), ctx) == count_support_invertible(T, ctx)


def test_sym_census_small():
    assert sym_rank_census(2, F2).counts == [1, 3, 4]
    assert sym_rank_census(1, F3).counts == [1, 2]
    assert sym_rank_census(3, F2).counts[3] == 28


def test_sym_census_against_scalar_rank():
    ctx = F3
    counts = [0, 0, 0]
    for a, b, c in itertools.product(range(3), repeat=3):
        counts[det_rank(ctx, [[a, b], [b, c]])[1]] += 1
    assert sym_rank_census(2, ctx).counts == counts


def test_ordered_bases_path():
    path = Graph(3, ((1, 3), (2, 3)))
    assert ordered_basis_count(path, "plus", F2) == 2
    assert ordered_basis_count(path, "minus", F2) == 0


def test_isotropic_examples():
    assert isotropic_count(2, "plus", F2) == 2
    assert isotropic_count(2, "minus", F2) == 4
    assert isotropic_count(3, "plus", F3) == 9


def test_budget_guard():
    with pytest.raises(BudgetExceeded) as info:
        count_nonvanishing(complete(8), "g", field_of_order(5))
    assert info.value.estimate > 10 ** 10
