import random

import pytest

from qforest.graph import (Graph, GraphError, complete, complete_minus_clique, complete_minus_star,
                           connected_graphs, cycle, is_apex, minor, parse_family, parse_graph,
                           random_connected_graph, spanning_tree_count, split_at, two_edge_cuts)
from qforest.treepoly import enumerate_trees


def test_parse_graph():
    G = parse_graph("# a triangle\n3\n1 2\n2 3\n\n3 1\n")
    assert G.n == 3 and G.edges == ((1, 2), (2, 3), (3, 1))
    for bad in ("", "3\n1 4\n", "2\n1\n", "x\n"):
        with pytest.raises(GraphError):
            parse_graph(bad)


def test_round_trip_text():
    G = complete_minus_clique(5, 3)
    assert parse_graph(G.to_text()) == G


def test_families():
    assert cycle(4).edges == ((1, 2), (2, 3), (3, 4), (4, 1))
    assert complete(5).m == 10
    assert complete_minus_clique(5, 3).m == 7
    assert complete_minus_star(5, 2).m == 8
    assert parse_family("complete-minus-clique:6,3") == complete_minus_clique(6, 3)
    with pytest.raises(GraphError):
        parse_family("wheel:5")
    with pytest.raises(GraphError):
        complete_minus_star(3, 2)


def test_cayley_and_tree_enumeration():
    for n in range(1, 7):
        assert spanning_tree_count(complete(n)) == n ** (n - 2) if n > 1 else 1
        assert len(enumerate_trees(complete(n))) == spanning_tree_count(complete(n))


def test_tree_count_random():
    rng = random.Random(3)
    for _ in range(30):
        G = random_connected_graph(rng, rng.randint(1, 6), rng.randint(0, 5), multi=True)
        assert len(enumerate_trees(G)) == spanning_tree_count(G)


def test_disconnected_has_no_trees():
    G = Graph(4, ((1, 2), (3, 4)))
    assert not G.is_connected()
    assert enumerate_trees(G) == [] and spanning_tree_count(G) == 0


def test_minor_contract_and_delete():
    C = cycle(4)
    assert minor(C, contract={1}) == Graph(3, ((1, 2), (2, 3), (3, 1)))
    C2 = minor(C, contract={1, 3})
    assert C2.n == 2 and C2.m == 2
    assert minor(C, delete={1}).m == 3


def test_two_edge_cuts_of_cycle():
    cuts = two_edge_cuts(cycle(4))
    assert (1, 3) in cuts and len(cuts) == 6
    G1, G2 = split_at(cycle(4), 1, 3)
    assert G1.n == G2.n == 2 and G1.m == G2.m == 1
    assert two_edge_cuts(complete(4)) == []


def test_apex():
    assert is_apex(complete(4), 4)
    assert not is_apex(cycle(4), 4)
    assert is_apex(complete_minus_clique(5, 3), 5)


def test_connected_graph_counts():
    # unlabelled connected graphs: 1, 1, 2, 6, 21
    assert [len(connected_graphs(n)) for n in range(1, 6)] == [1, 1, 2, 6, 21]
