from collections import Counter

import pytest

from graphs_fixtures import dumbbell, theta
from tropocat.cospans.monoids import NAT, TRIVIAL
from tropocat.errors import UnsupportedMonoid
from tropocat.graphs.canonical import certificate
from tropocat.graphs.enumeration import enumerate_Jg, multigraphs, weight_multisets
from tropocat.graphs.stable_graph import contract_edge


def test_J2_by_hand():
    graphs = enumerate_Jg(2)
    assert len(graphs) == 6
    assert Counter(G.num_edges for G in graphs) == {1: 2, 2: 2, 3: 2}
    certs = {certificate(G) for G in graphs}
    assert certificate(theta()) in certs
    assert certificate(dumbbell()) in certs


@pytest.mark.parametrize("g", [2, 3])
def test_strategies_agree(g):
    closure = [certificate(G) for G in enumerate_Jg(g, strategy="closure")]
    filtered = [certificate(G) for G in enumerate_Jg(g, strategy="filter", workers=2)]
    assert closure == filtered


def test_J3():
    graphs = enumerate_Jg(3)
    assert len(graphs) == 41
    # Trivalent weight-0 graphs of genus 3
    assert sum(1 for G in graphs if G.num_edges == 6) == 5
    assert graphs == sorted(graphs, key=lambda G: (G.num_edges, certificate(G)))


@pytest.mark.parametrize("g", [2, 3])
def test_closed_under_contraction(g):
    graphs = enumerate_Jg(g)
    certs = {certificate(G) for G in graphs}
    for G in graphs:
        G.check_J()
        assert G.genus() == g
        assert G.num_edges <= 3 * g - 3 and G.num_vertices <= 2 * g - 2
        if G.num_edges > 1:
            assert all(certificate(contract_edge(G, e)) in certs for e in range(G.num_edges))


def test_bad_arguments():
    for monoid in (NAT, TRIVIAL, "int"):
        with pytest.raises(UnsupportedMonoid):
            enumerate_Jg(2, monoid=monoid)
    with pytest.raises(ValueError):
        enumerate_Jg(1)
    with pytest.raises(ValueError):
        enumerate_Jg(2, strategy="bfs")


def test_multigraphs():
    # Cubic multigraphs on two vertices: theta and dumbbell
    found = list(multigraphs(2, 3, [3, 3], max_degree=[3, 3]))
    assert sorted(found) == [[(0, 0), (0, 1), (1, 1)], [(0, 1), (0, 1), (0, 1)]]
    assert list(multigraphs(2, 3, [3, 3], allow_loops=False)) == [[(0, 1), (0, 1), (0, 1)]]
    assert list(multigraphs(0, 1, [])) == []


def test_weight_multisets():
    assert list(weight_multisets(2, 2)) == [(2, 0), (1, 1), (1, 0), (0, 0)]


@pytest.mark.slow
def test_J4():
    graphs = enumerate_Jg(4)
    assert len(graphs) == 378
    assert [certificate(G) for G in graphs] == [certificate(G) for G in enumerate_Jg(4, strategy="filter")]
