import pytest

from graphs_fixtures import dumbbell, figure_eight, theta
from tropocat.cospans.monoids import NAT
from tropocat.errors import Disconnected
from tropocat.graphs.stable_graph import HalfEdgeGraph, StableGraph, contract_edge, contract_edges


def test_half_edge_graph():
    G = HalfEdgeGraph([0, 2, 1], [0, 0, 0])  # one vertex with a loop
    assert G.vertices == [0]
    assert G.edges == [(1, 2)]
    assert len(G) == 3


@pytest.mark.parametrize("s, r", [
    ([0, 1], [0, 0]),        # fixed point of s that is not a vertex
    ([1, 0], [0, 0]),        # vertex swapped with a half-edge
    ([0, 2, 2], [0, 0, 0]),  # s not an involution
    ([0, 2, 1], [0, 2, 0]),  # r not idempotent
    ([0, 5, 1], [0, 0, 0]),
])
def test_half_edge_graph_invariants(s, r):
    with pytest.raises(ValueError):
        HalfEdgeGraph(s, r)


def test_genus():
    assert theta().genus() == 2
    assert dumbbell().genus() == 2
    assert figure_eight().genus() == 2
    # Bridge between two weight-1 vertices
    assert StableGraph.from_edges([1, 1], [(0, 1)]).genus() == 2
    with pytest.raises(Disconnected):
        StableGraph.from_edges([1, 1], []).genus()


def test_stability():
    assert theta().is_stable()
    assert not StableGraph.from_edges([0], [(0, 0)]).is_stable()  # circle
    assert not StableGraph.from_edges([0, 1], [(0, 1)]).is_stable()  # leaf of weight 0
    assert StableGraph.from_edges([0, 1], [(0, 1)]).is_stable(NAT)

    with pytest.raises(Disconnected):
        StableGraph.from_edges([1, 1], []).check_J()
    with pytest.raises(ValueError):
        StableGraph.from_edges([0], [(0, 0)]).check_J()
    with pytest.raises(ValueError):
        StableGraph.from_edges([2], []).check_J()


def test_contract_bridge_and_loop():
    G = dumbbell()
    H = contract_edge(G, 1)
    assert H == figure_eight()

    H, edge_map = contract_edges(G, [0])
    assert H.weights == (1, 0)
    assert H.edge_endpoints() == [(0, 1), (1, 1)]
    assert edge_map == {1: 0, 2: 1}
    assert H.genus() == 2


def test_contract_parallel_edges():
    # Collapsing two edges of the theta closes a cycle
    H, edge_map = contract_edges(theta(), [0, 1])
    assert H.weights == (1,)
    assert H.loops() == [0]
    assert edge_map == {2: 0}
    with pytest.raises(ValueError):
        contract_edges(theta(), [3])


def test_contraction_preserves_genus():
    G = StableGraph.from_edges([0, 0, 1], [(0, 1), (0, 1), (1, 2), (0, 0)])
    g = G.genus()
    for e in range(G.num_edges):
        assert contract_edge(G, e).genus() == g


def test_json():
    G = StableGraph.from_edges([1, 0], [(1, 0), (1, 1)])
    d = G.to_json()
    assert d == {"vertices": [{"id": 0, "weight": 1}, {"id": 1, "weight": 0}], "edges": [[0, 1], [1, 1]]}
    assert StableGraph.from_json(d).edge_multiset() == G.edge_multiset()

    with pytest.raises(ValueError):
        StableGraph.from_json({"vertices": [{"id": 1, "weight": 0}], "edges": []})
    with pytest.raises(ValueError):
        StableGraph.from_json({"vertices": []})
    with pytest.raises(ValueError):
        StableGraph.from_edges([0], [(0, 1)])
