from fractions import Fraction

import pytest

from graphs_fixtures import figure_eight, theta
from tropocat.errors import UnstableResidue
from tropocat.graphs.stable_graph import StableGraph
from tropocat.moduli.metric_graph import MetricGraph, delta_point_eq, stabilize


def test_metric_graph():
    m = MetricGraph(theta(), ["1/2", 1, Fraction(1, 2)])
    assert m.total == 2
    assert m.genus() == 2
    assert not m.is_canonical_representative()
    assert m.to_json()["lengths"] == ["1/2", "1/1", "1/2"]
    assert MetricGraph.from_json(m.to_json()) == m

    with pytest.raises(ValueError):
        MetricGraph(theta(), [1, 1])
    with pytest.raises(ValueError):
        MetricGraph(theta(), [1, -1, 1])
    with pytest.raises(ValueError):
        MetricGraph.from_json(theta().to_json())


def test_stable_input_is_only_normalized():
    m = stabilize(MetricGraph(theta(), [1, 1, 2]))
    assert sorted(m.lengths) == [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)]
    assert m.is_canonical_representative()

    m = MetricGraph(theta(), ["1/3"] * 3).canonical()
    assert stabilize(m) == m


def test_path_is_smoothed():
    path = StableGraph.from_edges([1, 0, 1], [(0, 1), (1, 2)])
    m = stabilize(MetricGraph(path, ["1/4", "3/4"]))
    assert m == MetricGraph(StableGraph.from_edges([1, 1], [(0, 1)]), [1])


def test_zero_loop_is_contracted():
    G = StableGraph.from_edges([1, 0], [(0, 1), (1, 1)])
    m = stabilize(MetricGraph(G, [3, 0]))
    assert m == MetricGraph(StableGraph.from_edges([1, 1], [(0, 1)]), [1])


def test_zero_edges_of_theta():
    # One zero edge leaves the figure eight, two leave a loop on a weight-1 vertex
    m = stabilize(MetricGraph(theta(), [0, 1, 3]))
    assert delta_point_eq(m, MetricGraph(figure_eight(), ["1/4", "3/4"]))
    m = stabilize(MetricGraph(theta(), [0, 0, 5]))
    assert m == MetricGraph(StableGraph.from_edges([1], [(0, 0)]), [1])


@pytest.mark.parametrize("G, lengths", [
    (StableGraph.from_edges([0], [(0, 0)]), [1]),          # bare cycle
    (theta(), [0, 0, 0]),                                  # nothing left
    (StableGraph.from_edges([0, 1], [(0, 1)]), [1]),       # weight-0 leaf
])
def test_unstable_residue(G, lengths):
    with pytest.raises(UnstableResidue):
        stabilize(MetricGraph(G, lengths))


def test_idempotent():
    inputs = [
        MetricGraph(theta(), [0, 1, 3]),
        MetricGraph(StableGraph.from_edges([1, 0, 1], [(0, 1), (1, 2)]), [1, 2]),
        MetricGraph(StableGraph.from_edges([0, 0, 0], [(0, 1), (1, 2), (2, 0), (0, 0), (1, 1)]), [1, 0, 2, 1, 1]),
    ]
    for m in inputs:
        s = stabilize(m)
        assert stabilize(s) == s
        assert s.total == 1


def test_delta_point_eq():
    p = MetricGraph(theta(), ["1/3"] * 3)
    assert not delta_point_eq(p, MetricGraph(theta(), ["1/2", "1/4", "1/4"]))

    q = MetricGraph(StableGraph.from_edges([0, 0], [(1, 0)] * 3), ["1/3"] * 3)
    assert delta_point_eq(p, q)

    # Swapping two equal parallel edges
    r = MetricGraph(theta(), ["1/4", "1/4", "1/2"])
    assert delta_point_eq(r, MetricGraph(theta(), ["1/2", "1/4", "1/4"]))
    assert not delta_point_eq(r, MetricGraph(theta(weights=(0, 1)), ["1/4", "1/4", "1/2"]))
