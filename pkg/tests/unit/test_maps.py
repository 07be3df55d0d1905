from fractions import Fraction

import numpy as np
import pytest

from graphs_fixtures import dumbbell, figure_eight, theta
from tropocat.cospans.monoids import TRIVIAL
from tropocat.cospans.weighted import WeightedCospan, identity_weighted, tensor
from tropocat.errors import InvalidChain, InvalidSimplex, WrongMonoid
from tropocat.graphs.enumeration import enumerate_Jg
from tropocat.graphs.stable_graph import StableGraph
from tropocat.moduli.chains import FactorizationChain, NerveChain, chain_sum, face_coords
from tropocat.moduli.cuts import cut_to_factorization, random_cuts
from tropocat.moduli.maps import ContractionSimplex, SuspendedPoint, mu, phi, phi2, phi3
from tropocat.moduli.metric_graph import MetricGraph, delta_point_eq, stabilize

F = Fraction


def cap(k, label=0, monoid=None):
    kwargs = {"monoid": monoid} if monoid else {}
    return WeightedCospan.from_maps(0, k, [], [0] * k, [label], **kwargs)


def cup(k, label=0):
    return WeightedCospan.from_maps(k, 0, [0] * k, [], [label])


def with_zero(rng, n, i):
    weights = [int(x) for x in rng.integers(1, 6, size=n + 1)]
    weights[i] = 0
    return [F(w, sum(weights)) for w in weights]


# Factorization chains ##################################################################

def test_factorization_chain():
    chain = FactorizationChain([cap(3), identity_weighted(3), cup(3)])
    assert chain.n == 1
    assert chain.middle(0) == chain.middle(1) == 3
    assert chain.validate() == 2
    with pytest.raises(InvalidChain):
        chain.validate(g=3)

    face = chain.face(1)
    assert face == FactorizationChain([cap(3), cup(3)])
    assert FactorizationChain.from_json(chain.to_json()) == chain


@pytest.mark.parametrize("cospans", [
    [cup(1), cap(1)],                                    # does not start at the empty set
    [cap(2), cup(3)],                                    # feet do not match
    [tensor(cap(1), cap(1)), tensor(cup(1), cup(1))],   # two pieces
    [WeightedCospan.from_maps(0, 0, [], [], [2]), WeightedCospan.from_maps(0, 0, [], [], [0])],  # empty M_0
])
def test_invalid_factorization_chain(cospans):
    with pytest.raises(InvalidChain):
        FactorizationChain(cospans).validate()


def test_chain_errors():
    with pytest.raises(InvalidChain):
        FactorizationChain([cap(2)])
    with pytest.raises(InvalidChain):
        FactorizationChain([cap(3), cup(3)]).face(0)
    with pytest.raises(InvalidChain):
        FactorizationChain.from_json({})


# phi ##################################################################################

def test_phi_single_cut():
    p = phi(FactorizationChain([cap(3), cup(3)]), [1])
    assert p == stabilize(MetricGraph(theta(), ["1/3"] * 3))

    # Two blocks: the middle pieces are smoothed away
    chain = FactorizationChain([cap(3), identity_weighted(3), cup(3)])
    assert phi(chain, ["1/2", "1/2"]) == p
    assert phi(chain, ["1", "0"]) == p


def test_phi_weights_and_lengths():
    # A weight-1 cap, then a pair of pants whose legs close up into a loop
    chain = FactorizationChain([cap(1, label=1), WeightedCospan.from_maps(1, 2, [0], [0, 0], [0]), cup(2)])
    assert chain.validate() == 2
    p = phi(chain, ["1/3", "2/3"])
    expected = MetricGraph(StableGraph.from_edges([1, 0], [(0, 1), (1, 1)]), ["1/3", "2/3"])
    assert delta_point_eq(p, expected)


def test_phi_errors():
    with pytest.raises(InvalidChain):
        phi(FactorizationChain([cap(2), cup(2)]), [1])  # genus 1
    with pytest.raises(InvalidChain):
        phi(FactorizationChain([cap(3), cup(3)]), ["1/2", "1/2"])
    with pytest.raises(InvalidChain):
        phi(FactorizationChain([cap(3), cup(3)]), ["-1"])
    with pytest.raises(WrongMonoid):
        phi(FactorizationChain([cap(3, monoid=TRIVIAL), WeightedCospan.from_maps(3, 0, [0] * 3, [], [0],
                                                                                 monoid=TRIVIAL)]), [1])


def test_phi_faces():
    rng = np.random.default_rng(7)
    graphs = enumerate_Jg(2) + enumerate_Jg(3)
    for _ in range(1000):
        G = graphs[int(rng.integers(len(graphs)))]
        chain = cut_to_factorization(G, random_cuts(rng, G, int(rng.integers(2, 4))))
        i = int(rng.integers(chain.n + 1))
        t = with_zero(rng, chain.n, i)
        assert phi(chain, t) == phi(chain.face(i), face_coords(t, i))


# phi2 / phi3 ###########################################################################

def test_phi2_theta():
    simplex = ContractionSimplex(theta(), [[0]])
    assert [G.num_edges for G in simplex.graphs()] == [3, 2]
    assert simplex.survivors(1) == {1: 0, 2: 1}

    p = phi2(simplex, ["1/2", "1/2"])
    assert sorted(p.lengths) == [F(1, 6), F(5, 12), F(5, 12)]
    assert delta_point_eq(p, MetricGraph(theta(), ["5/12", "5/12", "1/6"]))


def test_phi2_uniform():
    assert phi2(ContractionSimplex(dumbbell()), [1]).lengths == (F(1, 3),) * 3
    assert phi2(ContractionSimplex(theta(), [[0]]), [1, 0]).lengths == (F(1, 3),) * 3


def test_phi2_faces():
    simplex = ContractionSimplex(theta(), [[0], [0]])
    assert simplex.graphs()[-1] == StableGraph.from_edges([1], [(0, 0)])
    assert simplex.face(1).steps == [(0, 1)]

    rng = np.random.default_rng(3)
    for _ in range(20):
        i = int(rng.integers(3))
        t = with_zero(rng, 2, i)
        assert phi2(simplex, t) == phi2(simplex.face(i), face_coords(t, i))


def test_phi2_errors():
    with pytest.raises(InvalidSimplex):
        phi2(ContractionSimplex(StableGraph.from_edges([1], [(0, 0)]), [[0]]), [1, 0])  # no edges left
    with pytest.raises(InvalidSimplex):
        phi2(ContractionSimplex(theta(), [[5]]), [1, 0])
    with pytest.raises(InvalidSimplex):
        phi2(ContractionSimplex(theta(), [[0]]), [1])
    with pytest.raises(InvalidSimplex):
        ContractionSimplex(theta()).face(0)


def test_phi3():
    simplex = ContractionSimplex(theta(), [[0]])
    p = phi3(simplex, ["1/4", "3/4"])
    assert delta_point_eq(p, MetricGraph(figure_eight(), ["1/4", "3/4"]))
    assert phi3(simplex, ["1/4", "3/4"], t=["1/2", "1/2"]) == p

    with pytest.raises(InvalidSimplex):
        phi3(simplex, ["1/3"] * 3)
    with pytest.raises(InvalidSimplex):
        phi3(simplex, ["1/4", "3/4"], t=[1])


def test_simplex_json():
    simplex = ContractionSimplex(dumbbell(), [[1], []])
    copy = ContractionSimplex.from_json(simplex.to_json())
    assert copy.steps == simplex.steps
    assert copy.graphs() == simplex.graphs()
    with pytest.raises(InvalidSimplex):
        ContractionSimplex.from_json({"steps": []})


# mu ###################################################################################

def sandwich(extra=0):
    """0 -> 3 circles -> 3 circles -> 0 (a theta surface), next to `extra` open strands."""
    cospans = [cap(3), identity_weighted(3), cup(3)]
    if extra:
        cospans = [tensor(w, identity_weighted(extra)) for w in cospans]
    return NerveChain(cospans)


def test_mu_one_component():
    chain = sandwich(extra=1)
    assert chain.objects == [1, 4, 4, 1]

    points = mu(chain, ["1/4"] * 4)
    expected = SuspendedPoint(stabilize(MetricGraph(theta(), [1, 1, 1])), F(1, 4), F(1, 4), 2)
    assert points == [expected]
    assert points[0].genus == 2
    assert points[0].to_json()["a"] == "1/4"


def test_mu_basepoints_and_open_components():
    assert mu(sandwich(), ["0", "1/2", "1/2", "0"]) == []
    assert mu(NerveChain([identity_weighted(2)]), ["1/2", "1/2"]) == []
    assert mu(NerveChain([], objects=[2]), [1]) == []

    # A closed torus is dropped
    torus = NerveChain([cap(2), identity_weighted(2), cup(2)])
    assert mu(torus, ["1/4"] * 4) == []


def test_mu_faces():
    chain = sandwich(extra=1)
    for t in (["1/4", "0", "1/2", "1/4"], ["0", "1/4", "1/2", "1/4"], ["1/4", "1/4", "1/2", "0"]):
        t = [F(x) for x in t]
        i = t.index(0)
        assert mu(chain, t) == mu(chain.face(i), face_coords(t, i))
    assert chain.face(1).objects == [1, 4, 1]


def test_mu_is_additive():
    c1, c2 = sandwich(), NerveChain([cap(4), identity_weighted(4), cup(4)])
    t = ["1/8", "3/8", "1/4", "1/4"]
    total = chain_sum(c1, c2)
    assert total.objects == [0, 7, 7, 0]
    assert mu(total, t) == sorted(mu(c1, t) + mu(c2, t), key=lambda p: p.encode())
    assert len(mu(total, t)) == 2

    with pytest.raises(InvalidChain):
        chain_sum(c1, NerveChain([cap(3), cup(3)]))


def test_mu_errors():
    with pytest.raises(InvalidChain):
        mu(NerveChain([WeightedCospan.from_maps(0, 1, [], [0], [0])]), ["1/2", "1/2"])  # unstable
    with pytest.raises(InvalidChain):
        mu(sandwich(), [1])
    with pytest.raises(InvalidChain):
        NerveChain([cap(2), cup(3)])
    with pytest.raises(InvalidChain):
        NerveChain([])
    with pytest.raises(ValueError):
        SuspendedPoint(stabilize(MetricGraph(theta(), [1, 1, 1])), F(3, 4), F(1, 2), 2)
