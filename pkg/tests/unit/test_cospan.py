import pytest

from tropocat.cospans.cospan import (Cospan, canonicalize, classify, compose, compose_reduced, from_partition,
                                     identity, partition, swap)
from tropocat.cospans.finsets import FinSet, PresentedSet
from tropocat.errors import FootMismatch


def test_identity_is_neutral():
    c = Cospan.from_maps(2, 1, 2, [0, 1], [0])
    assert canonicalize(compose(identity(2), c)) == canonicalize(c)
    assert canonicalize(compose(c, identity(1))) == canonicalize(c)


def test_composition_can_close_classes():
    c1 = Cospan.from_maps(0, 2, 1, [], [0, 0])
    c2 = Cospan.from_maps(2, 0, 1, [0, 0], [])
    info = classify(compose(c1, c2))
    assert not info.is_reduced
    assert len(info.closed_classes) == 1
    assert compose_reduced(c1, c2).apex.num_classes() == 0


def test_composition_needs_matching_feet():
    c1 = Cospan.from_maps(0, 2, 1, [], [0, 0])
    with pytest.raises(FootMismatch):
        compose(c1, identity(3))


def test_swap_is_involutive():
    assert canonicalize(compose(swap(1, 2), swap(2, 1))) == canonicalize(identity(3))


def test_partition_round_trip():
    c = from_partition(2, 1, [(0, 2), (1,)])
    assert partition(c) == [(0, 2), (1,)]
    with pytest.raises(ValueError):
        from_partition(2, 1, [(0,), (1,)])


def test_json_layout():
    c = Cospan.from_maps(1, 2, 2, [1], [0, 1])
    d = c.to_json()
    assert d == {"left": 1, "right": 2, "apex_classes": 2, "left_map": [0], "right_map": [1, 0]}
    assert canonicalize(Cospan.from_json(d)) == canonicalize(c)


def test_positive_boundary():
    assert classify(identity(2)).is_positive_boundary
    assert not classify(Cospan.from_maps(1, 0, 1, [0], [])).is_positive_boundary


def test_equality_ignores_display_labels():
    plain = Cospan.from_maps(2, 1, 1, [0, 0], [0])
    named = Cospan(FinSet(2, labels=["a", "b"]), FinSet(1, labels=["c"]), PresentedSet.discrete(1), [1, 1], [1])
    assert named == plain
    assert hash(named) == hash(plain)
    assert len({named, plain}) == 1
    assert named != Cospan.from_maps(1, 2, 1, [0], [0, 0])
