import numpy as np
import pytest

from tropocat.cospans.monoids import (NAT, NAT_STABLE, TRIVIAL, IntegerMonoid, MonoidGroupElement, TruncatedMonoid,
                                      get_monoid, is_natural)
from tropocat.errors import UnsupportedMonoid


@pytest.mark.parametrize("name", ["trivial", "nat", "nat-stable", "nat-mod:0", "nat-mod:3", "nat-stable-mod:0",
                                  "nat-stable-mod:3", "int"])
def test_laws_hold(name):
    monoid = get_monoid(name)
    assert monoid.check_laws(np.random.default_rng(0), samples=200) == []


def test_registry():
    assert get_monoid("nat-stable") is NAT_STABLE
    assert get_monoid(" NAT ") is NAT
    assert get_monoid("trivial") is TRIVIAL
    assert isinstance(get_monoid("int"), IntegerMonoid)
    with pytest.raises(UnsupportedMonoid):
        get_monoid("real")
    with pytest.raises(UnsupportedMonoid):
        get_monoid("nat-mod:x")


def test_natural_monoids():
    assert NAT_STABLE.alpha == 1 and NAT.alpha == 1
    assert not NAT_STABLE.is_in_A1(0) and NAT_STABLE.is_in_A1(1)
    assert NAT.is_in_A1(0)
    assert is_natural(NAT_STABLE) and is_natural(NAT, stable=False)
    assert not is_natural(TRIVIAL)


def test_truncated_monoid_saturates():
    monoid = TruncatedMonoid(3)
    assert monoid.add(2, 2) == 3
    assert monoid.alpha == 1
    assert monoid.to_group(3) == 0
    assert TruncatedMonoid(0).alpha == 0
    with pytest.raises(ValueError):
        monoid.validate(4)


def test_stable_truncated_monoid():
    monoid = get_monoid("nat-stable-mod:2")
    assert isinstance(monoid, TruncatedMonoid) and monoid.name == "nat-stable-mod:2"
    assert [a for a in monoid.elements(5) if monoid.is_in_A1(a)] == [1, 2]
    assert monoid.add(1, 1) == 2 and monoid.alpha == 1
    # Nothing is left to exclude once gamma is 0
    assert get_monoid("nat-stable-mod:0").is_in_A1(0)
    with pytest.raises(UnsupportedMonoid):
        get_monoid("nat-stable-mod:-1")


def test_scale_and_sum():
    assert NAT_STABLE.scale(2, 3) == 6
    assert NAT_STABLE.sum([1, 2, 3]) == 6
    with pytest.raises(ValueError):
        NAT_STABLE.scale(1, -1)


def test_group_elements():
    a, b = MonoidGroupElement(3), MonoidGroupElement(5)
    assert a - b == MonoidGroupElement(-2)
    assert int(a + b) == 8
