from fractions import Fraction

from tropocat.bundle.utils import parse_fraction
from tropocat.cospans.monoids import NAT_STABLE
from tropocat.cospans.weighted import WeightedCospan, compose_weighted, glue_chain, is_stable, tensor
from tropocat.errors import FootMismatch, InvalidChain


def check_coords(t, n, error=InvalidChain):
    """Barycentric coordinates t_0..t_n: nonnegative exact rationals summing to 1."""
    try:
        t = [parse_fraction(x) for x in t]
    except (TypeError, ValueError) as e:
        raise error(f"Invalid coordinates: {e}")
    if len(t) != n + 1:
        raise error(f"Expected {n + 1} coordinates (got {len(t)})")
    if any(x < 0 for x in t):
        raise error("Coordinates must be nonnegative")
    if sum(t, Fraction(0)) != 1:
        raise error("Coordinates must sum to 1")
    return t


def face_coords(t, i):
    return list(t[:i]) + list(t[i + 1:])


class FactorizationChain:
    """
    A chain 0 -> M_0 -> ... -> M_n -> 0 given by the weighted cospans W_0, ..., W_{n+1},
    whose full composite is a single closed class.
    """

    def __init__(self, cospans):
        self.cospans = list(cospans)
        if len(self.cospans) < 2:
            raise InvalidChain("A factorization chain needs at least two cospans")

    @property
    def n(self):
        return len(self.cospans) - 2

    @property
    def monoid(self):
        return self.cospans[0].monoid

    def middle(self, i):
        """Size of M_i."""
        return len(self.cospans[i].right)

    def composite(self):
        try:
            return glue_chain(self.cospans)
        except FootMismatch as e:
            raise InvalidChain(f"Cospans are not composable: {e}")

    def validate(self, g=None):
        """Checks the chain and returns the genus of its composite."""
        if len(self.cospans[0].left) or len(self.cospans[-1].right):
            raise InvalidChain("A factorization chain must start and end at the empty set")
        for i in range(self.n + 1):
            if self.middle(i) == 0:
                raise InvalidChain(f"M_{i} is empty")
        if any(w.monoid.name != self.monoid.name for w in self.cospans):
            raise InvalidChain("Every cospan must use the same monoid")

        composite = self.composite()
        if composite.num_classes != 1:
            raise InvalidChain(f"The composite has {composite.num_classes} classes (expected one)")
        genus = composite.labels[0]
        if g is not None and genus != g:
            raise InvalidChain(f"The composite has label {genus} (expected {g})")
        return genus

    def is_stable(self):
        return all(is_stable(w) for w in self.cospans)

    def face(self, i):
        """Removes M_i by composing W_i with W_{i+1}."""
        if not (0 <= i <= self.n):
            raise InvalidChain(f"Face index {i} out of range 0..{self.n}")
        if self.n == 0:
            raise InvalidChain("A 0-simplex has no faces")
        merged = compose_weighted(self.cospans[i], self.cospans[i + 1])
        return FactorizationChain(self.cospans[:i] + [merged] + self.cospans[i + 2:])

    def to_json(self):
        return {"cospans": [w.to_json() for w in self.cospans]}

    @staticmethod
    def from_json(d, monoid=NAT_STABLE):
        if "cospans" not in d:
            raise InvalidChain("Chain JSON needs a 'cospans' field")
        return FactorizationChain([WeightedCospan.from_json(w, monoid=monoid) for w in d["cospans"]])

    def __eq__(self, other):
        return isinstance(other, FactorizationChain) and self.cospans == other.cospans

    def __repr__(self):
        return f"FactorizationChain(n={self.n}, cospans={self.cospans})"


class NerveChain:
    """
    An n-simplex M_0 -> M_1 -> ... -> M_n of the cobordism category: the weighted cospans
    W_1..W_n. A 0-simplex is a bare object and is given by `objects=[M_0]`.
    """

    def __init__(self, cospans, objects=None):
        self.cospans = list(cospans)
        if self.cospans:
            sizes = [len(self.cospans[0].left)] + [len(w.right) for w in self.cospans]
            for k in range(len(self.cospans) - 1):
                if len(self.cospans[k].right) != len(self.cospans[k + 1].left):
                    raise InvalidChain(f"W_{k + 1} and W_{k + 2} are not composable")
            if objects is not None and list(objects) != sizes:
                raise InvalidChain("Objects do not match the cospans")
            self.objects = sizes
        else:
            if objects is None or len(objects) != 1:
                raise InvalidChain("A 0-simplex needs exactly one object")
            self.objects = [int(objects[0])]

    @property
    def n(self):
        return len(self.objects) - 1

    def face(self, i):
        if not (0 <= i <= self.n):
            raise InvalidChain(f"Face index {i} out of range 0..{self.n}")
        if self.n == 0:
            raise InvalidChain("A 0-simplex has no faces")

        objects = self.objects[:i] + self.objects[i + 1:]
        if i == 0:
            cospans = self.cospans[1:]
        elif i == self.n:
            cospans = self.cospans[:-1]
        else:
            merged = compose_weighted(self.cospans[i - 1], self.cospans[i])
            cospans = self.cospans[:i - 1] + [merged] + self.cospans[i + 1:]
        return NerveChain(cospans, objects=objects)

    def to_json(self):
        if not self.cospans:
            return {"cospans": [], "objects": self.objects}
        return {"cospans": [w.to_json() for w in self.cospans]}

    @staticmethod
    def from_json(d, monoid=NAT_STABLE):
        if "cospans" not in d:
            raise InvalidChain("Chain JSON needs a 'cospans' field")
        cospans = [WeightedCospan.from_json(w, monoid=monoid) for w in d["cospans"]]
        return NerveChain(cospans, objects=d.get("objects"))

    def __repr__(self):
        return f"NerveChain(n={self.n}, objects={self.objects})"


def chain_sum(c1, c2):
    """Level-wise disjoint union of two simplices of the same dimension."""
    if c1.n != c2.n:
        raise InvalidChain(f"Cannot add simplices of dimensions {c1.n} and {c2.n}")
    objects = [a + b for a, b in zip(c1.objects, c2.objects)]
    return NerveChain([tensor(w1, w2) for w1, w2 in zip(c1.cospans, c2.cospans)], objects=objects)
