from collections import Counter

from tropocat.cospans.cospan import (Cospan, canonical_order, classify, compose, disjoint_union, identity,
                                     relabel)
from tropocat.cospans.monoids import NAT_STABLE, MonoidGroupElement, get_monoid, is_natural
from tropocat.errors import NegativeBetti, WrongMonoid


def b1_of_class(mid_hits, part_count):
    """First Betti number of a glued class: shared feet - glued parts + 1."""
    if part_count < 1 or mid_hits < part_count - 1:
        raise NegativeBetti(f"Corrupted composite class (mid_hits={mid_hits}, part_count={part_count})")
    return mid_hits - part_count + 1


class WeightedCospan:
    """
    A cospan whose apex classes carry labels in a weighting monoid.

    Always stored in canonical form, so two weighted cospans are isomorphic iff they
    compare equal. `labels` are given in the order of `cospan.classes()`.
    """

    def __init__(self, cospan, labels, monoid=NAT_STABLE, assert_stable=False):
        classes = cospan.classes()
        labels = list(labels.values()) if isinstance(labels, dict) else list(labels)
        if len(labels) != len(classes):
            raise ValueError(f"Expected {len(classes)} labels (got {len(labels)})")
        label_of = {x: monoid.validate(a) for x, a in zip(classes, labels)}

        # Canonical form (closed classes sorted by label)
        order = canonical_order(cospan, label_of=lambda x: monoid.sort_key(label_of[x]))
        self.cospan = relabel(cospan, order)
        self.labels = tuple(label_of[x] for x in order)
        self.monoid = monoid

        if assert_stable and not is_stable(self):
            raise ValueError(f"Weighted cospan is not stable for '{monoid.name}': {self!r}")

    @property
    def left(self):
        return self.cospan.left

    @property
    def right(self):
        return self.cospan.right

    @property
    def left_map(self):
        """Left feet as 0-based class indices."""
        return tuple(x - 1 for x in self.cospan.left_map)

    @property
    def right_map(self):
        return tuple(x - 1 for x in self.cospan.right_map)

    @property
    def num_classes(self):
        return len(self.labels)

    def hits(self):
        """Number of feet landing on each class (0-based class index)."""
        counts = Counter(self.left_map) + Counter(self.right_map)
        return [counts.get(k, 0) for k in range(self.num_classes)]

    def classify(self):
        return classify(self.cospan)

    def is_connected(self):
        return self.num_classes == 1

    def to_json(self):
        d = self.cospan.to_json()
        d["labels"] = list(self.labels)
        return d

    @staticmethod
    def from_json(d, monoid=NAT_STABLE):
        if isinstance(monoid, str):
            monoid = get_monoid(monoid)
        cospan = Cospan.from_json(d)
        labels = d.get("labels")
        if labels is None:
            raise ValueError("Weighted cospan JSON needs a 'labels' field")
        return WeightedCospan(cospan, [int(a) for a in labels], monoid=monoid)

    @staticmethod
    def from_maps(n_left, n_right, left_map, right_map, labels, monoid=NAT_STABLE):
        """Shortcut with 0-based class indices; the class count is len(labels)."""
        cospan = Cospan.from_maps(n_left, n_right, len(labels), left_map, right_map)
        return WeightedCospan(cospan, labels, monoid=monoid)

    def _key(self):
        return self.monoid.name, self.cospan, self.labels

    def __eq__(self, other):
        return isinstance(other, WeightedCospan) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"WeightedCospan({len(self.left)} -> {list(self.labels)} <- {len(self.right)}, " \
               f"left_map={list(self.left_map)}, right_map={list(self.right_map)})"


def check_same_monoid(w1, w2):
    if w1.monoid.name != w2.monoid.name:
        raise WrongMonoid(f"Cannot combine labels of '{w1.monoid.name}' and '{w2.monoid.name}'")
    return w1.monoid


def compose_weighted(w1, w2):
    """
    Composite of w1: A -> X <- B and w2: B -> Y <- C. Each composite class gets the sum of
    the labels glued into it plus alpha times its first Betti number.
    """
    monoid = check_same_monoid(w1, w2)
    c1, c2 = w1.cospan, w2.cospan
    c = compose(c1, c2)
    shift = c1.apex.l

    # Parts glued into each composite class
    parts = {x: [] for x in c.classes()}
    for p, a in zip(c1.classes(), w1.labels):
        parts[c.apex.find(p)].append(a)
    for q, a in zip(c2.classes(), w2.labels):
        parts[c.apex.find(q + shift)].append(a)

    # Shared feet landing on each composite class
    mid_hits = Counter(c.apex.find(x) for x in c1.right_map)

    labels = []
    for x in c.classes():
        b1 = b1_of_class(mid_hits.get(x, 0), len(parts[x]))
        labels.append(monoid.add(monoid.sum(parts[x]), monoid.scale(monoid.alpha, b1)))
    return WeightedCospan(c, labels, monoid=monoid)


def glue_chain(ws):
    """Folds compose_weighted over a composable list."""
    if not ws:
        raise ValueError("Cannot glue an empty chain")
    result = ws[0]
    for w in ws[1:]:
        result = compose_weighted(result, w)
    return result


def tensor(w1, w2):
    monoid = check_same_monoid(w1, w2)
    return WeightedCospan(disjoint_union(w1.cospan, w2.cospan), w1.labels + w2.labels, monoid=monoid)


def identity_weighted(A, monoid=NAT_STABLE):
    c = identity(A)
    return WeightedCospan(c, [monoid.zero] * len(c.classes()), monoid=monoid)


def closed_cospan(labels, monoid=NAT_STABLE):
    """The endomorphism of the empty set with one closed class per label."""
    return WeightedCospan(Cospan.from_maps(0, 0, len(labels), [], []), list(labels), monoid=monoid)


def is_stable(w, monoid=None):
    """Every class hit by at most one foot carries a label in A1."""
    monoid = monoid or w.monoid
    return all(monoid.is_in_A1(a) for a, n in zip(w.labels, w.hits()) if n <= 1)


def _require_natural(w):
    if not is_natural(w.monoid):
        raise WrongMonoid(f"Surfaces need N-labels (got '{w.monoid.name}')")


def surface_of_class(w, k):
    """(genus, number of boundary circles) of the surface behind class k."""
    _require_natural(w)
    return w.labels[k], w.hits()[k]


def euler_characteristic(w):
    _require_natural(w)
    return sum(2 - 2 * a - n for a, n in zip(w.labels, w.hits()))


def pb_genus_functor(w):
    """Sum of labels + alpha * (|right feet| - |classes|) in the group completion."""
    monoid = w.monoid
    total = sum(monoid.to_group(a) for a in w.labels)
    total += monoid.to_group(monoid.alpha) * (len(w.right) - w.num_classes)
    return MonoidGroupElement(total)


def pb_functor(w):
    """The same genus functor valued in the monoid itself; only for positive-boundary w."""
    if not w.classify().is_positive_boundary:
        raise ValueError("pb_functor is only defined on positive-boundary morphisms")
    monoid = w.monoid
    return monoid.add(monoid.sum(w.labels), monoid.scale(monoid.alpha, len(w.right) - w.num_classes))


def split_reduced_closed(w):
    """Splits w into its reduced part and the (sorted) multiset of closed labels."""
    hits = w.hits()
    kept = [k for k, n in enumerate(hits) if n > 0]
    closed = sorted((w.labels[k] for k, n in enumerate(hits) if n == 0), key=w.monoid.sort_key)
    new_index = {k: j for j, k in enumerate(kept)}
    reduced = WeightedCospan.from_maps(len(w.left), len(w.right),
                                       [new_index[k] for k in w.left_map], [new_index[k] for k in w.right_map],
                                       [w.labels[k] for k in kept], monoid=w.monoid)
    return reduced, tuple(closed)


def recombine(reduced, closed):
    return tensor(reduced, closed_cospan(closed, monoid=reduced.monoid))


def restrict(w, left_feet, right_feet):
    """
    Restricts w to the given feet (index lists) and the classes they hit. Returns None
    when some kept class is also hit by a dropped foot.
    """
    kept_left, kept_right = set(left_feet), set(right_feet)
    dropped = {w.left_map[k] for k in range(len(w.left)) if k not in kept_left}
    dropped |= {w.right_map[k] for k in range(len(w.right)) if k not in kept_right}
    used = [w.left_map[k] for k in left_feet] + [w.right_map[k] for k in right_feet]
    if dropped & set(used):
        return None

    classes = sorted(set(used))
    new_index = {k: j for j, k in enumerate(classes)}
    return WeightedCospan.from_maps(len(left_feet), len(right_feet),
                                    [new_index[w.left_map[k]] for k in left_feet],
                                    [new_index[w.right_map[k]] for k in right_feet],
                                    [w.labels[k] for k in classes], monoid=w.monoid)
