from collections import Counter, namedtuple

from tropocat.cospans.finsets import FinSet, PresentedSet, as_finset, check_same_size, glue

Classification = namedtuple("Classification", ["is_reduced", "is_connected", "is_positive_boundary", "closed_classes"])


class Cospan:
    """
    A cospan A -> X <- B of finite sets.

    The apex X is a presented set; `left_map` / `right_map` send each foot to the
    representative of its apex class.
    """

    def __init__(self, left, right, apex, left_map, right_map):
        self.left = as_finset(left)
        self.right = as_finset(right)
        self.apex = apex

        # Check maps
        if len(left_map) != len(self.left) or len(right_map) != len(self.right):
            raise ValueError("Feet maps must be total")
        self.left_map = tuple(apex.find(x) for x in left_map)
        self.right_map = tuple(apex.find(x) for x in right_map)

    @staticmethod
    def from_maps(n_left, n_right, n_classes, left_map, right_map):
        """Builds a cospan from 0-based class indices (the JSON layout)."""
        for x in list(left_map) + list(right_map):
            if not (0 <= x < n_classes):
                raise ValueError(f"Class index {x} out of range (apex has {n_classes} classes)")
        return Cospan(n_left, n_right, PresentedSet.discrete(n_classes),
                      [x + 1 for x in left_map], [x + 1 for x in right_map])

    def classes(self):
        return self.apex.classes()

    def class_index(self):
        return {c: k for k, c in enumerate(self.apex.classes())}

    def hits(self):
        """Number of feet landing on each class."""
        counts = Counter(self.left_map) + Counter(self.right_map)
        return {c: counts.get(c, 0) for c in self.apex.classes()}

    def feet_key(self):
        return len(self.left), len(self.right)

    def to_json(self):
        c = canonicalize(self)
        idx = c.class_index()
        return {
            "left": len(c.left),
            "right": len(c.right),
            "apex_classes": c.apex.num_classes(),
            "left_map": [idx[x] for x in c.left_map],
            "right_map": [idx[x] for x in c.right_map],
        }

    @staticmethod
    def from_json(d):
        try:
            return Cospan.from_maps(int(d["left"]), int(d["right"]), int(d["apex_classes"]),
                                    [int(x) for x in d["left_map"]], [int(x) for x in d["right_map"]])
        except KeyError as e:
            raise ValueError(f"Missing cospan field: {e}")

    def __eq__(self, other):
        # Feet compare by size; display labels are not part of the morphism
        return (isinstance(other, Cospan) and self.feet_key() == other.feet_key()
                and self.apex == other.apex and self.left_map == other.left_map
                and self.right_map == other.right_map)

    def __hash__(self):
        return hash((self.feet_key(), self.apex, self.left_map, self.right_map))

    def __repr__(self):
        return f"Cospan({len(self.left)} -> {self.apex.num_classes()} classes <- {len(self.right)}, " \
               f"left_map={list(self.left_map)}, right_map={list(self.right_map)})"


def compose(c1, c2):
    """Pushout composite of c1: A -> X <- B and c2: B -> Y <- C (not canonicalized)."""
    check_same_size(c1.right, c2.left)
    apex = glue(c1.apex, c2.apex, len(c1.right), c1.right_map, c2.left_map)
    left_map = [apex.find(x) for x in c1.left_map]
    right_map = [apex.find(x + c1.apex.l) for x in c2.right_map]
    return Cospan(c1.left, c2.right, apex, left_map, right_map)


def canonical_order(c, label_of=None):
    """
    Classes in canonical scan order: left feet, right feet, then the classes hit by no
    foot (sorted by `label_of` when given, else in internal order).
    """
    order, seen = [], set()
    for x in c.left_map + c.right_map:
        if x not in seen:
            seen.add(x)
            order.append(x)
    leftovers = [x for x in c.classes() if x not in seen]
    if label_of is not None:
        leftovers.sort(key=label_of)
    return order + leftovers


def relabel(c, order):
    new_index = {x: k + 1 for k, x in enumerate(order)}
    return Cospan(c.left, c.right, PresentedSet.discrete(len(order)),
                  [new_index[x] for x in c.left_map], [new_index[x] for x in c.right_map])


def canonicalize(c):
    return relabel(c, canonical_order(c))


def classify(c):
    hits = c.hits()
    closed = [x for x, n in hits.items() if n == 0]
    right_hit = set(c.right_map)
    return Classification(
        is_reduced=not closed,
        is_connected=len(hits) == 1,
        is_positive_boundary=all(x in right_hit for x in c.classes()),
        closed_classes=tuple(closed),
    )


def identity(A):
    A = as_finset(A)
    return Cospan(A, A, PresentedSet.discrete(len(A)), range(1, len(A) + 1), range(1, len(A) + 1))


def empty_cospan():
    return identity(FinSet(0))


def disjoint_union(c1, c2):
    """Monoidal product: the feet and classes of c2 come after those of c1."""
    shift = c1.apex.l
    apex = PresentedSet(c1.apex.l + c2.apex.l, list(c1.apex.rep) + [r + shift if r else 0 for r in c2.apex.rep])
    return Cospan(c1.left + c2.left, c1.right + c2.right, apex,
                  list(c1.left_map) + [x + shift for x in c2.left_map],
                  list(c1.right_map) + [x + shift for x in c2.right_map])


def swap(A, B):
    """The symmetry A + B -> B + A."""
    A, B = as_finset(A), as_finset(B)
    n, m = len(A), len(B)
    right_map = [n + k + 1 for k in range(m)] + [k + 1 for k in range(n)]
    return Cospan(A + B, B + A, PresentedSet.discrete(n + m), range(1, n + m + 1), right_map)


def from_partition(n_left, n_right, blocks):
    """Reduced cospan whose classes are the blocks of a partition of the n_left + n_right feet."""
    feet = n_left + n_right
    covered = sorted(x for b in blocks for x in b)
    if covered != list(range(feet)):
        raise ValueError(f"Blocks must partition 0..{feet - 1}")

    owner = {}
    for k, b in enumerate(blocks):
        for x in b:
            owner[x] = k
    maps = [owner[x] for x in range(feet)]
    return canonicalize(Cospan.from_maps(n_left, n_right, len(blocks), maps[:n_left], maps[n_left:]))


def partition(c):
    """Equivalence relation induced on the feet (left feet first); closed classes are forgotten."""
    blocks = {}
    for k, x in enumerate(c.left_map + c.right_map):
        blocks.setdefault(x, []).append(k)
    return sorted(tuple(b) for b in blocks.values())


def drop_closed(c):
    closed = set(classify(c).closed_classes)
    order = [x for x in canonical_order(c) if x not in closed]
    return relabel(c, order)


def compose_reduced(c1, c2):
    return drop_closed(compose(c1, c2))
