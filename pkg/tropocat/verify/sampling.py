import itertools

from tropocat.cospans.weighted import WeightedCospan

CLOSED_FRACTION = 0.25


def _randint(rng, low, high):
    """Integer in [low, high] (both included)."""
    return int(rng.integers(low, high + 1))


def _labels_for(rng, monoid, hits, max_label):
    # Classes hit by <= 1 foot must carry a label in A1
    return [monoid.sample(rng, max_label, stable=n <= 1) for n in hits]


def random_cospan(rng, monoid, n_left, n_right, max_apex, max_label, force_closed=False):
    """
    Samples a stable weighted cospan: a surjection from the feet onto a set of classes,
    plus fresh closed classes when `force_closed`, then labels.
    """
    n_feet = n_left + n_right
    n_hit = _randint(rng, 1, max(1, min(n_feet, max_apex))) if n_feet else 0

    # Surjection feet -> classes
    owner = [0] * n_feet
    order = [int(x) for x in rng.permutation(n_feet)]
    for k, x in enumerate(order):
        owner[x] = k if k < n_hit else _randint(rng, 0, n_hit - 1)

    n_closed = _randint(rng, 1, max(1, max_apex - n_hit)) if force_closed else 0
    n_classes = n_hit + n_closed
    hits = [owner.count(k) for k in range(n_classes)]
    labels = _labels_for(rng, monoid, hits, max_label)
    return WeightedCospan.from_maps(n_left, n_right, owner[:n_left], owner[n_left:], labels, monoid=monoid)


def random_weighted(rng, cfg, monoid, n_left=None, n_right=None):
    n_left = _randint(rng, 0, cfg.max_feet) if n_left is None else n_left
    n_right = _randint(rng, 0, cfg.max_feet) if n_right is None else n_right
    force_closed = bool(rng.random() < CLOSED_FRACTION)
    return random_cospan(rng, monoid, n_left, n_right, cfg.max_apex, cfg.max_label, force_closed=force_closed)


def random_composable(rng, cfg, monoid, length):
    sizes = [_randint(rng, 0, cfg.max_feet) for _ in range(length + 1)]
    return [random_weighted(rng, cfg, monoid, sizes[k], sizes[k + 1]) for k in range(length)]


def random_closed(rng, cfg, monoid):
    n = _randint(rng, 0, cfg.max_apex)
    labels = [monoid.sample(rng, cfg.max_label, stable=True) for _ in range(n)]
    return WeightedCospan.from_maps(0, 0, [], [], labels, monoid=monoid)


def random_connected(rng, monoid, n_left, n_right, max_label):
    """A single class hit by every foot."""
    label = monoid.sample(rng, max_label, stable=n_left + n_right <= 1)
    return WeightedCospan.from_maps(n_left, n_right, [0] * n_left, [0] * n_right, [label], monoid=monoid)


def random_positive_boundary(rng, cfg, monoid, n_left=None, n_right=None):
    """Every class is hit by a right foot."""
    n_left = _randint(rng, 0, cfg.max_feet) if n_left is None else n_left
    n_right = _randint(rng, 1, cfg.max_feet) if n_right is None else n_right
    if n_right == 0:
        return WeightedCospan.from_maps(n_left, 0, [], [], [], monoid=monoid) if n_left == 0 else None

    n_classes = _randint(rng, 1, min(n_right, cfg.max_apex))
    right = [int(x) for x in rng.permutation(n_right)]
    right = [k if k < n_classes else _randint(rng, 0, n_classes - 1) for k in right]
    left = [_randint(rng, 0, n_classes - 1) for _ in range(n_left)]
    hits = [left.count(k) + right.count(k) for k in range(n_classes)]
    labels = _labels_for(rng, monoid, hits, cfg.max_label)
    return WeightedCospan.from_maps(n_left, n_right, left, right, labels, monoid=monoid)


def set_partitions(n, max_blocks):
    """Restricted growth strings of length n with at most `max_blocks` blocks."""
    if n == 0:
        yield ()
        return

    def _grow(prefix, n_blocks):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(min(n_blocks + 1, max_blocks)):
            yield from _grow(prefix + [b], max(n_blocks, b + 1))

    yield from _grow([], 0)


def enumerate_weighted(monoid, max_feet, max_apex, max_label, stable=True):
    """
    Every weighted cospan with |left| + |right| <= max_feet, at most max_apex classes and
    labels up to max_label, grouped by (|left|, |right|).
    """
    elements = monoid.elements(max_label)
    closed_pool = [a for a in elements if not stable or monoid.is_in_A1(a)]
    universe = {}
    for n_feet in range(max_feet + 1):
        for owner in set_partitions(n_feet, max_apex):
            n_hit = max(owner) + 1 if owner else 0
            hits = [owner.count(k) for k in range(n_hit)]
            pools = [[a for a in elements if not stable or n > 1 or monoid.is_in_A1(a)] for n in hits]
            for n_closed in range(max_apex - n_hit + 1):
                for closed in itertools.combinations_with_replacement(closed_pool, n_closed):
                    for labels in itertools.product(*pools):
                        for n_left in range(n_feet + 1):
                            w = WeightedCospan.from_maps(n_left, n_feet - n_left, owner[:n_left], owner[n_left:],
                                                         list(labels) + list(closed), monoid=monoid)
                            universe.setdefault((n_left, n_feet - n_left), set()).add(w)

    # Deterministic order
    return {k: sorted(v, key=lambda w: _sort_key(w)) for k, v in sorted(universe.items())}


def _sort_key(w):
    return w.left_map, w.right_map, w.labels


def composable_pairs(universe):
    for (a, b), ws in universe.items():
        for (b2, c), vs in universe.items():
            if b2 != b:
                continue
            for w1 in ws:
                for w2 in vs:
                    yield w1, w2


def composable_triples(universe):
    for w1, w2 in composable_pairs(universe):
        for (c, d), us in universe.items():
            if c != len(w2.right):
                continue
            for w3 in us:
                yield w1, w2, w3
