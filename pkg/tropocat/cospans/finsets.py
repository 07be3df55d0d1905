from tropocat.errors import FootMismatch


class FinSet:
    """A finite set {0, ..., size-1}, optionally carrying display labels."""

    def __init__(self, size, labels=None):
        if size < 0:
            raise ValueError("'size' must be >= 0")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != size:
                raise ValueError(f"Expected {size} labels (got {len(labels)})")
            if len(set(labels)) != size:
                raise ValueError("Labels must be pairwise distinct")
        self.size = int(size)
        self.labels = labels

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __eq__(self, other):
        return isinstance(other, FinSet) and self.size == other.size and self.labels == other.labels

    def __hash__(self):
        return hash((self.size, self.labels))

    def __repr__(self):
        if self.labels:
            return f"FinSet({self.size}, labels={list(self.labels)})"
        return f"FinSet({self.size})"

    def __add__(self, other):
        # Disjoint union (labels only survive when both sides have them)
        labels = None
        if self.labels is not None and other.labels is not None and not set(self.labels) & set(other.labels):
            labels = self.labels + other.labels
        return FinSet(self.size + other.size, labels=labels)


def as_finset(x):
    return x if isinstance(x, FinSet) else FinSet(int(x))


def check_same_size(a, b, what="feet"):
    if len(a) != len(b):
        raise FootMismatch(f"Cannot glue along {what} of different sizes ({len(a)} != {len(b)})")


class UnionFind:
    """Union-find over 0..n-1 whose representatives are always the class minimum."""

    def __init__(self, num_elements):
        self.parent = list(range(num_elements))

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]

        # Path compression
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i, j):
        i, j = self.find(i), self.find(j)
        if i == j:
            return i
        lo, hi = (i, j) if i < j else (j, i)
        self.parent[hi] = lo
        return lo

    def roots(self):
        return [i for i in range(len(self.parent)) if self.find(i) == i]

    def groups(self):
        groups = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), []).append(i)
        return groups


class PresentedSet:
    """
    A triple (l, X, R): X a subset of {1..l} and R an equivalence relation on X.

    Stored as a fully compressed parent array `rep` of length l, where rep[k-1] is the
    smallest element of the class of k, or 0 when k is not in X. Equal presented sets
    therefore have equal arrays.
    """

    def __init__(self, l, rep):
        rep = tuple(int(x) for x in rep)
        if len(rep) != l:
            raise ValueError(f"Expected a parent array of length {l} (got {len(rep)})")
        for k, r in enumerate(rep, start=1):
            if r == 0:
                continue
            if not (1 <= r <= k) or rep[r - 1] != r:
                raise ValueError(f"Invalid parent array: element {k} points to {r}")
        self.l = l
        self.rep = rep

    @staticmethod
    def from_relation(l, X, pairs=()):
        X = sorted(set(X))
        if any(not (1 <= x <= l) for x in X):
            raise ValueError(f"X must be a subset of 1..{l}")
        uf = UnionFind(l + 1)
        members = set(X)
        for a, b in pairs:
            if a not in members or b not in members:
                raise ValueError(f"Related elements must lie in X (got {a} ~ {b})")
            uf.union(a, b)
        rep = [uf.find(k) if k in members else 0 for k in range(1, l + 1)]
        return PresentedSet(l, rep)

    @staticmethod
    def discrete(n):
        return PresentedSet(n, range(1, n + 1))

    @property
    def X(self):
        return tuple(k for k, r in enumerate(self.rep, start=1) if r)

    def classes(self):
        """Class representatives in increasing order."""
        return [k for k, r in enumerate(self.rep, start=1) if r == k]

    def members(self, representative):
        return [k for k, r in enumerate(self.rep, start=1) if r == representative]

    def find(self, k):
        r = self.rep[k - 1]
        if r == 0:
            raise ValueError(f"Element {k} is not in X")
        return r

    def num_classes(self):
        return len(self.classes())

    def disjoint_union(self, other):
        if self.l != other.l:
            raise ValueError("Disjoint union needs presented sets with the same l")
        if set(self.X) & set(other.X):
            raise ValueError("Disjoint union needs disjoint subsets")
        rep = [a or b for a, b in zip(self.rep, other.rep)]
        return PresentedSet(self.l, rep)

    def __eq__(self, other):
        return isinstance(other, PresentedSet) and self.l == other.l and self.rep == other.rep

    def __hash__(self):
        return hash((self.l, self.rep))

    def __repr__(self):
        classes = [self.members(c) for c in self.classes()]
        return f"PresentedSet(l={self.l}, classes={classes})"


def glue(P, Q, mid, i, j):
    """
    Glues P and Q along `mid`: element a of mid identifies i[a] (in P) with j[a] (in Q).

    The result lives on {1..l_P + l_Q}, with Q shifted by l_P. Any element of a class
    can be used in i and j.
    """
    n_mid = len(mid) if not isinstance(mid, int) else mid
    if len(i) != n_mid or len(j) != n_mid:
        raise ValueError(f"Gluing maps must be total on the {n_mid} shared elements")

    l = P.l + Q.l
    rep = list(P.rep) + [r + P.l if r else 0 for r in Q.rep]
    uf = UnionFind(l + 1)
    for k, r in enumerate(rep, start=1):
        if r:
            uf.union(k, r)

    # Identifications along the shared elements
    for a, b in zip(i, j):
        uf.union(P.find(a), Q.find(b) + P.l)

    rep = [uf.find(k) if r else 0 for k, r in enumerate(rep, start=1)]
    return PresentedSet(l, rep)
