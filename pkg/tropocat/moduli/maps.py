from fractions import Fraction

from tropocat.bundle.utils import fraction_str
from tropocat.cospans.finsets import UnionFind
from tropocat.cospans.monoids import NAT_STABLE, is_natural
from tropocat.cospans.weighted import is_stable, restrict
from tropocat.errors import Disconnected, InvalidChain, InvalidSimplex, WrongMonoid
from tropocat.graphs.stable_graph import StableGraph, contract_edges
from tropocat.moduli.chains import FactorizationChain, check_coords
from tropocat.moduli.metric_graph import MetricGraph, stabilize


def _require_natural(monoid):
    if not is_natural(monoid):
        raise WrongMonoid(f"Metric graphs need N-labels (got '{monoid.name}')")


def phi(chain, t):
    """
    One vertex per apex class of each W_i (weighted by its label) and one edge per element
    of each M_i with length t_i / |M_i|, stabilized.
    """
    _require_natural(chain.monoid)
    genus = chain.validate()
    if genus < 2:
        raise InvalidChain(f"The composite has genus {genus} (expected >= 2)")
    t = check_coords(t, chain.n)

    offsets, weights = [], []
    for w in chain.cospans:
        offsets.append(len(weights))
        weights.extend(w.labels)

    edges, lengths = [], []
    for i in range(chain.n + 1):
        left, right = chain.cospans[i], chain.cospans[i + 1]
        size = chain.middle(i)
        for j in range(size):
            edges.append((offsets[i] + left.right_map[j], offsets[i + 1] + right.left_map[j]))
            lengths.append(t[i] / size)
    return stabilize(MetricGraph(StableGraph.from_edges(weights, edges), lengths), monoid=chain.monoid)


class ContractionSimplex:
    """
    A chain G_0 -> G_1 -> ... -> G_n of J_g morphisms. `steps[k]` lists the edges of G_k
    collapsed to reach G_{k+1} (an empty step is an isomorphism).
    """

    def __init__(self, G0, steps=(), monoid=None):
        self.G0 = G0
        self.steps = [tuple(sorted(set(int(e) for e in step))) for step in steps]
        self.monoid = monoid or NAT_STABLE
        self._graphs = None
        self._survivors = None

    @property
    def n(self):
        return len(self.steps)

    def _build(self):
        if self._graphs is not None:
            return
        graphs = [self.G0]
        position = {e: e for e in range(self.G0.num_edges)}  # original edge -> index in current graph
        survivors = [dict(position)]
        for k, step in enumerate(self.steps):
            G = graphs[-1]
            if any(not (0 <= e < G.num_edges) for e in step):
                raise InvalidSimplex(f"Step {k} collapses an unknown edge of G_{k}")
            H, edge_map = contract_edges(G, step, monoid=self.monoid)
            position = {e: edge_map[p] for e, p in position.items() if p in edge_map}
            graphs.append(H)
            survivors.append(dict(position))
        self._graphs, self._survivors = graphs, survivors

    def graphs(self):
        self._build()
        return list(self._graphs)

    def survivors(self, i):
        """Map from edges of G_0 still alive in G_i to their index there."""
        self._build()
        return self._survivors[i]

    def validate(self):
        for k, G in enumerate(self.graphs()):
            try:
                G.check_J(self.monoid)
            except (ValueError, Disconnected) as e:
                raise InvalidSimplex(f"G_{k} is not an object of J_g: {e}")
        return self

    def face(self, i):
        if not (0 <= i <= self.n):
            raise InvalidSimplex(f"Face index {i} out of range 0..{self.n}")
        if self.n == 0:
            raise InvalidSimplex("A 0-simplex has no faces")

        graphs = self.graphs()
        if i == 0:
            return ContractionSimplex(graphs[1], self.steps[1:], monoid=self.monoid)
        if i == self.n:
            return ContractionSimplex(self.G0, self.steps[:-1], monoid=self.monoid)

        # Merge steps i-1 and i into one collapse of G_{i-1}
        _, edge_map = contract_edges(graphs[i - 1], self.steps[i - 1], monoid=self.monoid)
        preimage = {p: e for e, p in edge_map.items()}
        merged = set(self.steps[i - 1]) | {preimage[p] for p in self.steps[i]}
        steps = self.steps[:i - 1] + [tuple(sorted(merged))] + self.steps[i + 1:]
        return ContractionSimplex(self.G0, steps, monoid=self.monoid)

    def to_json(self):
        return {"graph": self.G0.to_json(), "steps": [list(step) for step in self.steps]}

    @staticmethod
    def from_json(d):
        if "graph" not in d:
            raise InvalidSimplex("Simplex JSON needs a 'graph' field")
        return ContractionSimplex(StableGraph.from_json(d["graph"]), d.get("steps", []))

    def __repr__(self):
        return f"ContractionSimplex(G0={self.G0!r}, steps={self.steps})"


def phi2(simplex, t):
    """d(e) = sum of t_i / |E(G_i)| over the levels i where e is still alive."""
    simplex.validate()
    t = check_coords(t, simplex.n, error=InvalidSimplex)
    graphs = simplex.graphs()

    lengths = [Fraction(0)] * simplex.G0.num_edges
    for i, G in enumerate(graphs):
        for e in simplex.survivors(i):
            lengths[e] += t[i] / G.num_edges
    return stabilize(MetricGraph(simplex.G0, lengths), monoid=simplex.monoid)


def phi3(simplex, d_last, t=None):
    """Pulls a metric on G_n back to G_0 (collapsed edges get length 0) and stabilizes."""
    simplex.validate()
    if t is not None:
        check_coords(t, simplex.n, error=InvalidSimplex)
    G_last = simplex.graphs()[-1]
    d_last = check_coords(d_last, G_last.num_edges - 1, error=InvalidSimplex)

    alive = simplex.survivors(simplex.n)
    lengths = [d_last[alive[e]] if e in alive else Fraction(0) for e in range(simplex.G0.num_edges)]
    return stabilize(MetricGraph(simplex.G0, lengths), monoid=simplex.monoid)


class SuspendedPoint:
    """A point [(G, d), a, b]: a metric graph of volume 1 - a - b with collars a and b."""

    def __init__(self, point, a, b, genus):
        if a < 0 or b < 0 or a + b > 1:
            raise ValueError(f"Invalid suspension coordinates a={a}, b={b}")
        self.point = point
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.genus = genus

    def encode(self):
        return self.point.certificate(), self.a, self.b

    def to_json(self):
        return {"graph": self.point.to_json(), "a": fraction_str(self.a), "b": fraction_str(self.b),
                "genus": self.genus}

    def __eq__(self, other):
        return isinstance(other, SuspendedPoint) and self.encode() == other.encode()

    def __hash__(self):
        return hash(self.encode())

    def __repr__(self):
        return f"SuspendedPoint(a={fraction_str(self.a)}, b={fraction_str(self.b)}, point={self.point!r})"


def closed_components(chain):
    """
    Composite components of a nerve chain that touch neither end. Yields, per component,
    the pair (first, last) of crossed middle objects (None when it crosses none) and its
    classes as (k, class) pairs, k indexing chain.cospans.
    """
    offsets, owner = [], []
    for k, w in enumerate(chain.cospans):
        offsets.append(len(owner))
        owner.extend((k, c) for c in range(w.num_classes))

    uf = UnionFind(len(owner))
    for k in range(len(chain.cospans) - 1):
        left, right = chain.cospans[k], chain.cospans[k + 1]
        for j in range(len(left.right)):
            uf.union(offsets[k] + left.right_map[j], offsets[k + 1] + right.left_map[j])

    # Components touching M_0 or M_n
    first, last = chain.cospans[0], chain.cospans[-1]
    open_roots = {uf.find(offsets[0] + c) for c in first.left_map}
    open_roots |= {uf.find(offsets[-1] + c) for c in last.right_map}

    for root, members in sorted(uf.groups().items()):
        if root in open_roots:
            continue
        classes = [owner[x] for x in members]
        crossed = set()
        for k, c in classes:
            w = chain.cospans[k]
            if c in w.left_map:
                crossed.add(k)  # W_{k+1} sits between M_k and M_{k+1}
            if c in w.right_map:
                crossed.add(k + 1)
        span = (min(crossed), max(crossed)) if crossed else None
        yield span, classes


def restricted_chain(chain, span, classes):
    """The factorization chain of one closed component crossing M_a..M_b."""
    a, b = span
    members = set(classes)
    cospans = []
    for k in range(a - 1, b + 1):
        w = chain.cospans[k]
        left = [j for j, c in enumerate(w.left_map) if (k, c) in members] if k >= a else []
        right = [j for j, c in enumerate(w.right_map) if (k, c) in members] if k + 1 <= b else []
        cospans.append(restrict(w, left, right))
    return FactorizationChain(cospans)


def mu(chain, t):
    """
    The suspended points of every closed component of genus >= 2, sorted by encoding.

    Basepoints (no crossed middle object, a = 0, b = 0 or a + b = 1) are the unit of the
    multiset and are left out.
    """
    t = check_coords(t, chain.n)
    if not chain.cospans:
        return []
    monoid = chain.cospans[0].monoid
    _require_natural(monoid)
    if not all(is_stable(w) for w in chain.cospans):
        raise InvalidChain("Every cospan of the chain must be stable")

    points = []
    for span, classes in closed_components(chain):
        if span is None:
            continue
        restricted = restricted_chain(chain, span, classes)
        genus = restricted.validate()
        if genus < 2:
            continue

        lo, hi = span
        a = sum(t[:lo], Fraction(0))
        b = sum(t[hi + 1:], Fraction(0))
        if a == 0 or b == 0 or a + b == 1:
            continue
        coords = [x / (1 - a - b) for x in t[lo:hi + 1]]
        points.append(SuspendedPoint(phi(restricted, coords), a, b, genus))
    return sorted(points, key=lambda p: p.encode())
