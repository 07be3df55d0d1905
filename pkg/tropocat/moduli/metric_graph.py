from fractions import Fraction

from tropocat.bundle.utils import fraction_str, parse_fraction
from tropocat.cospans.monoids import NAT_STABLE
from tropocat.errors import UnstableResidue
from tropocat.graphs.canonical import canonical_relabeling, certificate
from tropocat.graphs.stable_graph import StableGraph, contract_edges


class MetricGraph:
    """A stable graph with exact nonnegative edge lengths (in edge order)."""

    def __init__(self, graph, lengths):
        lengths = tuple(parse_fraction(x) for x in lengths)
        if len(lengths) != graph.num_edges:
            raise ValueError(f"Expected {graph.num_edges} lengths (got {len(lengths)})")
        if any(x < 0 for x in lengths):
            raise ValueError("Edge lengths must be nonnegative")
        self.graph = graph
        self.lengths = lengths

    @property
    def total(self):
        return sum(self.lengths, Fraction(0))

    def genus(self, monoid=NAT_STABLE):
        return self.graph.genus(monoid)

    def certificate(self):
        return certificate(self.graph, self.lengths)

    def canonical(self):
        Gc, _, lengths = canonical_relabeling(self.graph, self.lengths)
        return MetricGraph(Gc, lengths)

    def is_canonical_representative(self, monoid=NAT_STABLE):
        """All lengths positive, total 1, stable and nothing left to smooth."""
        if self.total != 1 or any(x == 0 for x in self.lengths):
            return False
        if not self.graph.is_connected() or not self.graph.is_stable(monoid):
            return False
        return self.graph.num_edges > 0

    def to_json(self):
        d = self.graph.to_json()
        d["lengths"] = [fraction_str(x) for x in self.lengths]
        return d

    @staticmethod
    def from_json(d):
        if "lengths" not in d:
            raise ValueError("Metric graph JSON needs a 'lengths' field")
        return MetricGraph(StableGraph.from_json(d), [parse_fraction(x) for x in d["lengths"]])

    def __eq__(self, other):
        return isinstance(other, MetricGraph) and self.graph == other.graph and self.lengths == other.lengths

    def __hash__(self):
        return hash((self.graph, self.lengths))

    def __repr__(self):
        lengths = [fraction_str(x) for x in self.lengths]
        return f"MetricGraph(weights={list(self.graph.weights)}, edges={self.graph.edge_endpoints()}, lengths={lengths})"


def _smooth_vertex(G, lengths, v):
    """Removes a valence-2 vertex v, merging its two edges into one."""
    endpoints = G.edge_endpoints()
    incident = [k for k, (a, b) in enumerate(endpoints) if v in (a, b)]
    if len(incident) == 1:
        raise UnstableResidue("Smoothing a weight-0 vertex on a loop leaves a bare cycle")

    e1, e2 = incident
    a = endpoints[e1][0] if endpoints[e1][1] == v else endpoints[e1][1]
    b = endpoints[e2][0] if endpoints[e2][1] == v else endpoints[e2][1]

    # Reindex vertices without v
    new_index = {u: (u if u < v else u - 1) for u in range(G.num_vertices) if u != v}
    weights = [w for u, w in enumerate(G.weights) if u != v]
    edges, new_lengths = [], []
    for k, (x, y) in enumerate(endpoints):
        if k in (e1, e2):
            continue
        edges.append((new_index[x], new_index[y]))
        new_lengths.append(lengths[k])
    edges.append((new_index[a], new_index[b]))
    new_lengths.append(lengths[e1] + lengths[e2])
    return StableGraph.from_edges(weights, edges), new_lengths


def stabilize(m, monoid=NAT_STABLE):
    """
    Contracts zero-length edges, smooths valence-2 weight-0 vertices, normalizes the total
    length to 1 and returns the canonical representative.
    """
    G, lengths = m.graph, list(m.lengths)

    # Zero-length edges
    zero = [k for k, x in enumerate(lengths) if x == 0]
    if zero:
        G, edge_map = contract_edges(G, zero, monoid=monoid)
        kept = sorted(edge_map, key=edge_map.get)
        lengths = [lengths[k] for k in kept]

    # Smoothing
    while True:
        valences = G.valences()
        v = next((u for u, (w, val) in enumerate(zip(G.weights, valences)) if val == 2 and w == monoid.zero), None)
        if v is None:
            break
        G, lengths = _smooth_vertex(G, lengths, v)

    # Check residue
    if G.num_edges == 0:
        raise UnstableResidue("Nothing is left after contracting the zero-length edges")
    if not G.is_connected() or not G.is_stable(monoid):
        raise UnstableResidue(f"Residue is not a stable graph: {G!r}")

    total = sum(lengths, Fraction(0))
    return MetricGraph(G, [x / total for x in lengths]).canonical()


def delta_point_eq(p, q):
    """Isometry of metric graphs (weights and lengths preserved)."""
    return p.certificate() == q.certificate()
