from collections import Counter

from tropocat.cospans.finsets import UnionFind
from tropocat.cospans.monoids import NAT_STABLE
from tropocat.errors import Disconnected


class HalfEdgeGraph:
    """
    A finite set X with an involution s and a retraction r. Fixed points of r are the
    vertices, the other elements are half-edges, and {h, s(h)} is an edge.
    """

    def __init__(self, s, r):
        s, r = tuple(int(x) for x in s), tuple(int(x) for x in r)
        if len(s) != len(r):
            raise ValueError("'s' and 'r' must be defined on the same carrier")

        # Check invariants
        n = len(s)
        for x in range(n):
            if not (0 <= s[x] < n and 0 <= r[x] < n):
                raise ValueError(f"Element {x} is mapped outside the carrier")
            if s[s[x]] != x:
                raise ValueError(f"s is not an involution at {x}")
            if r[r[x]] != r[x]:
                raise ValueError(f"r is not idempotent at {x}")
            if (s[x] == x) != (r[x] == x):
                raise ValueError(f"s(x) = x must hold exactly at the vertices (fails at {x})")

        self.s = s
        self.r = r
        self.vertices = [x for x in range(n) if r[x] == x]
        self.edges = [(h, s[h]) for h in range(n) if r[h] != h and h < s[h]]

    def __len__(self):
        return len(self.s)

    def __eq__(self, other):
        return isinstance(other, HalfEdgeGraph) and self.s == other.s and self.r == other.r

    def __hash__(self):
        return hash((self.s, self.r))

    def __repr__(self):
        return f"HalfEdgeGraph(s={list(self.s)}, r={list(self.r)})"


class StableGraph:
    """
    A half-edge graph with vertex weights.

    `weights` follow the order of `graph.vertices`; edges are indexed by their position in
    `graph.edges`. Stability is not enforced here, see `is_stable` and `check_J`.
    """

    def __init__(self, graph, weights):
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(graph.vertices):
            raise ValueError(f"Expected {len(graph.vertices)} weights (got {len(weights)})")
        self.graph = graph
        self.weights = weights
        self._vertex_index = {v: k for k, v in enumerate(graph.vertices)}

    @staticmethod
    def from_edges(weights, edges):
        """
        Builds the half-edge graph with vertices 0..V-1 followed by the two half-edges of
        each edge (first half-edge rooted at u, second at v).
        """
        n_vertices = len(weights)
        s = list(range(n_vertices))
        r = list(range(n_vertices))
        for k, (u, v) in enumerate(edges):
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"Edge {k} = ({u}, {v}) uses an unknown vertex")
            h = n_vertices + 2 * k
            s += [h + 1, h]
            r += [u, v]
        return StableGraph(HalfEdgeGraph(s, r), weights)

    @property
    def num_vertices(self):
        return len(self.weights)

    @property
    def num_edges(self):
        return len(self.graph.edges)

    def vertex_index(self, x):
        """Index (0..V-1) of the vertex a half-edge or vertex is rooted at."""
        return self._vertex_index[self.graph.r[x]]

    def edge_endpoints(self):
        """Edges as (u, v) vertex indices, in edge order."""
        return [(self.vertex_index(h), self.vertex_index(t)) for h, t in self.graph.edges]

    def edge_multiset(self):
        return Counter(tuple(sorted(e)) for e in self.edge_endpoints())

    def valence(self, v):
        return sum((u == v) + (w == v) for u, w in self.edge_endpoints())

    def valences(self):
        val = [0] * self.num_vertices
        for u, w in self.edge_endpoints():
            val[u] += 1
            val[w] += 1
        return val

    def loops(self, v=None):
        """Loop edge indices (at vertex v when given)."""
        return [k for k, (u, w) in enumerate(self.edge_endpoints()) if u == w and (v is None or u == v)]

    def is_loop(self, k):
        u, w = self.edge_endpoints()[k]
        return u == w

    def is_connected(self):
        if self.num_vertices == 0:
            return False
        uf = UnionFind(self.num_vertices)
        for u, w in self.edge_endpoints():
            uf.union(u, w)
        return len(uf.roots()) == 1

    def first_betti(self):
        return self.num_edges - self.num_vertices + 1

    def genus(self, monoid=NAT_STABLE):
        if not self.is_connected():
            raise Disconnected("Genus is only defined for connected graphs")
        return monoid.add(monoid.scale(monoid.alpha, self.first_betti()), monoid.sum(self.weights))

    def is_stable(self, monoid=NAT_STABLE):
        for w, val in zip(self.weights, self.valences()):
            if val == 1 and not monoid.is_in_A1(w):
                return False
            if val == 2 and w == monoid.zero:
                return False
        return True

    def check_J(self, monoid=NAT_STABLE):
        """Raises unless the graph is an object of J_g: connected, stable and with an edge."""
        if not self.is_connected():
            raise Disconnected("Graph is not connected")
        if not self.is_stable(monoid):
            raise ValueError("Graph is not stable")
        if self.num_edges == 0:
            raise ValueError("Graph has no edges")
        return self

    def to_json(self):
        return {
            "vertices": [{"id": k, "weight": w} for k, w in enumerate(self.weights)],
            "edges": [list(sorted(e)) for e in self.edge_endpoints()],
        }

    @staticmethod
    def from_json(d):
        try:
            vertices = sorted(d["vertices"], key=lambda x: int(x["id"]))
            ids = [int(x["id"]) for x in vertices]
            if ids != list(range(len(ids))):
                raise ValueError("Vertex ids must be 0..V-1")
            weights = [int(x["weight"]) for x in vertices]
            edges = [(int(u), int(v)) for u, v in d["edges"]]
        except KeyError as e:
            raise ValueError(f"Missing graph field: {e}")
        return StableGraph.from_edges(weights, edges)

    def __eq__(self, other):
        return isinstance(other, StableGraph) and self.graph == other.graph and self.weights == other.weights

    def __hash__(self):
        return hash((self.graph, self.weights))

    def __repr__(self):
        return f"StableGraph(weights={list(self.weights)}, edges={self.edge_endpoints()})"


def contract_edges(G, edges, monoid=NAT_STABLE):
    """
    Contracts a set of edges in one step. Each new vertex carries the weights merged into
    it plus alpha times the first Betti number of the contracted part.

    Returns (H, edge_map) with edge_map[k] the index in H of the surviving edge k of G.
    """
    edges = set(edges)
    endpoints = G.edge_endpoints()
    if any(not (0 <= k < len(endpoints)) for k in edges):
        raise ValueError(f"Unknown edge in {sorted(edges)}")

    uf = UnionFind(G.num_vertices)
    for k in edges:
        uf.union(*endpoints[k])

    # New vertices by smallest old index
    roots = uf.roots()
    new_index = {v: j for j, v in enumerate(roots)}
    groups = uf.groups()

    weights = []
    for v in roots:
        inner = sum(1 for k in edges if uf.find(endpoints[k][0]) == v)
        b1 = inner - len(groups[v]) + 1
        w = monoid.sum(G.weights[u] for u in groups[v])
        weights.append(monoid.add(w, monoid.scale(monoid.alpha, b1)))

    new_edges, edge_map = [], {}
    for k, (u, w) in enumerate(endpoints):
        if k in edges:
            continue
        edge_map[k] = len(new_edges)
        new_edges.append((new_index[uf.find(u)], new_index[uf.find(w)]))
    return StableGraph.from_edges(weights, new_edges), edge_map


def contract_edge(G, e, monoid=NAT_STABLE):
    return contract_edges(G, [e], monoid=monoid)[0]
