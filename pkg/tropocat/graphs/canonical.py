import functools
from collections import defaultdict

from tropocat.graphs.stable_graph import StableGraph


def _rank(keys):
    """Replaces each key by its position among the sorted distinct keys."""
    order = {k: j for j, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(colors, incidence):
    """Iterated refinement by the multiset of (neighbour colour, edge label, loop flag)."""
    while True:
        keys = []
        for v, c in enumerate(colors):
            nbrs = tuple(sorted((colors[w], label, w == v) for w, label in incidence[v]))
            keys.append((c, nbrs))
        new = _rank(keys)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _certificate(perm, vertex_colors, edges):
    pos = {v: j for j, v in enumerate(perm)}
    cert_vertices = tuple(vertex_colors[v] for v in perm)
    cert_edges = tuple(sorted((min(pos[u], pos[w]), max(pos[u], pos[w]), label) for u, w, label in edges))
    return cert_vertices, cert_edges


@functools.lru_cache(maxsize=65536)
def canonical_labeling(vertex_colors, edges):
    """
    Canonical labelling of a multigraph with coloured vertices and labelled edges.

    `vertex_colors` is a tuple indexed by vertex, `edges` a sorted tuple of (u, v, label).
    Returns (certificate, perm, automorphisms): perm[j] is the vertex placed at position j,
    and automorphisms lists every vertex permutation (as a tuple old -> old) preserving
    colours and the labelled edge multiset.
    """
    n = len(vertex_colors)
    incidence = defaultdict(list)
    for u, w, label in edges:
        incidence[u].append((w, label))
        if u != w:
            incidence[w].append((u, label))

    leaves = []

    def _search(colors):
        colors = _refine(colors, incidence)
        cells = defaultdict(list)
        for v, c in enumerate(colors):
            cells[c].append(v)

        # Target cell: first non-singleton one
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            perm = tuple(sorted(range(n), key=lambda v: colors[v]))
            leaves.append((_certificate(perm, vertex_colors, edges), perm))
            return

        # Individualize each vertex of the cell
        for v in target:
            _search(_rank([(c, 0 if u == v else 1) for u, c in enumerate(colors)]))

    _search(_rank(list(vertex_colors)))

    best_cert, best_perm = min(leaves)
    automorphisms = []
    for cert, perm in leaves:
        if cert == best_cert:
            sigma = [0] * n
            for a, b in zip(best_perm, perm):
                sigma[a] = b
            automorphisms.append(tuple(sigma))
    return best_cert, best_perm, tuple(sorted(set(automorphisms)))


def _labeling_input(G, lengths=None):
    endpoints = G.edge_endpoints()
    labels = lengths if lengths is not None else [0] * len(endpoints)
    edges = tuple(sorted((min(u, w), max(u, w), label) for (u, w), label in zip(endpoints, labels)))
    return tuple(G.weights), edges


def certificate(G, lengths=None):
    return canonical_labeling(*_labeling_input(G, lengths))[0]


def isomorphic(G, H):
    return certificate(G) == certificate(H)


class AutomorphismData:
    """
    Automorphisms of a canonical stable graph as permutations of its carrier X.

    Generators are the lifts of every vertex automorphism, the swaps of consecutive parallel
    edges and the flips of loops. `edge_perms[k][e]` is the image of edge e under generator
    k, and `parities[k]` the sign of that edge permutation.
    """

    def __init__(self, graph, generators):
        self.graph = graph
        self.generators = [tuple(g) for g in generators]
        self.edge_perms = [self.edge_permutation(g) for g in self.generators]
        self.parities = [permutation_sign(p) for p in self.edge_perms]

    def edge_permutation(self, perm):
        edge_of = {}
        for k, (h, t) in enumerate(self.graph.graph.edges):
            edge_of[h] = edge_of[t] = k
        return tuple(edge_of[perm[h]] for h, _ in self.graph.graph.edges)

    def is_degenerate(self):
        return any(p < 0 for p in self.parities)

    def verify(self):
        """Each generator commutes with s and r and preserves weights."""
        s, r = self.graph.graph.s, self.graph.graph.r
        for perm in self.generators:
            for x in range(len(s)):
                if perm[s[x]] != s[perm[x]] or perm[r[x]] != r[perm[x]]:
                    return False
            for v in self.graph.graph.vertices:
                if self.graph.weights[self.graph.vertex_index(perm[v])] != self.graph.weights[self.graph.vertex_index(v)]:
                    return False
        return True


def permutation_sign(perm):
    """Sign of a permutation given as a tuple of images."""
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _lift(Gc, sigma):
    """Lifts a vertex automorphism of a canonical graph (sorted edges) to its carrier."""
    n = Gc.num_vertices
    endpoints = Gc.edge_endpoints()
    copies = defaultdict(list)
    for k, (u, w) in enumerate(endpoints):
        copies[(u, w)].append(k)

    perm = list(range(n + 2 * len(endpoints)))
    for v in range(n):
        perm[v] = sigma[v]
    for (u, w), ks in copies.items():
        a, b = sigma[u], sigma[w]
        targets = copies[(min(a, b), max(a, b))]
        for k, k2 in zip(ks, targets):
            h, h2 = n + 2 * k, n + 2 * k2
            if a <= b:
                perm[h], perm[h + 1] = h2, h2 + 1
            else:
                perm[h], perm[h + 1] = h2 + 1, h2
    return perm


def _automorphism_generators(Gc, vertex_automorphisms):
    n = Gc.num_vertices
    endpoints = Gc.edge_endpoints()
    identity = list(range(n + 2 * len(endpoints)))
    generators = [_lift(Gc, sigma) for sigma in vertex_automorphisms]

    # Parallel swaps and loop flips
    for k in range(len(endpoints) - 1):
        if endpoints[k] == endpoints[k + 1]:
            perm = list(identity)
            h, h2 = n + 2 * k, n + 2 * (k + 1)
            perm[h], perm[h + 1], perm[h2], perm[h2 + 1] = h2, h2 + 1, h, h + 1
            generators.append(perm)
    for k, (u, w) in enumerate(endpoints):
        if u == w:
            perm = list(identity)
            h = n + 2 * k
            perm[h], perm[h + 1] = h + 1, h
            generators.append(perm)
    return generators


def canonical_relabeling(G, lengths=None):
    """
    Returns (Gc, edge_map, lengths_c): the canonical graph, the map from edges of G to
    edges of Gc and the lengths carried over. Parallel copies are matched in edge order.
    """
    vertex_colors, edges = _labeling_input(G, lengths)
    _, perm, _ = canonical_labeling(vertex_colors, edges)
    pos = {v: j for j, v in enumerate(perm)}

    endpoints = G.edge_endpoints()
    labels = lengths if lengths is not None else [0] * len(endpoints)
    relabeled = [(min(pos[u], pos[w]), max(pos[u], pos[w]), label) for (u, w), label in zip(endpoints, labels)]
    order = sorted(range(len(relabeled)), key=lambda k: (relabeled[k], k))
    edge_map = {k: j for j, k in enumerate(order)}

    Gc = StableGraph.from_edges([G.weights[v] for v in perm], [relabeled[k][:2] for k in order])
    lengths_c = [relabeled[k][2] for k in order] if lengths is not None else None
    return Gc, edge_map, lengths_c


def canonical_form(G):
    """Canonical representative of the isomorphism class of G, with its AutomorphismData."""
    Gc, _, _ = canonical_relabeling(G)
    _, _, vertex_automorphisms = canonical_labeling(*_labeling_input(Gc))
    return Gc, AutomorphismData(Gc, _automorphism_generators(Gc, vertex_automorphisms))


def is_degenerate(G):
    """True iff some automorphism of G permutes its edges oddly."""
    _, data = canonical_form(G)
    return data.is_degenerate()
