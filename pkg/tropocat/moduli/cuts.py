from fractions import Fraction

from tropocat.cospans.finsets import UnionFind
from tropocat.cospans.monoids import NAT_STABLE
from tropocat.cospans.weighted import WeightedCospan
from tropocat.errors import EmptyCut, NotNested
from tropocat.moduli.chains import FactorizationChain, check_coords
from tropocat.moduli.metric_graph import MetricGraph


class CutSystem:
    """
    Nested cuts M_0, ..., M_{n_cuts-1} drawn on a graph, purely combinatorially.

    Regions are numbered 0..n_cuts and cut i separates region i from region i+1.
    `vertex_levels[v]` is the region of vertex v and `edge_marks[e]` lists the cut points
    met when walking edge e from its first endpoint, as (level, index) pairs. The indices of
    each level enumerate the points of that cut.
    """

    def __init__(self, n_cuts, vertex_levels, edge_marks):
        if n_cuts < 1:
            raise EmptyCut("At least one cut is needed")
        self.n_cuts = int(n_cuts)
        self.vertex_levels = tuple(int(r) for r in vertex_levels)
        self.edge_marks = tuple(tuple((int(i), int(k)) for i, k in marks) for marks in edge_marks)

    def cut_sizes(self):
        sizes = [0] * self.n_cuts
        for marks in self.edge_marks:
            for i, _ in marks:
                if 0 <= i < self.n_cuts:
                    sizes[i] += 1
        return sizes

    def segment_regions(self, G, e):
        """Regions of the segments of edge e (one more than its marks)."""
        u, v = G.edge_endpoints()[e]
        region = self.vertex_levels[u]
        regions = [region]
        for i, _ in self.edge_marks[e]:
            if region == i:
                region = i + 1
            elif region == i + 1:
                region = i
            else:
                raise NotNested(f"Edge {e} jumps from region {region} across cut {i}")
            regions.append(region)
        if region != self.vertex_levels[v]:
            raise NotNested(f"Edge {e} ends in region {region} but its endpoint lies in region {self.vertex_levels[v]}")
        return regions

    def validate(self, G):
        if len(self.vertex_levels) != G.num_vertices:
            raise ValueError(f"Expected {G.num_vertices} vertex levels (got {len(self.vertex_levels)})")
        if len(self.edge_marks) != G.num_edges:
            raise ValueError(f"Expected {G.num_edges} mark lists (got {len(self.edge_marks)})")
        if any(not (0 <= r <= self.n_cuts) for r in self.vertex_levels):
            raise NotNested(f"Vertex levels must lie in 0..{self.n_cuts}")

        # Every level nonempty and indexed 0..k-1
        indices = [[] for _ in range(self.n_cuts)]
        for marks in self.edge_marks:
            for i, k in marks:
                if not (0 <= i < self.n_cuts):
                    raise NotNested(f"Unknown cut level {i}")
                indices[i].append(k)
        for i, idx in enumerate(indices):
            if not idx:
                raise EmptyCut(f"Cut {i} has no points")
            if sorted(idx) != list(range(len(idx))):
                raise ValueError(f"Points of cut {i} must be indexed 0..{len(idx) - 1}")

        for e in range(G.num_edges):
            self.segment_regions(G, e)
        return self

    def __repr__(self):
        return f"CutSystem(n_cuts={self.n_cuts}, vertex_levels={list(self.vertex_levels)}, edge_marks={list(self.edge_marks)})"


def cut_to_factorization(G, cuts, monoid=NAT_STABLE):
    """
    Cuts G along every level and returns the chain W_0, ..., W_{n_cuts}: one weighted cospan
    per region, one class per connected piece, labelled by the genus of that piece.
    """
    cuts.validate(G)
    n_vertices = G.num_vertices
    endpoints = G.edge_endpoints()

    # Elements: vertices, then the segments of every edge
    first_segment, regions = [], []
    for e in range(G.num_edges):
        first_segment.append(n_vertices + len(regions))
        regions.extend(cuts.segment_regions(G, e))
    region_of = list(cuts.vertex_levels) + regions

    uf = UnionFind(n_vertices + len(regions))
    for e, (u, v) in enumerate(endpoints):
        uf.union(u, first_segment[e])
        uf.union(v, first_segment[e] + len(cuts.edge_marks[e]))

    # Each mark: the segment before it and the segment after it
    sizes = cuts.cut_sizes()
    lower = [[None] * s for s in sizes]
    upper = [[None] * s for s in sizes]
    boundary = {}
    for e, marks in enumerate(cuts.edge_marks):
        for j, (i, k) in enumerate(marks):
            before, after = first_segment[e] + j, first_segment[e] + j + 1
            low, high = (before, after) if region_of[before] == i else (after, before)
            lower[i][k], upper[i][k] = uf.find(low), uf.find(high)
            boundary[lower[i][k]] = boundary.get(lower[i][k], 0) + 1
            boundary[upper[i][k]] = boundary.get(upper[i][k], 0) + 1

    # Pieces per region with their genus
    groups = uf.groups()
    pieces = [[] for _ in range(cuts.n_cuts + 1)]
    labels = {}
    for root, members in sorted(groups.items()):
        pieces[region_of[root]].append(root)
        n_vert = sum(1 for x in members if x < n_vertices)
        n_seg = len(members) - n_vert
        b1 = n_seg - n_vert - boundary.get(root, 0) + 1
        weight = monoid.sum(G.weights[x] for x in members if x < n_vertices)
        labels[root] = monoid.add(weight, monoid.scale(monoid.alpha, b1))

    cospans = []
    for level, roots in enumerate(pieces):
        index = {root: j for j, root in enumerate(roots)}
        left_map = [index[x] for x in upper[level - 1]] if level > 0 else []
        right_map = [index[x] for x in lower[level]] if level < cuts.n_cuts else []
        cospans.append(WeightedCospan.from_maps(len(left_map), len(right_map), left_map, right_map,
                                                [labels[root] for root in roots], monoid=monoid))
    return FactorizationChain(cospans)


def induced_metric(G, cuts, t):
    """Edge lengths: each point of cut i on an edge contributes t_i / |M_i|."""
    cuts.validate(G)
    t = check_coords(t, cuts.n_cuts - 1, error=ValueError)
    sizes = cuts.cut_sizes()
    lengths = [sum((t[i] / sizes[i] for i, _ in marks), Fraction(0)) for marks in cuts.edge_marks]
    return MetricGraph(G, lengths)


def _walk(rng, start, end, n_cuts, bounce=0.25):
    """Crossed levels along a random walk between two regions, with occasional bounces."""
    levels, region = [], start
    while True:
        if rng.random() < bounce:
            step = int(rng.choice([-1, 1]))
            if 0 <= region + step <= n_cuts:
                crossed = min(region, region + step)
                levels += [crossed, crossed]
        if region == end:
            return levels
        step = 1 if end > region else -1
        levels.append(min(region, region + step))
        region += step


def random_cuts(rng, G, n_cuts):
    """Random nested cuts with every level nonempty."""
    if n_cuts < 1:
        raise EmptyCut("At least one cut is needed")
    vertex_levels = [int(r) for r in rng.integers(0, n_cuts + 1, size=G.num_vertices)]
    edge_levels = [_walk(rng, vertex_levels[u], vertex_levels[v], n_cuts) for u, v in G.edge_endpoints()]

    # Cover missing levels with a tour on edge 0
    used = {i for levels in edge_levels for i in levels}
    if len(used) < n_cuts:
        r = vertex_levels[G.edge_endpoints()[0][0]]
        tour = list(range(r, n_cuts)) + list(range(n_cuts - 1, -1, -1)) + list(range(0, r))
        edge_levels[0] = tour + edge_levels[0]

    # Random point indices per level
    counts = [0] * n_cuts
    for levels in edge_levels:
        for i in levels:
            counts[i] += 1
    perms = [[int(x) for x in rng.permutation(c)] for c in counts]
    seen = [0] * n_cuts
    edge_marks = []
    for levels in edge_levels:
        marks = []
        for i in levels:
            marks.append((i, perms[i][seen[i]]))
            seen[i] += 1
        edge_marks.append(marks)
    return CutSystem(n_cuts, vertex_levels, edge_marks)
