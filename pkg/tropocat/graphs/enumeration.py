import logging
from collections import deque

from tqdm import tqdm

from tropocat.bundle.utils import LOGGER_NAME, parallel_map
from tropocat.cospans.monoids import NAT_STABLE
from tropocat.errors import UnsupportedMonoid
from tropocat.graphs.canonical import canonical_relabeling, certificate
from tropocat.graphs.stable_graph import StableGraph, contract_edge

logger = logging.getLogger(LOGGER_NAME)

STRATEGIES = ("closure", "filter")


def multigraphs(n_vertices, n_edges, min_degree, max_degree=None, allow_loops=True):
    """
    Yields edge lists (sorted, with repetitions) on vertices 0..n-1 with exactly `n_edges`
    edges and degrees inside [min_degree[v], max_degree[v]]. A loop adds 2 to the degree.
    """
    if n_vertices == 0:
        return
    pairs = [(i, j) for i in range(n_vertices) for j in range(i, n_vertices) if allow_loops or i < j]
    max_degree = max_degree or [2 * n_edges] * n_vertices

    # Vertices whose last pair is k
    last_pair = {}
    for k, (i, j) in enumerate(pairs):
        last_pair[i] = last_pair[j] = k
    closes = {}
    for v, k in last_pair.items():
        closes.setdefault(k, []).append(v)

    degree = [0] * n_vertices
    chosen = []

    def _grow(k, remaining):
        missing = sum(max(0, m - d) for m, d in zip(min_degree, degree))
        if 2 * remaining < missing:
            return
        if k == len(pairs):
            if remaining == 0:
                yield list(chosen)
            return

        i, j = pairs[k]
        added = 0
        while True:
            if all(degree[v] >= min_degree[v] for v in closes.get(k, [])):
                yield from _grow(k + 1, remaining - added)
            if added == remaining:
                break
            if i == j and degree[i] + 2 > max_degree[i]:
                break
            if i != j and (degree[i] + 1 > max_degree[i] or degree[j] + 1 > max_degree[j]):
                break
            chosen.append((i, j))
            degree[i] += 1
            degree[j] += 1
            added += 1

        # Undo this pair
        for _ in range(added):
            chosen.pop()
            degree[i] -= 1
            degree[j] -= 1

    yield from _grow(0, n_edges)


def weight_multisets(n_vertices, total_max):
    """Non-increasing weight tuples of length n with sum <= total_max."""

    def _grow(prefix, cap, budget):
        if len(prefix) == n_vertices:
            yield tuple(prefix)
            return
        for w in range(min(cap, budget), -1, -1):
            yield from _grow(prefix + [w], w, budget - w)

    yield from _grow([], total_max, total_max)


def _partition_graphs(g, n_vertices, weights):
    """Stable connected genus-g graphs for one (|V|, weight multiset) partition, by certificate."""
    n_edges = g - sum(weights) + n_vertices - 1
    if n_edges < 1 or n_edges > 3 * g - 3:
        return {}

    min_degree = [3 if w == 0 else 1 for w in weights]
    found = {}
    for edges in multigraphs(n_vertices, n_edges, min_degree):
        G = StableGraph.from_edges(weights, edges)
        if not G.is_connected() or not G.is_stable(NAT_STABLE):
            continue
        cert = certificate(G)
        if cert not in found:
            found[cert] = canonical_relabeling(G)[0]
    return found


def enumerate_by_filter(g, workers=1, budget=None):
    """Every multigraph for every vertex count and weight multiset, filtered."""
    partitions = [(n, w) for n in range(1, 2 * g - 1) for w in weight_multisets(n, g)]
    results = parallel_map(lambda p: _partition_graphs(g, *p), partitions, workers=workers, budget=budget)
    found = {}
    for part in results:
        found.update(part)
    return found


def enumerate_by_closure(g, budget=None):
    """Trivalent weight-0 graphs, closed under edge contraction."""
    n_vertices, n_edges = 2 * g - 2, 3 * g - 3
    found = {}
    for edges in multigraphs(n_vertices, n_edges, [3] * n_vertices, max_degree=[3] * n_vertices):
        G = StableGraph.from_edges([0] * n_vertices, edges)
        if G.is_connected():
            found.setdefault(certificate(G), canonical_relabeling(G)[0])

    queue = deque(found.values())
    with tqdm(desc=f"J_{g} closure", leave=False, disable=None) as pbar:
        while queue:
            if budget is not None:
                budget.check()
            G = queue.popleft()
            pbar.update(1)
            if G.num_edges < 2:
                continue
            for e in range(G.num_edges):
                H = contract_edge(G, e)
                cert = certificate(H)
                if cert not in found:
                    found[cert] = canonical_relabeling(H)[0]
                    queue.append(found[cert])
    return found


def enumerate_Jg(g, monoid=NAT_STABLE, strategy="closure", workers=1, budget=None):
    """Isomorphism classes of connected stable genus-g graphs with at least one edge, sorted canonically."""
    if getattr(monoid, "name", monoid) != NAT_STABLE.name:
        raise UnsupportedMonoid(f"Only '{NAT_STABLE.name}' graphs can be enumerated (got '{getattr(monoid, 'name', monoid)}')")
    if g < 2:
        raise ValueError("'g' must be >= 2")
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy '{strategy}'. Available: {', '.join(STRATEGIES)}")

    logger.info(f"=> [Enumerate]: Started. (genus={g}; strategy={strategy})")
    if strategy == "filter":
        found = enumerate_by_filter(g, workers=workers, budget=budget)
    else:
        found = enumerate_by_closure(g, budget=budget)

    graphs = [found[cert] for cert in sorted(found, key=lambda c: (len(c[1]), c))]
    logger.info(f"\t- [INFO]: {len(graphs)} isomorphism classes found")
    return graphs
