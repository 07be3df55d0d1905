import logging
from collections import defaultdict

from tropocat.bundle.report import compare2pandas
from tropocat.bundle.utils import LOGGER_NAME
from tropocat.complexes.tropical import GeneratorCell, assemble, build_complex, contraction_term
from tropocat.graphs.canonical import canonical_relabeling, certificate
from tropocat.graphs.enumeration import multigraphs
from tropocat.graphs.stable_graph import StableGraph

logger = logging.getLogger(LOGGER_NAME)


def gc_graphs(g, budget=None):
    """Connected loopless graphs with every valence >= 3 and first Betti number g, canonical."""
    found = {}
    for n_vertices in range(2, 2 * g - 1):
        n_edges = g + n_vertices - 1
        for edges in multigraphs(n_vertices, n_edges, [3] * n_vertices, allow_loops=False):
            if budget is not None:
                budget.check()
            G = StableGraph.from_edges([0] * n_vertices, edges)
            if G.is_connected():
                found.setdefault(certificate(G), canonical_relabeling(G)[0])
    return [found[cert] for cert in sorted(found, key=lambda c: (len(c[1]), c))]


def _gc_column(cell):
    G = cell.graph
    column = defaultdict(int)
    for i in range(G.num_edges):
        if G.is_loop(i):
            continue
        H, key, sign = contraction_term(G, i)
        if H.loops():
            continue
        column[key] += (-1) ** i * sign
    return dict(column)


def build_gc(g, workers=1, budget=None):
    """The genus-g part of the graph complex without tadpoles, graded by the number of edges."""
    if g < 2:
        raise ValueError("'g' must be >= 2")
    logger.info(f"=> [Graph complex]: Started. (genus={g})")
    graphs = gc_graphs(g, budget=budget)

    cells_by_degree = defaultdict(list)
    for G in graphs:
        cell = GeneratorCell(G, G.num_edges)
        if not cell.degenerate:
            cells_by_degree[cell.degree].append(cell)
    logger.info(f"\t- [INFO]: {len(graphs)} graphs, {sum(len(c) for c in cells_by_degree.values())} generators")

    return assemble(cells_by_degree, _gc_column, list(range(g + 1, 3 * g - 2)), name=f"gc_{g}",
                    workers=workers, budget=budget)


def gc_homology(g, degrees=None, workers=1, budget=None):
    """(edge degree, Betti) pairs."""
    return build_gc(g, workers=workers, budget=budget).homology(degrees, workers=workers, budget=budget)


def compare(g, workers=1, budget=None):
    """Per-degree Betti numbers of both pipelines, simplicial degree e-1 against edge degree e."""
    df_delta = build_complex(g, workers=workers, budget=budget).to_frame(workers=workers, budget=budget)
    df_gc = build_gc(g, workers=workers, budget=budget).to_frame(workers=workers, budget=budget)
    df = compare2pandas(df_delta, df_gc)
    if not df["equal"].all():
        logger.warning(f"[WARNING]: Pipelines disagree for genus {g}")
    return df
