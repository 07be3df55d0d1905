import logging
from collections import defaultdict

from tqdm import tqdm

from tropocat.bundle.utils import LOGGER_NAME, parallel_map
from tropocat.complexes.chain_complex import ChainComplex
from tropocat.complexes.linalg import SparseRationalMatrix
from tropocat.cospans.monoids import NAT_STABLE
from tropocat.graphs.canonical import canonical_form, canonical_relabeling, certificate, permutation_sign
from tropocat.graphs.enumeration import enumerate_Jg
from tropocat.graphs.stable_graph import contract_edges

logger = logging.getLogger(LOGGER_NAME)

AUGMENTATION = "empty"


class GeneratorCell:
    """
    A canonical graph with its canonical edge ordering as reference orientation. Without a
    graph it is the augmentation generator of degree -1.
    """

    def __init__(self, graph=None, degree=-1):
        self.degree = degree
        if graph is None:
            self.graph, self.automorphisms = None, None
            self.key, self.degenerate = AUGMENTATION, False
            return
        self.graph, self.automorphisms = canonical_form(graph)
        self.key = certificate(self.graph)
        self.degenerate = self.automorphisms.is_degenerate()

    def __repr__(self):
        return f"GeneratorCell(degree={self.degree}, degenerate={self.degenerate}, graph={self.graph!r})"


def contraction_term(G, e, monoid=NAT_STABLE):
    """
    Contracts edge e of a canonical graph and transports the induced edge ordering to the
    canonical one. Returns (H, key, sign).
    """
    H, _ = contract_edges(G, [e], monoid=monoid)
    _, edge_map, _ = canonical_relabeling(H)
    sign = permutation_sign(tuple(edge_map[k] for k in range(H.num_edges)))
    return H, certificate(H), sign


def assemble(cells_by_degree, column_fn, degrees, name, workers=1, budget=None):
    """
    Builds a ChainComplex from non-degenerate cells. `column_fn(cell)` returns the boundary
    of a cell as {key: coefficient}; keys outside the basis below are dropped.
    """
    bases = {p: [c.key for c in cells_by_degree.get(p, [])] for p in degrees}
    index = {p: {key: j for j, key in enumerate(bases[p])} for p in degrees}

    boundaries = {}
    for p in tqdm(degrees, desc=f"{name} boundaries", leave=False, disable=None):
        if p - 1 not in index:
            continue
        cells = cells_by_degree.get(p, [])
        columns = parallel_map(column_fn, cells, workers=workers, budget=budget)
        entries = []
        for j, column in enumerate(columns):
            for key, coef in column.items():
                if coef and key in index[p - 1]:
                    entries.append((index[p - 1][key], j, coef))
        boundaries[p] = SparseRationalMatrix(len(bases[p - 1]), len(bases[p]), entries)
    return ChainComplex(degrees, bases, boundaries, name=name)


def _delta_column(cell):
    G = cell.graph
    if G.num_edges == 1:
        return {AUGMENTATION: 1}
    column = defaultdict(int)
    for i in range(G.num_edges):
        _, key, sign = contraction_term(G, i)
        column[key] += (-1) ** i * sign
    return dict(column)


def build_complex(g, workers=1, budget=None):
    """
    Reduced rational cellular chains of Delta_g in degrees -1..3g-4: degree p is spanned by
    the graphs with p+1 edges and no odd edge symmetry, degree -1 by the augmentation.
    """
    logger.info(f"=> [Delta complex]: Started. (genus={g})")
    graphs = enumerate_Jg(g, workers=workers, budget=budget)

    cells_by_degree = defaultdict(list)
    n_degenerate = 0
    for G in graphs:
        cell = GeneratorCell(G, G.num_edges - 1)
        if cell.degenerate:
            n_degenerate += 1
            continue
        cells_by_degree[cell.degree].append(cell)

    cells_by_degree[-1] = [GeneratorCell()]
    logger.info(f"\t- [INFO]: {len(graphs)} graphs, {n_degenerate} with odd symmetries")

    complex_ = assemble(cells_by_degree, _delta_column, list(range(-1, 3 * g - 3)), name=f"delta_{g}",
                        workers=workers, budget=budget)
    logger.info(f"\t- [INFO]: dims={complex_.dims()}")
    return complex_


def reduced_homology(g, degrees=None, workers=1, budget=None):
    """(degree, Betti) pairs of the reduced rational homology of Delta_g."""
    return build_complex(g, workers=workers, budget=budget).homology(degrees, workers=workers, budget=budget)


def euler_characteristic(g, workers=1, budget=None):
    return build_complex(g, workers=workers, budget=budget).euler_characteristic()
