from tropocat.graphs.stable_graph import HalfEdgeGraph, StableGraph, contract_edge, contract_edges
from tropocat.graphs.canonical import (AutomorphismData, canonical_form, canonical_relabeling, certificate,
                                       is_degenerate, isomorphic, permutation_sign)
from tropocat.graphs.enumeration import STRATEGIES, enumerate_Jg, multigraphs
