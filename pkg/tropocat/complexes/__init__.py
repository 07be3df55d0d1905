from tropocat.complexes.linalg import (SparseRationalMatrix, betti, certify_profile, nullity, rank, rank_modp,
                                       rank_profile, rank_profile_modp)
from tropocat.complexes.chain_complex import ChainComplex
from tropocat.complexes.tropical import GeneratorCell, build_complex, euler_characteristic, reduced_homology
from tropocat.complexes.graph_complex import build_gc, compare, gc_graphs, gc_homology
