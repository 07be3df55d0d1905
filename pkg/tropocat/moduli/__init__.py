from tropocat.moduli.metric_graph import MetricGraph, delta_point_eq, stabilize
from tropocat.moduli.chains import FactorizationChain, NerveChain, chain_sum, check_coords, face_coords
from tropocat.moduli.cuts import CutSystem, cut_to_factorization, induced_metric, random_cuts
from tropocat.moduli.maps import ContractionSimplex, SuspendedPoint, mu, phi, phi2, phi3
