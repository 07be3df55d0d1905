from tropocat.cospans.finsets import FinSet, PresentedSet, UnionFind, glue
from tropocat.cospans.cospan import (Classification, Cospan, canonicalize, classify, compose, compose_reduced,
                                     disjoint_union, empty_cospan, from_partition, identity, partition, swap)
from tropocat.cospans.monoids import (NAT, NAT_STABLE, TRIVIAL, IntegerMonoid, MonoidGroupElement, NaturalMonoid,
                                      TrivialMonoid, TruncatedMonoid, WeightingMonoid, get_monoid)
from tropocat.cospans.weighted import (WeightedCospan, b1_of_class, closed_cospan, compose_weighted,
                                       euler_characteristic, glue_chain, identity_weighted, is_stable, pb_functor,
                                       pb_genus_functor, recombine, restrict, split_reduced_closed, surface_of_class,
                                       tensor)
