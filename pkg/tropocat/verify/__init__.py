from tropocat.verify.config import Report, TrialConfig
from tropocat.verify.axioms import (check_associativity, check_axiom_decomposition, check_axiom_product,
                                    check_euler_additivity, check_pb_functor, check_surgery_diagrams, replay,
                                    run_all, surgery_data)
