import functools
import itertools
import logging

import numpy as np
from tqdm import tqdm

from tropocat.bundle.utils import LOGGER_NAME, parallel_map
from tropocat.cospans.cospan import Cospan, swap
from tropocat.cospans.finsets import FinSet
from tropocat.cospans.monoids import get_monoid, is_natural
from tropocat.cospans.weighted import (WeightedCospan, closed_cospan, compose_weighted, euler_characteristic,
                                       identity_weighted, is_stable, pb_functor, pb_genus_functor, recombine,
                                       restrict, split_reduced_closed, tensor)
from tropocat.errors import CounterexampleFound, WrongMonoid
from tropocat.verify import sampling
from tropocat.verify.config import Report

logger = logging.getLogger(LOGGER_NAME)

CHECK_IDS = {"associativity": 1, "decomposition": 2, "product": 3, "surgery": 4, "euler_additivity": 5,
             "pb_functor": 6}


# Surgery data ##########################################################################

def surgery_data(monoid):
    """O = a point, T: 0 -> O labelled alpha, P: O -> O + O labelled 0."""
    O = FinSet(1)
    T = WeightedCospan.from_maps(0, 1, [], [0], [monoid.alpha], monoid=monoid)
    P = WeightedCospan.from_maps(1, 2, [0], [0, 0], [monoid.zero], monoid=monoid)
    return O, T, P


def swap_weighted(A, B, monoid):
    c = swap(A, B)
    return WeightedCospan(c, [monoid.zero] * len(c.classes()), monoid=monoid)


def ids(n, monoid):
    return identity_weighted(FinSet(n), monoid=monoid)


def surgery_paths(diagram, w):
    """Both composites of one surgery square for a connected w. A and B are single points."""
    monoid = w.monoid
    _, _, P = surgery_data(monoid)
    id_O = ids(1, monoid)

    if diagram == 1:
        # U: A + M -> B + N
        m, n = len(w.left) - 1, len(w.right) - 1
        lhs = compose_weighted(tensor(P, ids(m, monoid)), tensor(id_O, w))
        rhs = compose_weighted(w, tensor(P, ids(n, monoid)))
    elif diagram == 2:
        # V: A + B + M -> N
        m = len(w.left) - 2
        lhs = compose_weighted(tensor(P, ids(1 + m, monoid)), tensor(id_O, w))
        step = compose_weighted(tensor(tensor(ids(1, monoid), P), ids(m, monoid)),
                                tensor(swap_weighted(1, 1, monoid), ids(1 + m, monoid)))
        rhs = compose_weighted(step, tensor(id_O, w))
    elif diagram == 3:
        # W: M -> A + B + N
        n = len(w.right) - 2
        step = compose_weighted(tensor(tensor(ids(1, monoid), P), ids(n, monoid)),
                                tensor(swap_weighted(1, 1, monoid), ids(1 + n, monoid)))
        lhs = compose_weighted(w, step)
        rhs = compose_weighted(w, tensor(P, ids(1 + n, monoid)))
    else:
        raise ValueError(f"Unknown surgery diagram: {diagram}")
    return lhs, rhs


def surgery_shape_ok(diagram, w):
    if not w.is_connected():
        return False
    if diagram == 1:
        return len(w.left) >= 1 and len(w.right) >= 1
    elif diagram == 2:
        return len(w.left) >= 2
    return len(w.right) >= 2


# Single cases (each returns an error message or None) ##################################

def case_associativity(w1, w2, w3):
    w12 = compose_weighted(w1, w2)
    lhs = compose_weighted(w12, w3)
    rhs = compose_weighted(w1, compose_weighted(w2, w3))
    if lhs != rhs:
        return f"(w1*w2)*w3 = {lhs!r} but w1*(w2*w3) = {rhs!r}"

    # Identities
    monoid = w1.monoid
    if compose_weighted(ids(len(w1.left), monoid), w1) != w1 or compose_weighted(w1, ids(len(w1.right), monoid)) != w1:
        return "Identity law fails"

    # Stable inputs give stable composites
    if not monoid.unchecked and is_stable(w1) and is_stable(w2) and not is_stable(w12):
        return "Composite of stable cospans is not stable"
    return None


def case_decomposition_object(n, monoid):
    parts = ids(0, monoid)
    for _ in range(n):
        parts = tensor(parts, ids(1, monoid))
    if parts != ids(n, monoid):
        return f"Object of size {n} is not a product of singletons"
    return None


def case_decomposition_closed(w, rng=None):
    if len(w.left) or len(w.right):
        return "Not an endomorphism of the empty set"

    # Connected components in any order
    components = [closed_cospan([a], monoid=w.monoid) for a in w.labels]
    if rng is not None:
        components = [components[int(k)] for k in rng.permutation(len(components))]
    product = closed_cospan([], monoid=w.monoid)
    for c in components:
        product = tensor(product, c)
    if product != w:
        return f"Product of the connected components {product!r} differs from {w!r}"

    # The multiset of labels determines w
    if closed_cospan(sorted(w.labels, key=w.monoid.sort_key), monoid=w.monoid) != w:
        return "Decomposition is not unique"
    return None


def case_product_split(w):
    reduced, closed = split_reduced_closed(w)
    if not reduced.classify().is_reduced:
        return f"Reduced part {reduced!r} has closed classes"
    if recombine(reduced, closed) != w:
        return "Recombining the split parts does not give the input back"
    if split_reduced_closed(recombine(reduced, closed)) != (reduced, closed):
        return "Split after recombination differs"
    return None


def case_product_tensor(r1, r2):
    if not (r1.classify().is_reduced and r2.classify().is_reduced):
        return None  # Only reduced inputs
    t = tensor(r1, r2)
    if not t.classify().is_reduced:
        return "Product of reduced cospans is not reduced"

    m1, n1 = len(r1.left), len(r1.right)
    side1 = restrict(t, range(m1), range(n1))
    side2 = restrict(t, range(m1, len(t.left)), range(n1, len(t.right)))
    if side1 != r1 or side2 != r2:
        return "Product does not split back into its factors"
    return None


def _lifts(w, elements):
    """All label assignments on the underlying cospan of w (brute force)."""
    under = Cospan.from_maps(len(w.left), len(w.right), w.num_classes, w.left_map, w.right_map)
    for labels in itertools.product(elements, repeat=w.num_classes):
        yield WeightedCospan(under, list(labels), monoid=w.monoid)


def case_product_pullback(r, m1, n1, max_label):
    """A reduced r whose underlying cospan splits over (m1, n1) lifts to exactly one pair."""
    if not r.classify().is_reduced:
        return None
    side1 = restrict(r, range(m1), range(n1))
    side2 = restrict(r, range(m1, len(r.left)), range(n1, len(r.right)))

    # Classes hit from both sides cannot come from a pair
    classes1 = {r.left_map[k] for k in range(m1)} | {r.right_map[k] for k in range(n1)}
    classes2 = {r.left_map[k] for k in range(m1, len(r.left))} | {r.right_map[k] for k in range(n1, len(r.right))}
    if classes1 & classes2:
        if side1 is not None and side2 is not None:
            return "A cospan mixing both sides was split"
        return None
    if side1 is None or side2 is None:
        return "Restriction failed on a split cospan"

    bound = max([max_label] + [r.monoid.sort_key(a) for a in r.labels])
    elements = r.monoid.elements(bound)
    # Lifts form a product set, so each side is searched against the other's restriction
    found1 = sum(1 for x1 in _lifts(side1, elements) if tensor(x1, side2) == r)
    found2 = sum(1 for x2 in _lifts(side2, elements) if tensor(side1, x2) == r)
    found = found1 * found2
    if found != 1:
        return f"Expected exactly one lift, found {found}"
    return None


def case_surgery(diagram, w):
    if not surgery_shape_ok(diagram, w):
        return None
    lhs, rhs = surgery_paths(diagram, w)
    if lhs != rhs:
        return f"Surgery diagram {diagram} does not commute: {lhs!r} != {rhs!r}"
    return None


def case_euler(w1, w2):
    lhs = euler_characteristic(compose_weighted(w1, w2))
    rhs = euler_characteristic(w1) + euler_characteristic(w2)
    if lhs != rhs:
        return f"chi(w1*w2) = {lhs} but chi(w1) + chi(w2) = {rhs}"
    return None


def case_pb_functor(w1, w2):
    composite = compose_weighted(w1, w2)
    if pb_genus_functor(composite) != pb_genus_functor(w1) + pb_genus_functor(w2):
        return "Genus functor is not functorial"
    if pb_genus_functor(tensor(w1, w2)) != pb_genus_functor(w1) + pb_genus_functor(w2):
        return "Genus functor is not additive under disjoint union"

    # Agreement on positive-boundary morphisms
    for w in (w1, w2, composite):
        if w.classify().is_positive_boundary:
            if w.monoid.to_group(pb_functor(w)) != pb_genus_functor(w).value:
                return f"Genus functors disagree on {w!r}"
    if w1.classify().is_positive_boundary and w2.classify().is_positive_boundary \
            and not composite.classify().is_positive_boundary:
        return "Positive-boundary morphisms are not closed under composition"
    return None


# Replay ###############################################################################

def encode_args(args):
    return [a.to_json() if isinstance(a, WeightedCospan) else a for a in args]


def decode_args(args, monoid):
    return [WeightedCospan.from_json(a, monoid=monoid) if isinstance(a, dict) else a for a in args]


CASES = {
    "associativity": lambda args, monoid: case_associativity(*args),
    "decomposition_object": lambda args, monoid: case_decomposition_object(args[0], monoid),
    "decomposition_closed": lambda args, monoid: case_decomposition_closed(*args),
    "product_split": lambda args, monoid: case_product_split(*args),
    "product_tensor": lambda args, monoid: case_product_tensor(*args),
    "product_pullback": lambda args, monoid: case_product_pullback(*args),
    "surgery": lambda args, monoid: case_surgery(*args),
    "euler_additivity": lambda args, monoid: case_euler(*args),
    "pb_functor": lambda args, monoid: case_pb_functor(*args),
}


def replay(witness, monoid):
    """Re-runs a recorded witness without sampling. Returns the failure message or None."""
    if isinstance(monoid, str):
        monoid = get_monoid(monoid)
    case = witness["case"]
    if case not in CASES:
        raise ValueError(f"Unknown case '{case}'")
    return CASES[case](decode_args(witness["args"], monoid), monoid)


# Runner ###############################################################################

@functools.lru_cache(maxsize=8)
def _universe(monoid_name, max_feet, max_apex, max_label):
    return sampling.enumerate_weighted(get_monoid(monoid_name), max_feet, max_apex, max_label)


def universe(cfg, monoid):
    return _universe(monoid.name, cfg.max_feet, cfg.max_apex, cfg.max_label)


def _trial_rng(cfg, check, trial):
    return np.random.default_rng([cfg.seed, CHECK_IDS[check], trial])


def _run(check, cfg, monoid, sample_fn, exhaustive_fn, strict=True, budget=None):
    logger.info(f"=> [Verify]: '{check}' started. (monoid={monoid.name}; trials={cfg.trials}; seed={cfg.seed})")
    report = Report(check, monoid.name, trials=cfg.trials)

    # Exhaustive pass
    if cfg.runs_exhaustive():
        for case, args in tqdm(exhaustive_fn(), desc=f"{check} (exhaustive)", leave=False, disable=None):
            report.exhaustive_cases += 1
            msg = CASES[case](args, monoid)
            if msg:
                report.add_failure(None, {"case": case, "args": encode_args(args)}, msg)
            if budget is not None and report.exhaustive_cases % 1000 == 0:
                budget.check()

    # Random trials (independent, seeded by trial index)
    def _trial(trial):
        rng = _trial_rng(cfg, check, trial)
        failures = []
        for case, args in sample_fn(rng):
            msg = CASES[case](args, monoid)
            if msg:
                failures.append((trial, {"case": case, "args": encode_args(args)}, msg))
        return failures

    for failures in parallel_map(_trial, range(cfg.trials), workers=cfg.workers, budget=budget):
        for trial, witness, msg in failures:
            report.add_failure(trial, witness, msg)

    if report.passed:
        logger.info(f"\t- [INFO]: '{check}' passed ({report.exhaustive_cases} exhaustive cases)")
    else:
        logger.warning(f"[WARNING]: '{check}' found {len(report.failures)} counterexample(s)")
        if strict:
            first = report.to_json()["failures"][0]
            raise CounterexampleFound(check, first["witness"], first["message"])
    return report


def check_associativity(cfg, monoid, strict=True, budget=None):

    def sample_fn(rng):
        yield "associativity", sampling.random_composable(rng, cfg, monoid, 3)

    def exhaustive_fn():
        for w1, w2, w3 in sampling.composable_triples(universe(cfg, monoid)):
            yield "associativity", [w1, w2, w3]

    return _run("associativity", cfg, monoid, sample_fn, exhaustive_fn, strict=strict, budget=budget)


def check_axiom_decomposition(cfg, monoid, strict=True, budget=None):

    def sample_fn(rng):
        yield "decomposition_object", [int(rng.integers(0, cfg.max_feet + 1))]
        yield "decomposition_closed", [sampling.random_closed(rng, cfg, monoid)]

    def exhaustive_fn():
        for n in range(cfg.max_feet + 1):
            yield "decomposition_object", [n]
        for w in universe(cfg, monoid).get((0, 0), []):
            yield "decomposition_closed", [w]

    return _run("decomposition", cfg, monoid, sample_fn, exhaustive_fn, strict=strict, budget=budget)


def check_axiom_product(cfg, monoid, strict=True, budget=None):

    def _reduced(rng):
        return split_reduced_closed(sampling.random_weighted(rng, cfg, monoid))[0]

    def sample_fn(rng):
        w = sampling.random_weighted(rng, cfg, monoid)
        yield "product_split", [w]
        yield "product_tensor", [_reduced(rng), _reduced(rng)]
        r = _reduced(rng)
        m1 = int(rng.integers(0, len(r.left) + 1))
        n1 = int(rng.integers(0, len(r.right) + 1))
        yield "product_pullback", [r, m1, n1, min(cfg.max_label, 2)]

    def exhaustive_fn():
        all_ws = [w for ws in universe(cfg, monoid).values() for w in ws]
        reduced = [w for w in all_ws if w.classify().is_reduced]
        for w in all_ws:
            yield "product_split", [w]
        for r1 in reduced:
            for r2 in reduced:
                yield "product_tensor", [r1, r2]
        for r in reduced:
            for m1 in range(len(r.left) + 1):
                for n1 in range(len(r.right) + 1):
                    yield "product_pullback", [r, m1, n1, min(cfg.max_label, 2)]

    return _run("product", cfg, monoid, sample_fn, exhaustive_fn, strict=strict, budget=budget)


def check_surgery_diagrams(cfg, monoid, strict=True, budget=None):

    def sample_fn(rng):
        m = int(rng.integers(0, cfg.max_feet + 1))
        n = int(rng.integers(0, cfg.max_feet + 1))
        yield "surgery", [1, sampling.random_connected(rng, monoid, 1 + m, 1 + n, cfg.max_label)]
        yield "surgery", [2, sampling.random_connected(rng, monoid, 2 + m, n, cfg.max_label)]
        yield "surgery", [3, sampling.random_connected(rng, monoid, m, 2 + n, cfg.max_label)]

    def exhaustive_fn():
        for ws in universe(cfg, monoid).values():
            for w in ws:
                for diagram in (1, 2, 3):
                    if surgery_shape_ok(diagram, w):
                        yield "surgery", [diagram, w]

    return _run("surgery", cfg, monoid, sample_fn, exhaustive_fn, strict=strict, budget=budget)


def check_euler_additivity(cfg, monoid, strict=True, budget=None):
    if not is_natural(monoid):
        raise WrongMonoid(f"Euler characteristics need N-labels (got '{monoid.name}')")

    def sample_fn(rng):
        yield "euler_additivity", sampling.random_composable(rng, cfg, monoid, 2)

    def exhaustive_fn():
        for w1, w2 in sampling.composable_pairs(universe(cfg, monoid)):
            yield "euler_additivity", [w1, w2]

    return _run("euler_additivity", cfg, monoid, sample_fn, exhaustive_fn, strict=strict, budget=budget)


def check_pb_functor(cfg, monoid, strict=True, budget=None):

    def sample_fn(rng):
        yield "pb_functor", sampling.random_composable(rng, cfg, monoid, 2)
        w1 = sampling.random_positive_boundary(rng, cfg, monoid)
        w2 = sampling.random_positive_boundary(rng, cfg, monoid, n_left=len(w1.right))
        yield "pb_functor", [w1, w2]

    def exhaustive_fn():
        for w1, w2 in sampling.composable_pairs(universe(cfg, monoid)):
            yield "pb_functor", [w1, w2]

    return _run("pb_functor", cfg, monoid, sample_fn, exhaustive_fn, strict=strict, budget=budget)


def run_all(cfg, monoid, strict=False, budget=None):
    if isinstance(monoid, str):
        monoid = get_monoid(monoid)
    checks = [check_associativity, check_axiom_decomposition, check_axiom_product, check_surgery_diagrams,
              check_pb_functor]
    if is_natural(monoid):
        checks.append(check_euler_additivity)
    return [check(cfg, monoid, strict=strict, budget=budget) for check in checks]
