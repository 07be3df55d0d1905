import argparse
import logging
import os
import sys

from tropocat.bundle.report import save_table, table2csv
from tropocat.bundle.utils import (LOGGER_NAME, Budget, create_logger, dumps_canonical, get_num_workers, load_json,
                                   logged_task, make_dir, parse_coords, save_json)
from tropocat.complexes import build_complex, build_gc, compare
from tropocat.cospans.monoids import get_monoid
from tropocat.errors import CounterexampleFound, ResourceBudgetExceeded
from tropocat.graphs.enumeration import STRATEGIES, enumerate_Jg
from tropocat.moduli import ContractionSimplex, FactorizationChain, NerveChain, mu, phi, phi2, phi3
from tropocat.verify import (TrialConfig, check_associativity, check_axiom_decomposition, check_axiom_product,
                             check_euler_additivity, check_pb_functor, check_surgery_diagrams, run_all)

logger = logging.getLogger(LOGGER_NAME)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
VERIFY_TARGETS = {
    "axioms": None,
    "associativity": check_associativity,
    "decomposition": check_axiom_decomposition,
    "product": check_axiom_product,
    "surgery": check_surgery_diagrams,
    "euler": check_euler_additivity,
    "pb": check_pb_functor,
}


class UsageError(ValueError):
    pass


class RunConfig:
    """Validated arguments of one command. Saved as config.json beside --out."""

    def __init__(self, command, target=None, monoid=None, genus=None, seed=0, trials=1000, out=None,
                 budget_seconds=None, memory_hint=None, threads=1, exhaustive=False, chain=None, coords=None,
                 lengths=None, degree_range=None, strategy="closure", max_feet=3, max_apex=4, max_label=2):
        if genus is not None and genus < 2:
            raise UsageError("'--genus' must be >= 2")
        if budget_seconds is not None and budget_seconds <= 0:
            raise UsageError("'--budget' must be a positive number of seconds")
        if degree_range is not None and degree_range[0] > degree_range[1]:
            raise UsageError(f"Empty degree range {degree_range[0]}..{degree_range[1]}")
        if command == "eval" and target in ("phi2", "phi3") and monoid is not None:
            raise UsageError(f"'eval {target}' reads stable graphs, not weighted cospans: drop --monoid")

        self.command = command
        self.target = target
        self.monoid = monoid
        self.genus = genus
        self.seed = seed
        self.trials = trials
        self.out = out
        self.budget_seconds = budget_seconds
        self.memory_hint = memory_hint
        self.threads = get_num_workers(threads)
        self.exhaustive = exhaustive
        self.chain = chain
        self.coords = coords
        self.lengths = lengths
        self.degree_range = degree_range
        self.strategy = strategy
        self.max_feet = max_feet
        self.max_apex = max_apex
        self.max_label = max_label

    @staticmethod
    def from_args(args):
        return RunConfig(command=args.command, target=getattr(args, "target", None),
                         monoid=getattr(args, "monoid", None), genus=getattr(args, "genus", None),
                         seed=getattr(args, "seed", 0), trials=getattr(args, "trials", 1000), out=args.out,
                         budget_seconds=args.budget, memory_hint=args.memory_hint, threads=args.threads,
                         exhaustive=getattr(args, "exhaustive", False), chain=getattr(args, "chain", None),
                         coords=getattr(args, "coords", None), lengths=getattr(args, "lengths", None),
                         degree_range=getattr(args, "degree_range", None),
                         strategy=getattr(args, "strategy", "closure"), max_feet=getattr(args, "max_feet", 3),
                         max_apex=getattr(args, "max_apex", 4), max_label=getattr(args, "max_label", 2))

    def degrees(self):
        if self.degree_range is None:
            return None
        return list(range(self.degree_range[0], self.degree_range[1] + 1))

    def to_dict(self):
        d = dict(self.__dict__)
        d["degree_range"] = list(self.degree_range) if self.degree_range else None
        d.pop("threads")  # results do not depend on it
        return d


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _degree_range(text):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a range like '0..5' (got '{text}')")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--threads', type=int, default=1, help='worker threads (capped by TROPOCAT_THREADS)')
    common.add_argument('--budget', type=float, default=None, help='wall-clock budget in seconds')
    common.add_argument('--memory-hint', type=str, default=None, help='recorded in config.json only')
    common.add_argument('--log-level', choices=LOG_LEVELS, default="WARNING", help='logging level (stderr)')
    common.add_argument('--logs', type=str, default=None, help='directory for logs.log')
    common.add_argument('--out', type=str, default=None, help='output file (config.json is saved beside it)')

    parser = _Parser(prog="tropocat", description='Weighted cospans, tropical moduli spaces and graph complexes.',
                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)
    subparsers.required = True

    p = subparsers.add_parser("enumerate", parents=[common], help='isomorphism classes of J_g')
    p.add_argument('--genus', type=int, required=True)
    p.add_argument('--monoid', default="nat-stable")
    p.add_argument('--strategy', choices=STRATEGIES, default="closure")

    p = subparsers.add_parser("homology", parents=[common], help='homology table of Delta_g or the graph complex')
    p.add_argument('target', choices=["delta", "gc"])
    p.add_argument('--genus', type=int, required=True)
    p.add_argument('--degree-range', type=_degree_range, default=None)

    p = subparsers.add_parser("compare", parents=[common], help='both homology pipelines side by side')
    p.add_argument('--genus', type=int, required=True)

    p = subparsers.add_parser("verify", parents=[common], help='seeded property checks')
    p.add_argument('target', choices=list(VERIFY_TARGETS))
    p.add_argument('--monoid', default="nat-stable")
    p.add_argument('--trials', type=int, default=1000)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--exhaustive', action="store_true")
    p.add_argument('--max-feet', type=int, default=3)
    p.add_argument('--max-apex', type=int, default=4)
    p.add_argument('--max-label', type=int, default=2)

    p = subparsers.add_parser("eval", parents=[common], help='evaluate phi, phi2, phi3 or mu')
    p.add_argument('target', choices=["phi", "phi2", "phi3", "mu"])
    p.add_argument('--chain', type=str, required=True, help='chain or simplex JSON file')
    p.add_argument('--coords', type=str, required=True, help='barycentric coordinates, e.g. "1/2,1/2"')
    p.add_argument('--lengths', type=str, default=None, help='metric on the last graph (phi3)')
    p.add_argument('--monoid', default=None, help='labels of the chain (phi, mu; nat-stable when omitted)')
    return parser


def _save_config(config):
    if config.out:
        dirname = os.path.dirname(config.out) or "."
        make_dir(dirname)
        save_json(config.to_dict(), os.path.join(dirname, "config.json"))


def _emit(config, text):
    sys.stdout.write(text + "\n")
    if config.out:
        with open(config.out, 'w') as f:
            f.write(text + "\n")


def _run_enumerate(config, budget):
    graphs = enumerate_Jg(config.genus, monoid=get_monoid(config.monoid), strategy=config.strategy,
                          workers=config.threads, budget=budget)
    _emit(config, dumps_canonical([G.to_json() for G in graphs], indent=2))
    return EXIT_OK


def _run_homology(config, budget):
    build = build_complex if config.target == "delta" else build_gc
    complex_ = build(config.genus, workers=config.threads, budget=budget)
    df = complex_.to_frame(config.degrees(), workers=config.threads, budget=budget)
    sys.stdout.write(table2csv(df))
    if config.out:
        save_table(df, config.out)
    return EXIT_OK


def _run_compare(config, budget):
    df = compare(config.genus, workers=config.threads, budget=budget)
    sys.stdout.write(table2csv(df))
    if config.out:
        save_table(df, config.out)
    return EXIT_OK if df["equal"].all() else EXIT_MISMATCH


def _run_verify(config, budget):
    monoid = get_monoid(config.monoid)
    cfg = TrialConfig(seed=config.seed, trials=config.trials, max_feet=config.max_feet, max_apex=config.max_apex,
                      max_label=config.max_label, exhaustive=config.exhaustive, workers=config.threads)
    check = VERIFY_TARGETS[config.target]
    reports = run_all(cfg, monoid, budget=budget) if check is None else [check(cfg, monoid, strict=False, budget=budget)]
    _emit(config, dumps_canonical([r.to_json() for r in reports], indent=2))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def _run_eval(config, budget):
    monoid = get_monoid(config.monoid or "nat-stable")
    data = load_json(config.chain)
    t = parse_coords(config.coords)

    if config.target == "phi":
        result = phi(FactorizationChain.from_json(data, monoid=monoid), t).to_json()
    elif config.target == "phi2":
        result = phi2(ContractionSimplex.from_json(data), t).to_json()
    elif config.target == "phi3":
        if config.lengths is None:
            raise UsageError("'eval phi3' needs --lengths")
        result = phi3(ContractionSimplex.from_json(data), parse_coords(config.lengths), t).to_json()
    else:
        result = [p.to_json() for p in mu(NerveChain.from_json(data, monoid=monoid), t)]
    _emit(config, dumps_canonical(result, indent=2))
    return EXIT_OK


COMMANDS = {
    "enumerate": _run_enumerate,
    "homology": _run_homology,
    "compare": _run_compare,
    "verify": _run_verify,
    "eval": _run_eval,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig.from_args(args)
    except ValueError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code or EXIT_OK

    create_logger(logs_path=args.logs, log_level=getattr(logging, args.log_level))
    _save_config(config)

    row = {}
    try:
        budget = Budget(config.budget_seconds)
        return logged_task(logger, row, config.command, COMMANDS[config.command], config=config, budget=budget)
    except ResourceBudgetExceeded as e:
        sys.stderr.write(f"[ERROR]: {e}\n")
        return EXIT_BUDGET
    except CounterexampleFound as e:
        sys.stderr.write(f"[ERROR]: {e}\n{dumps_canonical(e.witness)}\n")
        return EXIT_MISMATCH
    except (ValueError, TypeError, OSError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"[ERROR]: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
