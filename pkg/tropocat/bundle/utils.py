import datetime
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from tropocat.errors import ResourceBudgetExceeded

LOGGER_NAME = "tropocat"
THREADS_ENV = "TROPOCAT_THREADS"


def make_dir(path, parents=True, exist_ok=True, base_path=""):
    paths = [path] if isinstance(path, str) else path

    for p in paths:
        p = os.path.join(base_path, p)  # Add base path (if needed)
        if not os.path.exists(p):
            Path(p).mkdir(parents=parents, exist_ok=exist_ok)


def load_json(filename):
    with open(filename, 'r') as f:
        return json.load(f)


def save_json(d, savepath, ignore_empty=True):
    if d or not ignore_empty:
        with open(savepath, 'w') as f:
            f.write(dumps_canonical(d))
            f.write("\n")
    else:
        logging.getLogger(LOGGER_NAME).info(f"\t- [INFO]: Ignoring empty json. Not saved: {savepath}")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dumps_canonical(d, indent=None):
    # Same input => same bytes (keys sorted, no trailing spaces)
    return json.dumps(d, sort_keys=True, indent=indent, separators=(",", ": ") if indent else (",", ":"),
                      default=_jsonable)


def fraction_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text):
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"Cannot read an exact rational from {type(text).__name__}")


def parse_coords(text):
    """Parses barycentric coordinates like "1/2,1/4,1/4" into Fractions."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("No coordinates were given")
    return [parse_fraction(p) for p in parts]


def create_logger(logs_path=None, log_level=logging.INFO):
    mylogger = logging.getLogger(LOGGER_NAME)
    mylogger.setLevel(log_level)
    mylogger.propagate = False

    # stdout is reserved for results
    handlers = [logging.StreamHandler(sys.stderr)]
    if logs_path:
        Path(logs_path).mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(filename=os.path.join(logs_path, "logs.log"), mode='w'))
    mylogger.handlers = handlers

    # Print something
    mylogger.info("########## LOGGER STARTED ##########")
    mylogger.info(f"- Log level: {logging.getLevelName(log_level)}")
    if logs_path:
        mylogger.info(f"- Logs path: {logs_path}")
    return mylogger


def logged_task(logger, row, fn_name, fn, **kwargs):
    start_fn = time.time()
    start_dt = datetime.datetime.now()
    logger.info(f"***** {fn_name.title()} started *****")

    # Call function (...and propagate errors)
    result = fn(**kwargs)

    # Get elapsed time
    elapsed_fn = time.time() - start_fn
    elapsed_fn_str = str(datetime.timedelta(seconds=elapsed_fn))
    end_dt = datetime.datetime.now()
    logger.info(f"----- [{fn_name.title()}] Time elapsed (hh:mm:ss.ms): {elapsed_fn_str} -----")
    logger.info(f"***** {fn_name.title()} ended *****")

    # Store results
    row[f"start_{fn_name}"] = str(start_dt)
    row[f"end_{fn_name}"] = str(end_dt)
    row[f"elapsed_{fn_name}_str"] = elapsed_fn_str
    row[f"{fn_name}_status"] = "okay"
    return result


def get_num_workers(requested=None):
    """Number of worker threads: the request (default 1) capped by TROPOCAT_THREADS."""
    workers = 1 if requested is None else int(requested)
    if workers < 1:
        raise ValueError("The number of threads must be >= 1")

    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer (got '{env}')")
        if cap >= 1:
            workers = min(workers, cap)
    return workers


def parallel_map(fn, items, workers=1, budget=None):
    """Maps `fn` over `items` keeping the input order, whatever the number of workers."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        results = []
        for x in items:
            if budget is not None:
                budget.check()
            results.append(fn(x))
        return results

    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(fn, items))
    if budget is not None:
        budget.check()
    return results


class Budget:
    """Wall-clock budget. `check()` raises once the deadline has passed."""

    def __init__(self, seconds=None):
        if seconds is not None and seconds <= 0:
            raise ValueError("'budget' must be a positive number of seconds")
        self.seconds = seconds
        self.start = time.monotonic()

    def elapsed(self):
        return time.monotonic() - self.start

    def check(self):
        if self.seconds is None:
            return
        elapsed = self.elapsed()
        if elapsed > self.seconds:
            raise ResourceBudgetExceeded(self.seconds, elapsed)
