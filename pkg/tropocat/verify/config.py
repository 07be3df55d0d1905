EXHAUSTIVE_BOUNDS = (3, 3, 1)  # max_feet, max_apex, max_label


class TrialConfig:

    def __init__(self, seed=0, trials=1000, max_feet=3, max_apex=4, max_label=2, exhaustive=False, workers=1):
        # Check values
        if trials < 1:
            raise ValueError("'trials' must be >= 1")
        for name, value in [("max_feet", max_feet), ("max_apex", max_apex), ("max_label", max_label)]:
            if value < 1:
                raise ValueError(f"'{name}' must be >= 1")
        if not (0 <= int(seed) < 2**64):
            raise ValueError("'seed' must be a 64-bit unsigned integer")

        self.seed = int(seed)
        self.trials = int(trials)
        self.max_feet = int(max_feet)
        self.max_apex = int(max_apex)
        self.max_label = int(max_label)
        self.exhaustive = bool(exhaustive)
        self.workers = int(workers)

    def runs_exhaustive(self):
        """Exhaustive pass when asked for, or automatically at small bounds."""
        bounds = (self.max_feet, self.max_apex, self.max_label)
        return self.exhaustive or all(x <= y for x, y in zip(bounds, EXHAUSTIVE_BOUNDS))

    def to_dict(self):
        return {"seed": self.seed, "trials": self.trials, "max_feet": self.max_feet, "max_apex": self.max_apex,
                "max_label": self.max_label, "exhaustive": self.exhaustive}


class Report:
    """Outcome of one check: every failure keeps the witness needed to replay it."""

    def __init__(self, check, monoid, trials=0, exhaustive_cases=0):
        self.check = check
        self.monoid = monoid
        self.trials = trials
        self.exhaustive_cases = exhaustive_cases
        self.failures = []

    @property
    def passed(self):
        return not self.failures

    def add_failure(self, trial, witness, message):
        self.failures.append({"trial": trial, "witness": witness, "message": message})

    def to_json(self):
        # Exhaustive cases have trial=None and go last
        failures = sorted(self.failures, key=lambda f: (f["trial"] is None, f["trial"] or 0))
        return {"check": self.check, "monoid": self.monoid, "trials": self.trials,
                "exhaustive_cases": self.exhaustive_cases, "passed": self.passed, "failures": failures}

    def __repr__(self):
        return f"Report(check='{self.check}', monoid='{self.monoid}', passed={self.passed}, " \
               f"failures={len(self.failures)})"
