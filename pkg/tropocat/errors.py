class FootMismatch(ValueError):
    """The right feet of the first cospan and the left feet of the second differ in size."""


class NegativeBetti(ValueError):
    """A glued class reports fewer shared feet than it needs to be connected."""


class WrongMonoid(ValueError):
    pass


class UnsupportedMonoid(ValueError):
    pass


class Disconnected(ValueError):
    pass


class EmptyCut(ValueError):
    pass


class NotNested(ValueError):
    pass


class UnstableResidue(ValueError):
    """Stabilizing a metric graph left something that is not a stable graph with edges."""


class InvalidChain(ValueError):
    pass


class InvalidSimplex(ValueError):
    pass


class InconsistentDims(ValueError):
    pass


class CounterexampleFound(AssertionError):

    def __init__(self, check, witness, message=None):
        self.check = check
        self.witness = witness
        super().__init__(message or f"Counterexample found in '{check}'")


class ResourceBudgetExceeded(RuntimeError):

    def __init__(self, budget_seconds, elapsed=None):
        self.budget_seconds = budget_seconds
        self.elapsed = elapsed
        msg = f"Resource budget exceeded ({budget_seconds}s)"
        if elapsed is not None:
            msg += f" after {elapsed:.2f}s"
        super().__init__(msg)
