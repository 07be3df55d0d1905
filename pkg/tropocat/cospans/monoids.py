from abc import ABC, abstractmethod

from tropocat.errors import UnsupportedMonoid


class MonoidGroupElement:
    """An element of the group completion, stored as a signed integer."""

    def __init__(self, value=0):
        self.value = int(value)

    def __add__(self, other):
        return MonoidGroupElement(self.value + other.value)

    def __neg__(self):
        return MonoidGroupElement(-self.value)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, MonoidGroupElement) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"MonoidGroupElement({self.value})"


class WeightingMonoid(ABC):
    """
    A weighting monoid (A, A1, alpha): a commutative monoid A, a subset A1 with
    A1 + A inside A1, and an element alpha of A1.

    Elements are plain Python ints. Laws are obligations of each subclass; they are
    sampled by `check_laws`, not proven.
    """
    name = None
    unchecked = False

    def __init__(self):
        self.zero = 0
        self.alpha = 0

    @abstractmethod
    def add(self, a, b):
        pass

    @abstractmethod
    def is_element(self, a):
        pass

    @abstractmethod
    def is_in_A1(self, a):
        pass

    @abstractmethod
    def to_group(self, a):
        """Image in the group completion (a signed integer)."""
        pass

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def scale(self, a, n):
        """n * a for a natural number n."""
        if n < 0:
            raise ValueError("Monoid elements can only be scaled by natural numbers")
        total = self.zero
        for _ in range(n):
            total = self.add(total, a)
        return total

    def validate(self, a):
        if not isinstance(a, int) or isinstance(a, bool) or not self.is_element(a):
            raise ValueError(f"{a!r} is not an element of the monoid '{self.name}'")
        return a

    def sort_key(self, a):
        return a

    def elements(self, max_label):
        """Elements up to `max_label` (used by exhaustive checks and samplers)."""
        return [a for a in range(0, max_label + 1) if self.is_element(a)]

    def sample(self, rng, max_label, stable=False):
        pool = [a for a in self.elements(max_label) if not stable or self.is_in_A1(a)]
        if not pool:
            pool = [a for a in self.elements(max(max_label, 1) + 1) if not stable or self.is_in_A1(a)]
        return pool[int(rng.integers(len(pool)))]

    def check_laws(self, rng, samples=100, max_label=4):
        """Samples the monoid laws; returns the list of violated laws with witnesses."""
        failures = []
        elements = self.elements(max_label)
        for _ in range(samples):
            a, b, c = (elements[int(rng.integers(len(elements)))] for _ in range(3))
            if self.add(a, b) != self.add(b, a):
                failures.append(("commutativity", (a, b)))
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                failures.append(("associativity", (a, b, c)))
            if self.add(a, self.zero) != a:
                failures.append(("unit", (a,)))
            if self.is_in_A1(a) and not self.is_in_A1(self.add(a, b)):
                failures.append(("A1 + A in A1", (a, b)))
        if not self.is_in_A1(self.alpha):
            failures.append(("alpha in A1", (self.alpha,)))
        return failures

    def __repr__(self):
        return f"{self.__class__.__name__}('{self.name}')"


class TrivialMonoid(WeightingMonoid):
    """(0, 0, 0): the weighting that recovers plain cospans."""
    name = "trivial"

    def add(self, a, b):
        return 0

    def is_element(self, a):
        return a == 0

    def is_in_A1(self, a):
        return a == 0

    def to_group(self, a):
        return 0


class NaturalMonoid(WeightingMonoid):
    """(N, N>=1, 1) when `stable`, else (N, N, 1)."""

    def __init__(self, stable=True):
        super().__init__()
        self.stable = stable
        self.alpha = 1
        self.name = "nat-stable" if stable else "nat"

    def add(self, a, b):
        return a + b

    def is_element(self, a):
        return a >= 0

    def is_in_A1(self, a):
        return a >= 1 if self.stable else a >= 0

    def to_group(self, a):
        return a


class TruncatedMonoid(WeightingMonoid):
    """
    N/(N + gamma): elements 0..gamma with addition saturating at gamma, alpha = min(1, gamma).
    A1 = A, or the image of N>=1 when `stable` (genus below gamma with chi <= 0).

    Its group completion is trivial (gamma absorbs everything), so `to_group` is 0.
    """

    def __init__(self, gamma, stable=False):
        super().__init__()
        if gamma < 0:
            raise ValueError("'gamma' must be >= 0")
        self.gamma = int(gamma)
        self.stable = bool(stable)
        self.alpha = min(1, self.gamma)
        self.name = f"nat-stable-mod:{self.gamma}" if self.stable else f"nat-mod:{self.gamma}"

    def add(self, a, b):
        return min(a + b, self.gamma)

    def is_element(self, a):
        return 0 <= a <= self.gamma

    def is_in_A1(self, a):
        if self.stable and self.gamma >= 1:
            return 1 <= a <= self.gamma
        return self.is_element(a)

    def to_group(self, a):
        return 0


class IntegerMonoid(WeightingMonoid):
    """(Z, Z, 1). Unchecked: stability closure is not asserted for it."""
    name = "int"
    unchecked = True

    def __init__(self):
        super().__init__()
        self.alpha = 1

    def add(self, a, b):
        return a + b

    def is_element(self, a):
        return True

    def is_in_A1(self, a):
        return True

    def to_group(self, a):
        return a

    def elements(self, max_label):
        return list(range(-max_label, max_label + 1))


NAT_STABLE = NaturalMonoid(stable=True)
NAT = NaturalMonoid(stable=False)
TRIVIAL = TrivialMonoid()

MONOID_NAMES = ["trivial", "nat", "nat-stable", "nat-mod:<gamma>", "nat-stable-mod:<gamma>", "int"]


def get_monoid(name):
    name = str(name).strip().lower()
    if name == "trivial":
        return TRIVIAL
    elif name == "nat":
        return NAT
    elif name == "nat-stable":
        return NAT_STABLE
    elif name == "int":
        return IntegerMonoid()
    elif name.startswith("nat-mod:") or name.startswith("nat-stable-mod:"):
        try:
            gamma = int(name.split(":", 1)[1])
        except ValueError:
            raise UnsupportedMonoid(f"Invalid truncation in '{name}'")
        if gamma < 0:
            raise UnsupportedMonoid(f"Negative truncation in '{name}'")
        return TruncatedMonoid(gamma, stable=name.startswith("nat-stable-mod:"))
    else:
        raise UnsupportedMonoid(f"Unknown monoid '{name}'. Available: {', '.join(MONOID_NAMES)}")


def is_natural(monoid, stable=None):
    if not isinstance(monoid, NaturalMonoid):
        return False
    return stable is None or monoid.stable == stable
