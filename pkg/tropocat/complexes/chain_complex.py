import logging

from tropocat.bundle.report import homology2pandas
from tropocat.bundle.utils import LOGGER_NAME, parallel_map
from tropocat.complexes.linalg import SparseRationalMatrix, betti, rank
from tropocat.errors import InconsistentDims

logger = logging.getLogger(LOGGER_NAME)


class ChainComplex:
    """
    A finite chain complex over Q.

    `bases[p]` lists the generator keys of degree p and `boundaries[p]` is the matrix of
    the differential C_p -> C_{p-1} (rows: basis p-1, columns: basis p). Missing
    boundaries are zero.
    """

    def __init__(self, degrees, bases, boundaries, name="complex"):
        self.degrees = sorted(degrees)
        if self.degrees != list(range(self.degrees[0], self.degrees[0] + len(self.degrees))):
            raise InconsistentDims(f"Degrees must be consecutive (got {self.degrees})")
        self.bases = {p: list(bases.get(p, [])) for p in self.degrees}
        self.name = name

        self.boundaries = {}
        for p in self.degrees:
            rows = len(self.bases[p - 1]) if p - 1 in self.bases else 0
            M = boundaries.get(p) or SparseRationalMatrix.zeros(rows, len(self.bases[p]))
            if M.shape != (rows, len(self.bases[p])):
                raise InconsistentDims(f"Boundary of degree {p} has shape {M.shape} (expected {(rows, len(self.bases[p]))})")
            self.boundaries[p] = M
        self._ranks = {}

    def dims(self):
        return [len(self.bases[p]) for p in self.degrees]

    def dim(self, p):
        return len(self.bases.get(p, []))

    def rank(self, p):
        if p not in self.boundaries:
            return 0
        if p not in self._ranks:
            self._ranks[p] = rank(self.boundaries[p])
        return self._ranks[p]

    def ranks(self, degrees=None, workers=1, budget=None):
        """Ranks of the boundaries leaving each degree. Independent degrees run in parallel."""
        degrees = self.degrees if degrees is None else list(degrees)
        missing = [p for p in degrees if p in self.boundaries and p not in self._ranks]
        for p, r in zip(missing, parallel_map(lambda q: rank(self.boundaries[q]), missing, workers=workers, budget=budget)):
            self._ranks[p] = r
        return [self.rank(p) for p in degrees]

    def betti(self, degrees=None, workers=1, budget=None):
        if degrees is None:
            return betti(self.dims(), self.ranks(workers=workers, budget=budget))

        # Only the ranks around the requested degrees
        degrees = [p for p in degrees if p in self.bases]
        self.ranks(sorted(set(degrees) | {p + 1 for p in degrees}), workers=workers, budget=budget)
        bettis = []
        for p in degrees:
            b = self.dim(p) - self.rank(p) - self.rank(p + 1)
            if b < 0:
                raise InconsistentDims(f"Negative Betti number in degree {p} of {self.name}")
            bettis.append(b)
        return bettis

    def euler_characteristic(self):
        return sum((-1) ** (p % 2) * self.dim(p) for p in self.degrees)

    def check_d_squared(self):
        """True iff every composite of two consecutive boundaries vanishes."""
        for p in self.degrees:
            if p - 1 in self.boundaries and not (self.boundaries[p - 1] @ self.boundaries[p]).is_zero():
                logger.warning(f"[WARNING]: d^2 != 0 at degree {p} of {self.name}")
                return False
        return True

    def homology(self, degrees=None, workers=1, budget=None):
        """(degree, Betti) pairs."""
        degrees = self.degrees if degrees is None else [p for p in degrees if p in self.bases]
        return list(zip(degrees, self.betti(degrees, workers=workers, budget=budget)))

    def to_frame(self, degrees=None, workers=1, budget=None):
        degrees = self.degrees if degrees is None else [p for p in degrees if p in self.bases]
        bettis = self.betti(degrees, workers=workers, budget=budget)
        return homology2pandas(degrees, [self.dim(p) for p in degrees], [self.rank(p) for p in degrees], bettis)

    def __repr__(self):
        return f"ChainComplex(name={self.name}, degrees={self.degrees[0]}..{self.degrees[-1]}, dims={self.dims()})"
