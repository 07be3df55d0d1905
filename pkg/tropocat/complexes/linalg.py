import functools
import logging
import math
from collections import defaultdict
from fractions import Fraction

from tropocat.bundle.utils import LOGGER_NAME
from tropocat.errors import InconsistentDims

logger = logging.getLogger(LOGGER_NAME)

RANK_METHODS = ("bareiss", "modular")
PRIMES = (2147483647, 2147483629)


class SparseRationalMatrix:
    """Sparse matrix over Q stored as sorted (row, col, Fraction) triples without zeros."""

    def __init__(self, n_rows, n_cols, entries=()):
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("Matrix dimensions must be nonnegative")

        entries = sorted((int(r), int(c), Fraction(x)) for r, c, x in entries)
        for k, (r, c, x) in enumerate(entries):
            if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
                raise ValueError(f"Entry ({r}, {c}) out of bounds for a {self.n_rows}x{self.n_cols} matrix")
            if x == 0:
                raise ValueError(f"Stored zero at ({r}, {c})")
            if k and entries[k - 1][:2] == (r, c):
                raise ValueError(f"Duplicate entry at ({r}, {c})")
        self.entries = tuple(entries)

    @staticmethod
    def from_entries(n_rows, n_cols, entries):
        """Sums duplicated positions and drops zeros."""
        acc = defaultdict(Fraction)
        for r, c, x in entries:
            acc[(r, c)] += Fraction(x)
        return SparseRationalMatrix(n_rows, n_cols, [(r, c, x) for (r, c), x in acc.items() if x != 0])

    @staticmethod
    def from_dense(rows):
        rows = [list(row) for row in rows]
        n_cols = len(rows[0]) if rows else 0
        if any(len(row) != n_cols for row in rows):
            raise ValueError("Rows must have the same length")
        entries = [(r, c, x) for r, row in enumerate(rows) for c, x in enumerate(row) if x != 0]
        return SparseRationalMatrix(len(rows), n_cols, entries)

    @staticmethod
    def zeros(n_rows, n_cols):
        return SparseRationalMatrix(n_rows, n_cols)

    @property
    def shape(self):
        return self.n_rows, self.n_cols

    @property
    def nnz(self):
        return len(self.entries)

    def to_dense(self):
        dense = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for r, c, x in self.entries:
            dense[r][c] = x
        return dense

    def rows(self):
        """Nonzero rows as {row: {col: value}}."""
        rows = defaultdict(dict)
        for r, c, x in self.entries:
            rows[r][c] = x
        return dict(rows)

    def transpose(self):
        return SparseRationalMatrix(self.n_cols, self.n_rows, [(c, r, x) for r, c, x in self.entries])

    def permute(self, rows, cols):
        """Entry (i, j) moves to (rows[i], cols[j])."""
        if sorted(rows) != list(range(self.n_rows)) or sorted(cols) != list(range(self.n_cols)):
            raise ValueError("'rows' and 'cols' must be permutations")
        return SparseRationalMatrix(self.n_rows, self.n_cols, [(rows[r], cols[c], x) for r, c, x in self.entries])

    def __matmul__(self, other):
        if self.n_cols != other.n_rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        right = other.rows()
        acc = defaultdict(Fraction)
        for r, k, x in self.entries:
            for c, y in right.get(k, {}).items():
                acc[(r, c)] += x * y
        return SparseRationalMatrix(self.n_rows, other.n_cols, [(r, c, x) for (r, c), x in acc.items() if x != 0])

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, SparseRationalMatrix) and self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"SparseRationalMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"


def _integer_rows(M):
    """Each row scaled by the lcm of its denominators."""
    rows = {}
    for r, row in M.rows().items():
        scale = functools.reduce(math.lcm, (x.denominator for x in row.values()), 1)
        rows[r] = {c: int(x * scale) for c, x in row.items()}
    return rows


def _eliminate(rows, combine):
    """
    Sparse elimination with Markowitz-style pivoting: the shortest row first, inside it the
    column with fewest entries; ties broken by index. Returns the rank profile as a list
    of (row, col) pivots. `combine(pivot_row, pivot_col, row)` clears the pivot column of row.
    """
    col_rows = defaultdict(set)
    for r, row in rows.items():
        for c in row:
            col_rows[c].add(r)

    profile = []
    while rows:
        r = min(rows, key=lambda k: (len(rows[k]), k))
        pivot_row = rows.pop(r)
        for c in pivot_row:
            col_rows[c].discard(r)
        c = min(pivot_row, key=lambda k: (len(col_rows[k]), k))
        profile.append((r, c))

        for r2 in sorted(col_rows[c]):
            old = rows[r2]
            new = combine(pivot_row, c, old)
            for k in set(old) | set(pivot_row):
                if k in new:
                    col_rows[k].add(r2)
                else:
                    col_rows[k].discard(r2)
            if new:
                rows[r2] = new
            else:
                del rows[r2]
    return profile


def _combine_integer(pivot_row, c, row):
    # Fraction-free step followed by content removal
    p, b = pivot_row[c], row[c]
    new = {}
    for k in set(row) | set(pivot_row):
        x = p * row.get(k, 0) - b * pivot_row.get(k, 0)
        if x:
            new[k] = x
    if new:
        content = functools.reduce(math.gcd, new.values())
        if content > 1:
            new = {k: x // content for k, x in new.items()}
    return new


def rank_profile(M):
    return _eliminate(_integer_rows(M), _combine_integer)


def rank_profile_modp(M, p):
    """Rank profile over F_p as (row, col) pivots. Its length never exceeds the rank over Q."""
    rows = {}
    for r, row in M.rows().items():
        reduced = {}
        for c, x in row.items():
            if x.denominator % p == 0:
                raise ValueError(f"Prime {p} divides a denominator")
            v = x.numerator * pow(x.denominator, -1, p) % p
            if v:
                reduced[c] = v
        if reduced:
            rows[r] = reduced

    def _combine(pivot_row, c, row):
        factor = row[c] * pow(pivot_row[c], -1, p) % p
        new = {}
        for k in set(row) | set(pivot_row):
            x = (row.get(k, 0) - factor * pivot_row.get(k, 0)) % p
            if x:
                new[k] = x
        return new

    return _eliminate(rows, _combine)


def rank_modp(M, p):
    """Rank over F_p. Never larger than the rank over Q."""
    return len(rank_profile_modp(M, p))


def certify_profile(M, profile):
    """
    True iff `profile` is a rank profile of M over Q: the pivot rows reduce to an identity on
    the pivot columns (nonsingular r x r block) and every other row is the combination of the
    reduced pivot rows read off its pivot-column entries.
    """
    rows = M.rows()
    pivot_cols = [c for _, c in profile]
    if len(set(pivot_cols)) != len(pivot_cols) or len({r for r, _ in profile}) != len(profile):
        return False

    # Gauss-Jordan on the pivot rows only
    basis = [dict(rows.get(r, {})) for r, _ in profile]
    for k, c in enumerate(pivot_cols):
        lead = basis[k].get(c, 0)
        if lead == 0:
            swap = next((j for j in range(k + 1, len(basis)) if basis[j].get(c, 0) != 0), None)
            if swap is None:
                return False
            basis[k], basis[swap] = basis[swap], basis[k]
            lead = basis[k][c]
        basis[k] = {j: x / lead for j, x in basis[k].items()}
        for j in range(len(basis)):
            if j != k and basis[j].get(c, 0) != 0:
                basis[j] = _axpy(basis[j], -basis[j][c], basis[k])

    pivot_rows = {r for r, _ in profile}
    for r, row in rows.items():
        if r in pivot_rows:
            continue
        residual = dict(row)
        for k, c in enumerate(pivot_cols):
            coeff = row.get(c, 0)
            if coeff:
                residual = _axpy(residual, -coeff, basis[k])
        if residual:
            return False
    return True


def _axpy(row, factor, other):
    out = dict(row)
    for j, x in other.items():
        v = out.get(j, 0) + factor * x
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return out


def rank(M, method="bareiss"):
    """
    Exact rank over Q. The modular method eliminates over F_p and certifies the pivots it found
    exactly; the full fraction-free elimination only runs when no prime yields a certified profile.
    """
    if method not in RANK_METHODS:
        raise ValueError(f"Unknown rank method '{method}'. Available: {', '.join(RANK_METHODS)}")
    if M.is_zero():
        return 0

    if method == "modular":
        for p in PRIMES:
            try:
                profile = rank_profile_modp(M, p)
            except ValueError:
                continue
            if certify_profile(M, profile):
                return len(profile)
            logger.warning(f"[WARNING]: Rank {len(profile)} modulo {p} failed the exact certificate")
        logger.info("\t- [INFO]: Falling back to the fraction-free elimination")
    return len(rank_profile(M))


def nullity(M, method="bareiss"):
    """Dimension of the kernel of M acting on column vectors."""
    return M.n_cols - rank(M, method=method)


def betti(dims, ranks):
    """
    Betti_p = dims_p - ranks_p - ranks_{p+1}, where ranks_p is the rank of the boundary
    leaving degree p (aligned with dims).
    """
    dims, ranks = list(dims), list(ranks)
    if len(dims) != len(ranks):
        raise InconsistentDims(f"Got {len(dims)} dimensions but {len(ranks)} ranks")
    if any(d < 0 for d in dims) or any(r < 0 for r in ranks):
        raise InconsistentDims("Dimensions and ranks must be nonnegative")

    bettis = []
    for p, d in enumerate(dims):
        incoming = ranks[p + 1] if p + 1 < len(ranks) else 0
        b = d - ranks[p] - incoming
        if b < 0:
            raise InconsistentDims(f"Negative Betti number at position {p} (dim={d}, ranks={ranks[p]}, {incoming})")
        bettis.append(b)
    return bettis
