from fractions import Fraction

import numpy as np
import pytest
import sympy

from tropocat.complexes import linalg
from tropocat.complexes.linalg import (SparseRationalMatrix, betti, certify_profile, nullity, rank, rank_modp,
                                       rank_profile, rank_profile_modp)
from tropocat.errors import InconsistentDims


def random_integer_matrix(rng, n_rows, n_cols, low=-3, high=4, density=1.0):
    values = rng.integers(low, high, size=(n_rows, n_cols))
    mask = rng.random((n_rows, n_cols)) < density
    return SparseRationalMatrix.from_dense((values * mask).tolist())


def sympy_rank(M):
    dense = [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M.to_dense()]
    return sympy.Matrix(M.n_rows, M.n_cols, lambda i, j: dense[i][j]).rank()


def test_matrix_invariants():
    M = SparseRationalMatrix(2, 3, [(1, 2, "1/2"), (0, 0, 3)])
    assert M.entries == ((0, 0, Fraction(3)), (1, 2, Fraction(1, 2)))
    assert M.nnz == 2
    assert M.transpose().shape == (3, 2)
    assert M.to_dense() == [[3, 0, 0], [0, 0, Fraction(1, 2)]]

    with pytest.raises(ValueError):
        SparseRationalMatrix(2, 2, [(0, 0, 0)])
    with pytest.raises(ValueError):
        SparseRationalMatrix(2, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(ValueError):
        SparseRationalMatrix(2, 2, [(2, 0, 1)])
    with pytest.raises(ValueError):
        SparseRationalMatrix.from_dense([[1, 2], [3]])

    summed = SparseRationalMatrix.from_entries(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 1, 3)])
    assert summed.entries == ((1, 1, Fraction(5)),)


def test_matmul():
    A = SparseRationalMatrix.from_dense([[1, 2], [0, 1]])
    B = SparseRationalMatrix.from_dense([[1, -2], [0, 1]])
    assert A @ B == SparseRationalMatrix.from_dense([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        A @ SparseRationalMatrix.zeros(3, 1)


def test_small_ranks():
    assert rank(SparseRationalMatrix.zeros(4, 5)) == 0
    assert rank(SparseRationalMatrix.zeros(0, 3)) == 0
    assert rank(SparseRationalMatrix.from_dense([[1 if i == j else 0 for j in range(6)] for i in range(6)])) == 6
    assert rank(SparseRationalMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])) == 2
    assert rank(SparseRationalMatrix.from_dense([["1/2", "1/3"], ["3/2", 1]])) == 1
    assert nullity(SparseRationalMatrix.from_dense([[1, 2, 3], [2, 4, 6]])) == 2


def test_rank_profile_pivots():
    M = SparseRationalMatrix.from_dense([[0, 1, 1], [0, 0, 2], [0, 3, 0]])
    profile = rank_profile(M)
    assert len(profile) == 2
    assert len({r for r, _ in profile}) == len({c for _, c in profile}) == 2
    assert all(c != 0 for _, c in profile)


def test_product_rank_matches_sympy():
    rng = np.random.default_rng(0)
    A = random_integer_matrix(rng, 50, 30)
    B = random_integer_matrix(rng, 30, 50)
    M = A @ B
    r = rank(M)
    assert r == sympy_rank(M)
    assert r <= 30


def test_sparse_ranks_match_sympy():
    rng = np.random.default_rng(5)
    for _ in range(10):
        n_rows, n_cols = (int(x) for x in rng.integers(1, 15, size=2))
        M = random_integer_matrix(rng, n_rows, n_cols, low=-2, high=3, density=0.3)
        assert rank(M) == sympy_rank(M)


def test_rank_invariance():
    rng = np.random.default_rng(11)
    M = random_integer_matrix(rng, 12, 9, density=0.4)
    r = rank(M)
    assert rank(M.transpose()) == r
    rows = [int(x) for x in rng.permutation(12)]
    cols = [int(x) for x in rng.permutation(9)]
    assert rank(M.permute(rows, cols)) == r
    with pytest.raises(ValueError):
        M.permute([0] * 12, cols)


def test_modular_rank():
    M = SparseRationalMatrix.from_dense([[2, 0], [0, 3]])
    assert rank_modp(M, 2) == 1
    assert rank_modp(M, 3) == 1
    assert rank_modp(M, 7) == 2
    assert rank(M, method="modular") == 2
    with pytest.raises(ValueError):
        rank_modp(SparseRationalMatrix.from_dense([["1/2"]]), 2)
    with pytest.raises(ValueError):
        rank(M, method="gauss")


def count_calls(monkeypatch, name):
    calls = []
    original = getattr(linalg, name)

    def wrapped(*args, **kwargs):
        calls.append(args)
        return original(*args, **kwargs)

    monkeypatch.setattr(linalg, name, wrapped)
    return calls


def test_modular_rank_skips_exact_elimination(monkeypatch):
    exact = count_calls(monkeypatch, "rank_profile")
    modular = count_calls(monkeypatch, "rank_profile_modp")
    M = SparseRationalMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M, method="modular") == 2
    assert len(exact) == 0
    assert len(modular) == 1

    rng = np.random.default_rng(3)
    product = random_integer_matrix(rng, 20, 6) @ random_integer_matrix(rng, 6, 20)
    assert rank(product, method="modular") == sympy_rank(product)
    assert len(exact) == 0


def test_modular_rank_falls_back_when_uncertified(monkeypatch):
    # Modulo 2 the first row vanishes, so the pivots found there miss a row
    monkeypatch.setattr(linalg, "PRIMES", (2,))
    exact = count_calls(monkeypatch, "rank_profile")
    M = SparseRationalMatrix.from_dense([[2, 0], [0, 1]])
    assert rank(M, method="modular") == 2
    assert len(exact) == 1


def test_certify_profile():
    M = SparseRationalMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert certify_profile(M, rank_profile(M))
    assert certify_profile(M, rank_profile_modp(M, 7))
    assert not certify_profile(M, [(0, 0)])
    # Dependent pivot rows
    assert not certify_profile(M, [(0, 0), (1, 1)])
    assert not certify_profile(M, [(0, 0), (2, 0)])


def test_betti():
    assert betti([1, 2, 1], [0, 1, 1]) == [0, 0, 0]
    assert betti([1, 3, 1], [0, 1, 0]) == [0, 2, 1]
    with pytest.raises(InconsistentDims):
        betti([1, 2], [0])
    with pytest.raises(InconsistentDims):
        betti([1, -2], [0, 0])
    with pytest.raises(InconsistentDims):
        betti([1, 1], [0, 2])
