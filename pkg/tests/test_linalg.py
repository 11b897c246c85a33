from fractions import Fraction

import pytest

from spherical_tduality import linalg
from conftest import oracle_rank

F = Fraction


def M(rows):
    return [[F(x) for x in row] for row in rows]


def test_rref_rank_simple():
    A = M([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, pivots = linalg.rref(A)
    assert len(pivots) == 2 == linalg.rank(A)
    # A unchanged
    assert A[1][1] == 4


def test_rank_matches_oracle_on_randomish_matrices():
    import random
    rng = random.Random(7)
    for _ in range(25):
        rows = rng.randrange(0, 6)
        cols = rng.randrange(0, 6)
        A = [[F(rng.randrange(-3, 4)) for _ in range(cols)] for _ in range(rows)]
        if rows and not cols:
            A = [[] for _ in range(rows)]
        assert linalg.rank(A) == oracle_rank(A)


def test_nullspace_is_kernel():
    A = M([[1, 2, 0], [0, 0, 1]])
    basis = linalg.nullspace(A, 3)
    assert len(basis) == 1
    for v in basis:
        assert all(x == 0 for x in linalg.mat_vec(A, v))


def test_nullspace_edge_shapes():
    assert linalg.nullspace([], 3) == [
        [F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(0), F(0), F(1)]]
    assert linalg.nullspace(M([[1], [0]]), 1) == []
    assert linalg.nullspace([], 0) == []


def test_solve_consistent_and_inconsistent():
    A = M([[1, 1], [0, 1]])
    x = linalg.solve(A, [F(3), F(1)], 2)
    assert linalg.mat_vec(A, x) == [F(3), F(1)]
    A2 = M([[1, 1], [1, 1]])
    assert linalg.solve(A2, [F(0), F(1)], 2) is None


def test_mat_mul_shapes():
    A = M([[1, 2], [3, 4]])
    B = M([[0, 1], [1, 0]])
    assert linalg.mat_mul(A, B) == M([[2, 1], [4, 3]])
    assert linalg.mat_mul([], B) == []
    zero_cols = [[] for _ in range(2)]
    assert linalg.mat_mul(zero_cols, [], cols=3) == linalg.zeros(2, 3)
    with pytest.raises(ValueError):
        linalg.mat_mul(A, M([[1, 2]]))


def test_echelon_accumulator_picks_independent_vectors():
    ech = linalg.Echelon()
    assert ech.insert([F(1), F(0)])
    assert not ech.insert([F(2), F(0)])
    assert ech.insert([F(1), F(1)])
    assert ech.contains([F(5), F(-7)])
