import random
from fractions import Fraction

import pytest

from zzgrade.exactq import (QMatrix, RowSpace, inverse, kernel, rank,
                            rank_rows, solve)


def test_rank_identity():
    assert rank(QMatrix.identity(3)) == 3


def test_rank_single_row():
    assert rank(QMatrix([[1, 1]])) == 1


def test_rank_all_ones():
    assert rank(QMatrix([[1] * 4 for _ in range(4)])) == 1


def test_kernel_single_row():
    k = kernel(QMatrix([[1, 1]]))
    assert k.cols == 1
    (a,), (b,) = k.entries
    assert a + b == 0 and (a, b) != (0, 0)


def test_kernel_identity_trivial():
    assert kernel(QMatrix.identity(4)).cols == 0


def test_kernel_zero_matrix():
    assert kernel(QMatrix.zeros(2, 2)).cols == 2


def test_solve_identity():
    assert solve(QMatrix.identity(3), (1, 2, 3)) == (1, 2, 3)


def test_solve_underdetermined():
    x = solve(QMatrix([[1, 1]]), (2,))
    assert x is not None and x[0] + x[1] == 2


def test_solve_inconsistent():
    assert solve(QMatrix([[1, 0], [1, 0]]), (0, 1)) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(QMatrix.identity(2), (1, 2, 3))


def test_rank_plus_nullity(seed=7):
    rng = random.Random(seed)
    for _ in range(25):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = QMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                      for _ in range(cols)] for _ in range(rows)])
        ker = kernel(m)
        assert rank(m) + ker.cols == cols
        for col in ker.columns():
            assert all(v == 0 for v in m.matvec(col))


def test_solve_reproduces_rhs_exactly(seed=11):
    rng = random.Random(seed)
    for _ in range(25):
        n = rng.randint(1, 5)
        m = QMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n + 1)])
        x0 = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]
        b = m.matvec(x0)
        x = solve(m, b)
        assert x is not None
        assert m.matvec(x) == b


def test_inverse_roundtrip():
    m = QMatrix([[2, 1], [1, 1]])
    assert m.matmul(inverse(m)) == QMatrix.identity(2)
    with pytest.raises(ValueError):
        inverse(QMatrix([[1, 1], [1, 1]]))


def test_rank_rows_agrees_with_bareiss(seed=3):
    rng = random.Random(seed)
    for _ in range(30):
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                 for _ in range(5)] for _ in range(4)]
        assert rank_rows(rows) == rank(QMatrix(rows))


def test_rowspace_membership_and_dim():
    rs = RowSpace(4)
    assert rs.add((1, 0, 1, 0))
    assert rs.add((0, 1, 0, 0))
    assert not rs.add((1, 1, 1, 0))
    assert rs.dim == 2
    assert rs.contains({0: Fraction(2), 2: Fraction(2)})
    assert not rs.contains((0, 0, 1, 0))


def test_rowspace_insertion_order_invariant(seed=5):
    rng = random.Random(seed)
    vecs = [tuple(rng.randint(-2, 2) for _ in range(5)) for _ in range(6)]
    a, b = RowSpace(5), RowSpace(5)
    for v in vecs:
        a.add(v)
    for v in reversed(vecs):
        b.add(v)
    assert a.pivot_rows == b.pivot_rows
