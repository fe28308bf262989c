from fractions import Fraction

import pytest

from fusionkit.linalg import RationalMatrix, kernel


def test_kernel_of_zero_matrix_is_everything():
    assert kernel(RationalMatrix.zeros(3, 3)).cols == 3


def test_kernel_of_identity_is_trivial():
    assert kernel(RationalMatrix.identity(4)).cols == 0


def test_kernel_of_rank_one_matrix():
    m = RationalMatrix([[1, 2], [2, 4]])
    k = kernel(m)
    assert k.cols == 1
    # spanned by (2, -1) up to scale
    x, y = k.column(0)
    assert x * (-1) == y * 2
    assert (m @ k).is_zero()


def test_kernel_columns_are_independent():
    m = RationalMatrix([[1, 2, 3, 4], [2, 4, 6, 8], [0, 0, 1, 1]])
    k = kernel(m)
    assert k.cols == m.cols - m.rank() == 2
    assert (m @ k).is_zero()
    assert k.rank() == k.cols


def test_zero_row_matrix_behaves_as_zero_map():
    m = RationalMatrix.zeros(0, 5)
    assert m.rank() == 0
    assert kernel(m).cols == 5


def test_rank_and_inverse():
    m = RationalMatrix([[2, 1], [1, 2]])
    assert m.rank() == 2
    inv = m.inverse()
    assert inv @ m == RationalMatrix.identity(2)
    assert inv[0, 0] == Fraction(2, 3)
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2], [2, 4]]).inverse()


def test_matmul_shapes_and_vstack():
    a = RationalMatrix([[1, 0, 2]])
    b = RationalMatrix([[1], [1], [1]])
    assert (a @ b)[0, 0] == 3
    stacked = RationalMatrix.vstack([a, a])
    assert (stacked.rows, stacked.cols) == (2, 3)
    with pytest.raises(ValueError):
        a @ a


def test_solve_matches_inverse():
    m = RationalMatrix([[3, 1], [1, 1]])
    rhs = RationalMatrix([[1, 0], [0, 1]])
    assert m.solve(rhs) == m.inverse()


def test_kron_orders_pairs_row_major():
    a = RationalMatrix([[1, 2]])
    b = RationalMatrix([[1], [3]])
    k = a.kron(b)
    assert (k.rows, k.cols) == (2, 2)
    assert k.data == ((1, 2), (3, 6))
