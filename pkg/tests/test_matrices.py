import random
from fractions import Fraction

import pytest
import sympy

from algebra.arith import NotPrimeError
from algebra.matrices import (
    DimensionError,
    IntMatrix,
    RatMatrix,
    SingularMatrixError,
    det,
    inverse_rational,
    nullspace_mod_p,
    rank_mod_p,
    rank_rational,
    row_echelon_mod_p,
)


def _random_matrix(rng, rows, cols, bound=5):
    return IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def test_construction_and_shape():
    m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert (m.rows, m.cols) == (2, 3)
    assert m[1, 2] == 6
    assert m.col(1) == (2, 5)
    assert m.T.to_rows() == [[1, 4], [2, 5], [3, 6]]
    with pytest.raises(DimensionError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_arithmetic():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.identity(2)
    assert (a @ b) == a
    assert (a + b).to_rows() == [[2, 2], [3, 5]]
    assert (a - a) == IntMatrix.zeros(2)
    assert a.matvec((1, 1)) == (3, 7)
    assert a.mod(3).to_rows() == [[1, 2], [0, 1]]
    with pytest.raises(DimensionError):
        a @ IntMatrix.zeros(3)


def test_to_text_uses_graph_file_layout():
    assert IntMatrix.from_rows([[0, 1], [1, 0]]).to_text() == "2\n0 1\n1 0\n"


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([], 1),
        ([[7]], 7),
        ([[0, 1], [1, 0]], -1),
        ([[1, 2], [2, 4]], 0),
        ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], -1),
    ],
)
def test_det_examples(rows, expected):
    m = IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0)
    assert det(m) == expected


def test_det_and_rank_match_sympy():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 7)
        m = _random_matrix(rng, n, n)
        if rng.random() < 0.3:
            m = IntMatrix.from_rows(m.to_rows()[:-1] + [list(m.row(0))])
        oracle = sympy.Matrix(m.to_rows())
        assert det(m) == oracle.det()
        assert rank_rational(m) == oracle.rank()


def test_rank_rational_rectangular():
    m = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    assert rank_rational(m) == 1
    assert rank_rational(m.T) == 1


def test_rank_mod_p():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert rank_mod_p(m, 2) == 1
    assert rank_mod_p(m, 3) == 1
    assert rank_mod_p(m, 5) == 2
    with pytest.raises(NotPrimeError):
        rank_mod_p(m, 4)


def test_row_echelon_mod_p_pivots():
    rows, pivots = row_echelon_mod_p(IntMatrix.from_rows([[0, 1, 1], [0, 2, 2], [1, 0, 1]]), 3)
    assert pivots == [0, 1]
    assert rows == [[1, 0, 1], [0, 1, 1]]


def test_nullspace_mod_p_vectors_are_in_kernel():
    m = IntMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    basis = nullspace_mod_p(m, 2)
    assert len(basis) == 1
    for vec in basis:
        assert all(x % 2 == 0 for x in m.matvec(vec))
        assert any(x % 2 for x in vec)


def test_inverse_rational():
    m = IntMatrix.from_rows([[2, 1], [1, 1]])
    inv = inverse_rational(m)
    assert inv.to_rows() == [[1, -1], [-1, 2]]
    third = inverse_rational(IntMatrix.from_rows([[3]]))
    assert third[0, 0] == Fraction(1, 3)
    assert (inverse_rational(IntMatrix.from_rows([[1, 2], [3, 4]])) @ IntMatrix.from_rows([[1, 2], [3, 4]])).to_rows() == [
        [1, 0],
        [0, 1],
    ]
    with pytest.raises(SingularMatrixError):
        inverse_rational(IntMatrix.from_rows([[1, 2], [2, 4]]))


def test_rat_matrix_integrality():
    q = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [0, 1]])
    assert q.common_denominator() == 6
    assert not q.is_integral()
    assert q.scale(6).to_int().to_rows() == [[3, 2], [0, 6]]
