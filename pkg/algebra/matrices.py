from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence, Tuple

from algebra.arith import NotPrimeError, require_prime

logger = logging.getLogger(__name__)

__all__ = [
    "DimensionError",
    "IntMatrix",
    "NotPrimeError",
    "RatMatrix",
    "SingularMatrixError",
    "det",
    "inverse_rational",
    "rank_mod_p",
    "rank_rational",
    "row_echelon_mod_p",
]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, arbitrary precision entries."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise DimensionError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls.from_rows(columns).transpose()

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def matvec(self, vec: Sequence[int]) -> Tuple[int, ...]:
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} against {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec) if a) for i in range(self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = [other.col(j) for j in range(other.cols)]
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(sum(a * b for a, b in zip(self.row(i), c) if a) for i in range(self.rows) for c in other_cols),
        )

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def mod(self, p: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(a % p for a in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionError("row count mismatch")
        return IntMatrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(row_idx), len(col_idx), tuple(self[i, j] for i in row_idx for j in col_idx))

    def to_text(self) -> str:
        """Graph-file layout: a size header line followed by one row per line."""
        header = str(self.rows) if self.is_square else f"{self.rows} {self.cols}"
        return "\n".join([header] + [" ".join(str(x) for x in self.row(i)) for i in range(self.rows)]) + "\n"


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix of exact rationals; ``Fraction`` keeps lowest terms."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def from_int(cls, m: IntMatrix) -> "RatMatrix":
        return cls(m.rows, m.cols, tuple(Fraction(x) for x in m.entries))

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Tuple[Fraction, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __matmul__(self, other: "RatMatrix | IntMatrix") -> "RatMatrix":
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = [other.col(j) for j in range(other.cols)]
        return RatMatrix(
            self.rows,
            other.cols,
            tuple(
                sum((a * b for a, b in zip(self.row(i), c) if a), Fraction(0))
                for i in range(self.rows)
                for c in other_cols
            ),
        )

    def __rmatmul__(self, other: IntMatrix) -> "RatMatrix":
        if isinstance(other, IntMatrix):
            return RatMatrix.from_int(other) @ self
        return NotImplemented

    def matvec(self, vec: Sequence[Fraction | int]) -> Tuple[Fraction, ...]:
        return tuple(sum((a * b for a, b in zip(self.row(i), vec)), Fraction(0)) for i in range(self.rows))

    def scale(self, k: Fraction | int) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols, tuple(a.numerator for a in self.entries))

    def common_denominator(self) -> int:
        return lcm(*(a.denominator for a in self.entries)) if self.entries else 1

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows)) + "\n"


def _require_square(m: IntMatrix) -> None:
    if not m.is_square:
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")


def det(m: IntMatrix) -> int:
    """Bareiss fraction-free elimination; every division is exact."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank_rational(m: IntMatrix) -> int:
    """Rank over Q by fraction-free elimination (works for rectangular input)."""
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        pivot_row = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        for i in range(rank + 1, nrows):
            lead = a[i][col]
            for j in range(col + 1, ncols):
                a[i][j] = (a[i][j] * pivot - lead * a[rank][j]) // prev
            a[i][col] = 0
        prev = pivot
        rank += 1
    return rank


def row_echelon_mod_p(m: IntMatrix, p: int) -> Tuple[List[List[int]], List[int]]:
    """
    Reduced row echelon form over F_p.

    Returns the nonzero rows and the pivot column of each.
    """
    require_prime(p)
    a = [[x % p for x in row] for row in m.to_rows()]
    nrows, ncols = m.rows, m.cols
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if a[i][col]), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = pow(a[r][col], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    return a[:r], pivots


def rank_mod_p(m: IntMatrix, p: int) -> int:
    _, pivots = row_echelon_mod_p(m, p)
    return len(pivots)


def nullspace_mod_p(m: IntMatrix, p: int) -> List[Tuple[int, ...]]:
    """Basis of {x : m x = 0 over F_p}."""
    rows, pivots = row_echelon_mod_p(m, p)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * m.cols
        vec[f] = 1
        for row, pc in zip(rows, pivots):
            vec[pc] = -row[f] % p
        basis.append(tuple(vec))
    return basis


def inverse_rational(m: IntMatrix) -> RatMatrix:
    """Gauss-Jordan over Q."""
    _require_square(m)
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.to_rows())]
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return RatMatrix.from_rows([row[n:] for row in a])


def matrix_power_columns(m: IntMatrix, start: Sequence[int], count: int) -> List[Tuple[int, ...]]:
    """[v, m v, m^2 v, ...] by repeated matrix-vector products."""
    out: List[Tuple[int, ...]] = []
    vec = tuple(start)
    for _ in range(count):
        out.append(vec)
        vec = m.matvec(vec)
    return out


def ones(n: int) -> Tuple[int, ...]:
    return (1,) * n


def all_ones_matrix(n: int) -> IntMatrix:
    return IntMatrix(n, n, (1,) * (n * n))


def columns_to_matrix(columns: Iterable[Sequence[int]], nrows: int) -> IntMatrix:
    cols = [tuple(c) for c in columns]
    return IntMatrix(nrows, len(cols), tuple(c[i] for i in range(nrows) for c in cols))
