from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from algebra.arith import require_prime
from algebra.matrices import DimensionError, IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithForm:
    """``u @ m @ v == diag(d)`` with unimodular u, v and d[i] | d[i+1]."""

    d: Tuple[int, ...]
    u: IntMatrix
    v: IntMatrix

    def diagonal_matrix(self) -> IntMatrix:
        rows, cols = self.u.rows, self.v.cols
        out = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(self.d):
            out[i][i] = x
        return IntMatrix.from_rows(out) if rows else IntMatrix.zeros(0, cols)

    def rank_mod(self, p: int) -> int:
        """Rank over F_p read off the invariant factors."""
        return sum(1 for x in self.d if x % p != 0)


class _Reducer:
    """Row/column operations on a working copy, mirrored into U and V."""

    def __init__(self, m: IntMatrix) -> None:
        self.a = m.to_rows()
        self.rows, self.cols = m.rows, m.cols
        self.u = IntMatrix.identity(self.rows).to_rows()
        self.v = IntMatrix.identity(self.cols).to_rows()

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]

    def add_row(self, target: int, source: int, k: int) -> None:
        """row[target] += k * row[source]"""
        self.a[target] = [x + k * y for x, y in zip(self.a[target], self.a[source])]
        self.u[target] = [x + k * y for x, y in zip(self.u[target], self.u[source])]

    def add_col(self, target: int, source: int, k: int) -> None:
        for row in self.a:
            row[target] += k * row[source]
        for row in self.v:
            row[target] += k * row[source]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]

    def smallest_in_block(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.rows):
            for j in range(t, self.cols):
                x = self.a[i][j]
                if x and (best is None or abs(x) < abs(self.a[best[0]][best[1]])):
                    best = (i, j)
        return best

    def smallest_in_cross(self, t: int) -> Tuple[int, int]:
        best = (t, t)
        for i in range(t + 1, self.rows):
            x = self.a[i][t]
            if x and abs(x) < abs(self.a[best[0]][best[1]]):
                best = (i, t)
        for j in range(t + 1, self.cols):
            x = self.a[t][j]
            if x and abs(x) < abs(self.a[best[0]][best[1]]):
                best = (t, j)
        return best

    def clear_cross(self, t: int) -> bool:
        """Reduce row t and column t against the pivot; True when both are zero."""
        pivot = self.a[t][t]
        clean = True
        for i in range(t + 1, self.rows):
            if self.a[i][t]:
                self.add_row(i, t, -(self.a[i][t] // pivot))
                clean = clean and self.a[i][t] == 0
        for j in range(t + 1, self.cols):
            if self.a[t][j]:
                self.add_col(j, t, -(self.a[t][j] // pivot))
                clean = clean and self.a[t][j] == 0
        return clean

    def non_divisible(self, t: int) -> Optional[int]:
        pivot = self.a[t][t]
        for i in range(t + 1, self.rows):
            if any(x % pivot for x in self.a[i][t + 1 :]):
                return i
        return None


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """
    Gcd-driven reduction: bring the smallest nonzero entry of the trailing block
    to the pivot, clear its row and column by Euclidean steps, and fold in any
    row whose entries the pivot does not divide.
    """
    red = _Reducer(m)
    steps = min(m.rows, m.cols)
    for t in range(steps):
        pos = red.smallest_in_block(t)
        if pos is None:
            break
        red.swap_rows(t, pos[0])
        red.swap_cols(t, pos[1])
        while True:
            if not red.clear_cross(t):
                i, j = red.smallest_in_cross(t)
                red.swap_rows(t, i)
                red.swap_cols(t, j)
                continue
            bad = red.non_divisible(t)
            if bad is None:
                break
            red.add_row(t, bad, 1)
        if red.a[t][t] < 0:
            red.negate_row(t)

    d = tuple(red.a[i][i] for i in range(steps))
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("SNF %dx%d -> %s", m.rows, m.cols, d)
    u = IntMatrix.from_rows(red.u) if m.rows else IntMatrix.zeros(0)
    v = IntMatrix.from_rows(red.v) if m.cols else IntMatrix.zeros(0)
    return SmithForm(d=d, u=u, v=v)


def invariant_factors(m: IntMatrix) -> Tuple[int, ...]:
    return smith_normal_form(m).d


def mod_p2_kernel_vector(m: IntMatrix, p: int) -> Optional[Tuple[int, ...]]:
    """
    x with m x = 0 (mod p^2) and x != 0 (mod p), or None.

    Such x exists exactly when p^2 divides the last invariant factor; the last
    column of V is then a witness.
    """
    if not m.is_square:
        raise DimensionError("expected a square matrix")
    require_prime(p)
    if m.rows == 0:
        return None
    snf = smith_normal_form(m)
    if snf.d[-1] % (p * p) != 0:
        return None
    return snf.v.col(m.cols - 1)


def has_mod_p2_kernel_vector(m: IntMatrix, p: int) -> bool:
    return mod_p2_kernel_vector(m, p) is not None


def divisibility_chain_holds(d: List[int] | Tuple[int, ...]) -> bool:
    for a, b in zip(d, d[1:]):
        if a == 0:
            if b != 0:
                return False
        elif b % a != 0:
            return False
    return True
