from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from algebra.arith import FactorEffort, IntFactorization, factor_integer
from algebra.matrices import DimensionError, IntMatrix, columns_to_matrix, det, matrix_power_columns, ones, rank_rational

logger = logging.getLogger(__name__)


class ControllabilityClass(str, Enum):
    CONTROLLABLE = "Controllable"
    ALMOST_CONTROLLABLE = "AlmostControllable"
    NEITHER = "Neither"


@dataclass(frozen=True)
class WalkMatrixReport:
    """
    W = [e, Ae, ..., A^(n-1) e] together with its rank over Q.

    ``det_w_factorization`` is filled only when the determinant is nonzero
    and a factoring budget was supplied.
    """

    w: IntMatrix
    rank: int
    cls: ControllabilityClass
    det_w: int
    det_w_factorization: Optional[IntFactorization] = None

    @property
    def n(self) -> int:
        return self.w.rows


def classify(rank: int, n: int) -> ControllabilityClass:
    if rank == n:
        return ControllabilityClass.CONTROLLABLE
    if rank == n - 1:
        return ControllabilityClass.ALMOST_CONTROLLABLE
    return ControllabilityClass.NEITHER


def walk_matrix(a: IntMatrix, effort: FactorEffort | None = None) -> WalkMatrixReport:
    """
    Columns are built by n-1 successive matrix-vector products. Pass ``effort``
    to also factor det W.
    """
    if not a.is_square:
        raise DimensionError(f"walk matrix needs a square matrix, got {a.rows}x{a.cols}")
    if not a.is_symmetric():
        raise DimensionError("walk matrix needs a symmetric matrix")
    n = a.rows
    w = columns_to_matrix(matrix_power_columns(a, ones(n), n), n)
    det_w = det(w)
    rank = n if det_w != 0 else rank_rational(w)
    cls = classify(rank, n)
    factorization = factor_integer(det_w, effort) if det_w != 0 and effort is not None else None
    logger.debug("walk matrix n=%d rank=%d class=%s", n, rank, cls.value)
    return WalkMatrixReport(w=w, rank=rank, cls=cls, det_w=det_w, det_w_factorization=factorization)
