from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from algebra.matrices import DimensionError, IntMatrix, RatMatrix, inverse_rational
from algebra.polynomials import charpoly
from certifier.walk import ControllabilityClass, walk_matrix
from graph.signed_graph import SignedGraph, adjacency_matrix, complement_matrix

logger = logging.getLogger(__name__)


class NotControllableError(ValueError):
    pass


class ConjugatorValidationError(ValueError):
    pass


@dataclass(frozen=True)
class RegularRationalOrthogonal:
    """
    Rational Q with Q^T Q = I and Q e = e. ``lift`` is level * q, the
    smallest integral multiple.
    """

    q: RatMatrix
    level: int
    lift: IntMatrix

    @classmethod
    def from_matrix(cls, q: RatMatrix) -> "RegularRationalOrthogonal":
        """Validates regularity and orthogonality; raises ConjugatorValidationError."""
        if q.rows != q.cols:
            raise DimensionError(f"expected a square matrix, got {q.rows}x{q.cols}")
        n = q.rows
        if (q.T @ q).to_rows() != IntMatrix.identity(n).to_rows():
            raise ConjugatorValidationError("Q^T Q is not the identity")
        if any(x != 1 for x in q.matvec((1,) * n)):
            raise ConjugatorValidationError("Q does not fix the all-ones vector")
        lvl = level(q)
        return cls(q=q, level=lvl, lift=q.scale(lvl).to_int())

    @property
    def n(self) -> int:
        return self.q.rows

    def is_permutation(self) -> bool:
        return self.level == 1


def level(q: RatMatrix) -> int:
    """Least k > 0 with k q integral: lcm of the lowest-terms denominators."""
    return q.common_denominator()


def generalized_cospectral(g1: SignedGraph, g2: SignedGraph) -> bool:
    """Same characteristic polynomial for A and for J - I - A."""
    if g1.n != g2.n:
        raise DimensionError(f"size mismatch: {g1.n} vs {g2.n}")
    return charpoly(adjacency_matrix(g1)) == charpoly(adjacency_matrix(g2)) and charpoly(
        complement_matrix(g1)
    ) == charpoly(complement_matrix(g2))


def conjugates(q: RatMatrix, a_from: IntMatrix, a_to: IntMatrix) -> bool:
    return (q.T @ a_from @ q).to_rows() == RatMatrix.from_int(a_to).to_rows()


def recover_conjugator(sigma: SignedGraph, gamma: SignedGraph) -> RegularRationalOrthogonal:
    """
    The unique Q with Q^T A(sigma) Q = A(gamma) for controllable sigma, from
    Q^T = W(gamma) W(sigma)^-1.
    """
    if sigma.n != gamma.n:
        raise DimensionError(f"size mismatch: {sigma.n} vs {gamma.n}")
    a_sigma = adjacency_matrix(sigma)
    a_gamma = adjacency_matrix(gamma)
    w_sigma = walk_matrix(a_sigma)
    if w_sigma.cls is not ControllabilityClass.CONTROLLABLE:
        raise NotControllableError(f"sigma is {w_sigma.cls.value} (rank W = {w_sigma.rank}), not controllable")
    w_gamma = walk_matrix(a_gamma)
    q = (RatMatrix.from_int(w_gamma.w) @ inverse_rational(w_sigma.w)).T
    result = RegularRationalOrthogonal.from_matrix(q)
    if not conjugates(q, a_sigma, a_gamma):
        raise ConjugatorValidationError("Q^T A(sigma) Q differs from A(gamma)")
    logger.info("recovered conjugator for n=%d with level %d", sigma.n, result.level)
    return result


def check_membership(q: RegularRationalOrthogonal, g: SignedGraph) -> bool:
    """True when Q^T A(g) Q is integral."""
    if q.n != g.n:
        raise DimensionError(f"size mismatch: {q.n} vs {g.n}")
    return (q.q.T @ adjacency_matrix(g) @ q.q).is_integral()


def rational_matrix(rows, denominator: int = 1) -> RatMatrix:
    """Integer rows scaled by 1/denominator."""
    return RatMatrix.from_rows([[Fraction(x, denominator) for x in row] for row in rows])
