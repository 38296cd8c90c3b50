from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

from algebra.matrices import IntMatrix
from algebra.polynomials import IntPoly, charpoly, substitute_square
from graph.signed_graph import Bipartition, SignedGraph, adjacency_matrix, find_bipartition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BipartiteBlocks:
    """
    A reordered by ``ordering`` is [[0, B], [B^T, 0]] with B of shape
    s x (n - s), the smaller side first.
    """

    n: int
    ordering: Tuple[int, ...]
    s: int
    b: IntMatrix
    bipartition: Bipartition

    @property
    def delta(self) -> int:
        return self.n % 2

    @property
    def balanced(self) -> bool:
        """True when s equals floor(n/2), the only shape the certifier accepts."""
        return self.s == self.n // 2

    def gram(self) -> IntMatrix:
        return self.b @ self.b.T

    def gram_transpose(self) -> IntMatrix:
        return self.b.T @ self.b


def delta_of(n: int) -> int:
    """ceil(n/2) - floor(n/2)."""
    return n % 2


def bipartite_blocks(g: SignedGraph) -> BipartiteBlocks:
    """Raises OddCycleError when g has no bipartition."""
    part = find_bipartition(g)
    a = adjacency_matrix(g)
    b = a.submatrix(part.left, part.right)
    blocks = BipartiteBlocks(n=g.n, ordering=part.ordering(), s=part.s, b=b, bipartition=part)
    if not blocks.balanced:
        logger.info("bipartition sides %d/%d are unbalanced for n=%d", part.s, g.n - part.s, g.n)
    return blocks


def gram_charpoly(blocks: BipartiteBlocks) -> IntPoly:
    """Characteristic polynomial of B B^T."""
    return charpoly(blocks.gram())


def verify_chiab(chi: IntPoly, chi_gram: IntPoly, n: int) -> bool:
    """chi(x) == x^delta * chi_gram(x^2), exactly."""
    return chi == substitute_square(chi_gram).shift(delta_of(n))


def verify_chiab_transpose(chi: IntPoly, chi_gram_transpose: IntPoly, n: int) -> bool:
    """x^delta * chi(x) == chi(B^T B; x^2), the companion identity for the other Gram matrix."""
    return chi.shift(delta_of(n)) == substitute_square(chi_gram_transpose)


def verify_abb(delta_a: int, delta_gram: int, n: int) -> bool:
    """Delta_A == 4^floor(n/2) * Delta_gram^2."""
    return delta_a == 4 ** (n // 2) * delta_gram * delta_gram


def coefficient_cdelta(chi: IntPoly, n: int) -> int:
    """Coefficient of x^delta: constant term for even n, linear term for odd n."""
    return chi.coefficient(delta_of(n))
