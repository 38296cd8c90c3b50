from __future__ import annotations

import random
from typing import List, Optional

from algebra.matrices import IntMatrix
from algebra.polynomials import IntPoly, charpoly
from certifier.blocks import bipartite_blocks, coefficient_cdelta
from certifier.walk import ControllabilityClass, walk_matrix
from graph.signed_graph import SignedGraph, adjacency_matrix, permute

_SIGNS = (-1, 1)


def random_signed_graph(rng: random.Random, n: int, density: float = 0.5) -> SignedGraph:
    edges = [
        (u, v, rng.choice(_SIGNS)) for u in range(n) for v in range(u + 1, n) if rng.random() < density
    ]
    return SignedGraph.from_edges(n, edges)


def random_permutation(rng: random.Random, n: int) -> List[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def _unimodular_rows(rng: random.Random, s: int) -> List[List[int]]:
    """Lower-triangular, +-1 diagonal, {-1, 0, 1} below, then shuffled rows, columns and signs."""
    rows = [[rng.choice((-1, 0, 1)) if j < i else (rng.choice(_SIGNS) if j == i else 0) for j in range(s)] for i in range(s)]
    rng.shuffle(rows)
    cols = random_permutation(rng, s)
    flips = [rng.choice(_SIGNS) for _ in range(s)]
    return [[flips[i] * row[c] for c in cols] for i, row in enumerate(rows)]


def _graph_from_block(n: int, b: List[List[int]]) -> SignedGraph:
    s = len(b)
    edges = [(i, s + j, x) for i, row in enumerate(b) for j, x in enumerate(row) if x]
    return SignedGraph.from_edges(n, edges)


def _accepts(g: SignedGraph) -> bool:
    blocks = bipartite_blocks(g)
    if not blocks.balanced:
        return False
    return abs(coefficient_cdelta(charpoly(adjacency_matrix(g)), g.n)) == 1


def random_bipartite_unit_graph(rng: random.Random, n: int, attempts: int = 30) -> SignedGraph:
    """
    Random signed bipartite graph with sides floor(n/2) and ceil(n/2) and
    coefficient c_delta = +-1, vertices shuffled. Falls back to a unimodular
    block (plus a zero column for odd n) when random blocks keep failing.
    """
    s = n // 2
    for _ in range(attempts):
        b = [[rng.choice((-1, 0, 0, 1)) for _ in range(n - s)] for _ in range(s)]
        g = permute(_graph_from_block(n, b), random_permutation(rng, n))
        if _accepts(g):
            return g
    b = [row + [0] * (n - 2 * s) for row in _unimodular_rows(rng, s)]
    return permute(_graph_from_block(n, b), random_permutation(rng, n))


def random_controllable_graph(rng: random.Random, n: int, attempts: int = 2000) -> Optional[SignedGraph]:
    for _ in range(attempts):
        g = random_signed_graph(rng, n, density=rng.choice((0.3, 0.5, 0.7)))
        if walk_matrix(adjacency_matrix(g)).cls is ControllabilityClass.CONTROLLABLE:
            return g
    return None


def random_monic_poly(rng: random.Random, max_degree: int, max_coeff: int) -> IntPoly:
    degree = rng.randint(1, max_degree)
    return IntPoly(tuple(rng.randint(-max_coeff, max_coeff) for _ in range(degree)) + (1,))


def random_int_matrix(rng: random.Random, n: int, bound: int = 9) -> IntMatrix:
    rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    if n > 1 and rng.random() < 0.2:
        # force a rank drop
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        rows[i] = [k * x for x in rows[j]]
    return IntMatrix.from_rows(rows)
