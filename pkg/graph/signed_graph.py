from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from algebra.matrices import IntMatrix, all_ones_matrix

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]

DEFAULT_ISOMORPHISM_MAX_N = 8


class InvalidGraphError(ValueError):
    pass


class PermutationError(ValueError):
    pass


class IsomorphismLimitError(ValueError):
    pass


class OddCycleError(ValueError):
    """Raised by find_bipartition; ``cycle`` lists the vertices of an odd cycle."""

    def __init__(self, cycle: List[int]) -> None:
        super().__init__(f"graph is not bipartite, odd cycle {cycle}")
        self.cycle = cycle


@dataclass(frozen=True)
class SignedGraph:
    """
    Simple graph on vertices 0..n-1 whose edges carry a sign +1 or -1.

    Edges are stored as (u, v, s) with u < v.
    """

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidGraphError(f"vertex count must be a positive integer, got {self.n!r}")
        seen = set()
        for u, v, s in self.edges:
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise InvalidGraphError(f"edge ({u}, {v}) must satisfy 0 <= u < v < {self.n}")
            if s not in (1, -1):
                raise InvalidGraphError(f"edge ({u}, {v}) has sign {s}, expected +1 or -1")
            if (u, v) in seen:
                raise InvalidGraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int, int]]) -> "SignedGraph":
        """Accepts endpoints in either order; a repeated edge is an error."""
        edges = [(min(u, v), max(u, v), s) for u, v, s in edges]
        normalised = frozenset(edges)
        if len(normalised) != len(edges):
            raise InvalidGraphError(f"{len(edges) - len(normalised)} repeated edge(s) in edge list")
        return cls(n, normalised)

    @classmethod
    def from_matrix(cls, a: IntMatrix) -> "SignedGraph":
        if not a.is_square:
            raise InvalidGraphError("adjacency matrix must be square")
        edges = []
        for i in range(a.rows):
            if a[i, i] != 0:
                raise InvalidGraphError(f"nonzero diagonal entry at ({i}, {i})")
            for j in range(i + 1, a.cols):
                if a[i, j] != a[j, i]:
                    raise InvalidGraphError(f"matrix is not symmetric at ({i}, {j})")
                if a[i, j] not in (-1, 0, 1):
                    raise InvalidGraphError(f"entry {a[i, j]} at ({i}, {j}) is outside {{-1, 0, 1}}")
                if a[i, j]:
                    edges.append((i, j, a[i, j]))
        return cls(a.rows, frozenset(edges))

    @classmethod
    def empty(cls, n: int) -> "SignedGraph":
        return cls(n, frozenset())

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def sign(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        for s in (1, -1):
            if (a, b, s) in self.edges:
                return s
        return 0

    def sign_degrees(self) -> List[Tuple[int, int]]:
        """(positive degree, negative degree) per vertex."""
        pos = [0] * self.n
        neg = [0] * self.n
        for u, v, s in self.edges:
            bucket = pos if s > 0 else neg
            bucket[u] += 1
            bucket[v] += 1
        return list(zip(pos, neg))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        degrees = self.sign_degrees()
        for v in range(self.n):
            g.add_node(v, sign_degree=degrees[v])
        for u, v, s in self.sorted_edges():
            g.add_edge(u, v, sign=s)
        return g


@dataclass(frozen=True)
class Bipartition:
    left: Tuple[int, ...]
    right: Tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.left)

    def ordering(self) -> Tuple[int, ...]:
        return self.left + self.right


def adjacency_matrix(g: SignedGraph) -> IntMatrix:
    a = [[0] * g.n for _ in range(g.n)]
    for u, v, s in g.edges:
        a[u][v] = a[v][u] = s
    return IntMatrix.from_rows(a)


def complement_matrix(g: SignedGraph) -> IntMatrix:
    """J - I - A(g)."""
    return all_ones_matrix(g.n) - IntMatrix.identity(g.n) - adjacency_matrix(g)


def _tree_path(parent: Dict[int, Optional[int]], v: int) -> List[int]:
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _odd_cycle(parent: Dict[int, Optional[int]], u: int, v: int) -> List[int]:
    up = _tree_path(parent, u)
    vp = _tree_path(parent, v)
    on_u = set(up)
    lca = next(x for x in vp if x in on_u)
    head = list(reversed(up[: up.index(lca) + 1]))
    tail = vp[: vp.index(lca)]
    return head + tail


def find_bipartition(g: SignedGraph) -> Bipartition:
    """
    Two-colour the underlying unsigned graph by breadth-first search, one
    component at a time. Each component is oriented so the running sides stay
    as balanced as possible (ties keep the side of the component's smallest
    vertex on the left), then the sides are swapped if needed so that
    |left| <= |right|.
    """
    graph = g.to_networkx()
    left: List[int] = []
    right: List[int] = []
    for comp in sorted(nx.connected_components(graph), key=min):
        root = min(comp)
        parent: Dict[int, Optional[int]] = {root: None}
        colour = {root: 0}
        for pred, child in nx.bfs_edges(graph, root, sort_neighbors=sorted):
            parent[child] = pred
            colour[child] = 1 - colour[pred]
        for u, v in sorted(tuple(sorted(e)) for e in graph.subgraph(comp).edges()):
            if colour[u] == colour[v]:
                raise OddCycleError(_odd_cycle(parent, u, v))
        c0 = sorted(x for x in comp if colour[x] == 0)
        c1 = sorted(x for x in comp if colour[x] == 1)
        keep = (len(left) + len(c0), len(right) + len(c1))
        flip = (len(left) + len(c1), len(right) + len(c0))
        if (abs(flip[0] - flip[1]), flip[0] > flip[1]) < (abs(keep[0] - keep[1]), keep[0] > keep[1]):
            c0, c1 = c1, c0
        left.extend(c0)
        right.extend(c1)
    if len(left) > len(right):
        left, right = right, left
    return Bipartition(tuple(sorted(left)), tuple(sorted(right)))


def _check_permutation(perm: Sequence[int], n: int) -> None:
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise PermutationError(f"{list(perm)} is not a permutation of 0..{n - 1}")


def permutation_matrix(perm: Sequence[int]) -> IntMatrix:
    """P with P[perm[j], j] = 1, so (P^T A P)[i, j] = A[perm[i], perm[j]]."""
    n = len(perm)
    _check_permutation(perm, n)
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = 1
    return IntMatrix.from_rows(rows)


def permute(g: SignedGraph, perm: Sequence[int]) -> SignedGraph:
    """Relabel so that new vertex i is old vertex perm[i]."""
    _check_permutation(perm, g.n)
    inverse = [0] * g.n
    for new, old in enumerate(perm):
        inverse[old] = new
    return SignedGraph.from_edges(g.n, ((inverse[u], inverse[v], s) for u, v, s in g.edges))


def is_isomorphic(
    g1: SignedGraph, g2: SignedGraph, max_n: int = DEFAULT_ISOMORPHISM_MAX_N
) -> Optional[Tuple[int, ...]]:
    """
    A permutation p with permute(g1, p) == g2, or None.

    Sign-preserving vertex permutations only; VF2 matching with the
    (positive, negative) degree pair as the vertex invariant.
    """
    if g1.n != g2.n:
        raise PermutationError(f"size mismatch: {g1.n} vs {g2.n}")
    if g1.n > max_n:
        raise IsomorphismLimitError(f"n={g1.n} exceeds isomorphism limit {max_n}")
    if sorted(g1.sign_degrees()) != sorted(g2.sign_degrees()):
        return None
    matcher = GraphMatcher(
        g1.to_networkx(),
        g2.to_networkx(),
        node_match=lambda a, b: a["sign_degree"] == b["sign_degree"],
        edge_match=lambda a, b: a["sign"] == b["sign"],
    )
    if not matcher.is_isomorphic():
        return None
    perm = [0] * g1.n
    for old, new in matcher.mapping.items():
        perm[new] = old
    return tuple(perm)
