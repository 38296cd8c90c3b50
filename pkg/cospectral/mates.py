from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional, Tuple

from algebra.matrices import IntMatrix, all_ones_matrix
from algebra.polynomials import charpoly
from cospectral.conjugator import (
    NotControllableError,
    RegularRationalOrthogonal,
    generalized_cospectral,
    recover_conjugator,
)
from graph.signed_graph import SignedGraph, adjacency_matrix, complement_matrix, is_isomorphic, permute

logger = logging.getLogger(__name__)

DEFAULT_MATE_MAX_N = 5
MATE_HARD_CAP = 6

# Base-3 digit per vertex pair: no edge, positive edge, negative edge.
_DIGIT_SIGN = (0, 1, -1)


class MateSearchLimitError(ValueError):
    pass


def vertex_pairs(n: int) -> List[Tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def candidate_graph(n: int, index: int) -> SignedGraph:
    """Decode a candidate index; digit k (least significant first) is pair k in lexicographic order."""
    edges = []
    for u, v in vertex_pairs(n):
        index, digit = divmod(index, 3)
        if digit:
            edges.append((u, v, _DIGIT_SIGN[digit]))
    return SignedGraph.from_edges(n, edges)


def candidate_index(g: SignedGraph) -> int:
    index = 0
    for k, (u, v) in enumerate(vertex_pairs(g.n)):
        s = g.sign(u, v)
        index += 3**k * _DIGIT_SIGN.index(s)
    return index


def _candidate_matrix(n: int, index: int, pairs: List[Tuple[int, int]]) -> Tuple[IntMatrix, int]:
    rows = [[0] * n for _ in range(n)]
    edges = 0
    for u, v in pairs:
        index, digit = divmod(index, 3)
        if digit:
            rows[u][v] = rows[v][u] = _DIGIT_SIGN[digit]
            edges += 1
    return IntMatrix.from_rows(rows), edges


def _scan_range(
    bounds: Tuple[int, int], n: int, edge_count: int, chi: Tuple[int, ...], chi_complement: Tuple[int, ...]
) -> Tuple[List[int], int]:
    """Indices in [start, stop) sharing the generalized spectrum, and how many were pruned."""
    start, stop = bounds
    pairs = vertex_pairs(n)
    ones = all_ones_matrix(n) - IntMatrix.identity(n)
    matches: List[int] = []
    pruned = 0
    for index in range(start, stop):
        a, edges = _candidate_matrix(n, index, pairs)
        # trace(A^2) is twice the edge count
        if edges != edge_count or charpoly(a).coeffs != chi:
            pruned += 1
            continue
        if charpoly(ones - a).coeffs != chi_complement:
            pruned += 1
            continue
        matches.append(index)
    return matches, pruned


@dataclass(frozen=True)
class MateClass:
    """Generalized cospectral mates of the base that are isomorphic to each other."""

    representative: SignedGraph
    indices: Tuple[int, ...]
    isomorphic_to_base: bool
    witness: Optional[Tuple[int, ...]] = None
    conjugator: Optional[RegularRationalOrthogonal] = None

    def to_json(self) -> Dict:
        out: Dict = {
            "representative": [list(e) for e in self.representative.sorted_edges()],
            "index": str(self.indices[0]),
            "size": len(self.indices),
            "isomorphic_to_base": self.isomorphic_to_base,
            "witness": None if self.witness is None else list(self.witness),
        }
        if self.conjugator is not None:
            out["conjugator_level"] = self.conjugator.level
            out["conjugator_lift"] = self.conjugator.lift.to_rows()
        return out


@dataclass(frozen=True)
class MateReport:
    base: SignedGraph
    search_space_size: int
    examined: int
    pruned_count: int
    classes: Tuple[MateClass, ...] = field(default_factory=tuple)
    seed: int = 0

    @property
    def complete(self) -> bool:
        return self.examined == self.search_space_size

    @property
    def mate_count(self) -> int:
        return sum(len(c.indices) for c in self.classes)

    @property
    def dgs_empirical(self) -> Optional[bool]:
        """None when the search stopped early."""
        if not self.complete:
            return None
        return all(c.isomorphic_to_base for c in self.classes)

    def to_json(self) -> Dict:
        return {
            "n": self.base.n,
            "base_index": str(candidate_index(self.base)),
            "search_space_size": str(self.search_space_size),
            "examined": str(self.examined),
            "pruned_count": str(self.pruned_count),
            "complete": self.complete,
            "dgs_empirical": self.dgs_empirical,
            "mate_count": self.mate_count,
            "classes": [c.to_json() for c in self.classes],
            "seed": self.seed,
        }


def _chunks(total: int, parts: int) -> List[Tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out, start = [], 0
    for k in range(parts):
        stop = start + step + (1 if k < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def _classify(base: SignedGraph, indices: List[int], controllable_error: Optional[str]) -> List[MateClass]:
    groups: List[Tuple[SignedGraph, List[int]]] = []
    for index in indices:
        g = candidate_graph(base.n, index)
        for rep, members in groups:
            if is_isomorphic(rep, g, max_n=MATE_HARD_CAP) is not None:
                members.append(index)
                break
        else:
            groups.append((g, [index]))

    classes = []
    for rep, members in groups:
        witness = is_isomorphic(base, rep, max_n=MATE_HARD_CAP)
        conjugator = None
        if witness is None and controllable_error is None:
            conjugator = recover_conjugator(base, rep)
        classes.append(
            MateClass(
                representative=rep,
                indices=tuple(members),
                isomorphic_to_base=witness is not None,
                witness=witness,
                conjugator=conjugator,
            )
        )
    return classes


def mate_search(
    g: SignedGraph,
    max_n: int = DEFAULT_MATE_MAX_N,
    budget: Optional[int] = None,
    workers: int = 1,
    seed: int = 0,
) -> MateReport:
    """
    Enumerate every signed graph on g.n vertices and keep those generalized
    cospectral with g, grouped by isomorphism. ``budget`` caps the number of
    candidates examined (a prefix of the index range); the report is then
    incomplete. Results do not depend on ``workers``.
    """
    cap = min(max_n, MATE_HARD_CAP)
    if g.n > cap:
        raise MateSearchLimitError(f"n={g.n} exceeds cap {cap} for mate search")
    if budget is not None and budget < 0:
        raise ValueError("budget must be non-negative")
    total = 3 ** (g.n * (g.n - 1) // 2)
    examined = total if budget is None else min(budget, total)

    scan = partial(
        _scan_range,
        n=g.n,
        edge_count=len(g.edges),
        chi=charpoly(adjacency_matrix(g)).coeffs,
        chi_complement=charpoly(complement_matrix(g)).coeffs,
    )
    ranges = _chunks(examined, workers)
    if workers > 1 and examined:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(scan, ranges))
    else:
        results = [scan(r) for r in ranges]

    indices = sorted(i for found, _ in results for i in found)
    pruned = sum(p for _, p in results)
    logger.info(
        "mate search n=%d: examined %d of %d candidates, %d mates", g.n, examined, total, len(indices)
    )

    try:
        recover_conjugator(g, g)
        controllable_error = None
    except NotControllableError as exc:
        controllable_error = str(exc)
    classes = _classify(g, indices, controllable_error)
    for c in classes:
        if not generalized_cospectral(g, c.representative):
            raise RuntimeError(f"candidate {c.indices[0]} passed the scan but is not cospectral")
        if c.witness is not None and permute(g, c.witness) != c.representative:
            raise RuntimeError(f"isomorphism witness for candidate {c.indices[0]} does not map the base")
    return MateReport(
        base=g,
        search_space_size=total,
        examined=examined,
        pruned_count=pruned,
        classes=tuple(classes),
        seed=seed,
    )
