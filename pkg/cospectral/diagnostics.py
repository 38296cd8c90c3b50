from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import sympy

from algebra.arith import require_prime
from algebra.matrices import IntMatrix, det, rank_mod_p
from algebra.polynomials import IntPoly, ModPoly, charpoly, poly_of_matrix
from cospectral.conjugator import RegularRationalOrthogonal, check_membership
from graph.signed_graph import SignedGraph, adjacency_matrix

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")


class DiagnosticPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class FactorIntersection:
    """A repeated irreducible factor phi of chi(A) mod p and how col_p(lift) meets ker phi(A)."""

    phi: ModPoly
    multiplicity: int
    intersects: bool
    det_divisible: Optional[bool] = None

    def to_json(self) -> Dict:
        return {
            "phi": [int(c) for c in self.phi.coeffs],
            "multiplicity": self.multiplicity,
            "intersects": self.intersects,
            "det_divisible": self.det_divisible,
        }


@dataclass(frozen=True)
class IsotropyReport:
    p: int
    level: int
    column_rank: int
    nonzero: bool
    totally_isotropic: bool
    a_invariant: bool
    walks_mod4: Optional[bool]
    factors: Tuple[FactorIntersection, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        meeting = [f for f in self.factors if f.intersects]
        return (
            self.nonzero
            and self.totally_isotropic
            and self.a_invariant
            and self.walks_mod4 is not False
            and bool(meeting)
            and all(f.det_divisible is not False for f in meeting)
        )

    def to_json(self) -> Dict:
        return {
            "p": self.p,
            "level": self.level,
            "column_rank": self.column_rank,
            "nonzero": self.nonzero,
            "totally_isotropic": self.totally_isotropic,
            "a_invariant": self.a_invariant,
            "walks_mod4": self.walks_mod4,
            "factors": [f.to_json() for f in self.factors],
            "passed": self.passed,
        }


def multiple_factors_mod_p(chi: IntPoly, p: int) -> List[Tuple[ModPoly, int]]:
    """Irreducible factors of chi over F_p with multiplicity >= 2, monic, by sympy."""
    poly = sympy.Poly(list(reversed(chi.coeffs)), _X, modulus=p)
    _, parts = poly.factor_list()
    out = []
    for part, mult in parts:
        if mult >= 2:
            coeffs = [int(c) % p for c in reversed(part.all_coeffs())]
            out.append((ModPoly(p, tuple(coeffs)).monic(), mult))
    return sorted(out, key=lambda item: (item[0].degree, item[0].coeffs))


def _walks_mod4(a: IntMatrix, lift: IntMatrix) -> bool:
    n = a.rows
    for j in range(lift.cols):
        q = lift.col(j)
        v = q
        for _ in range(n):
            if sum(x * y for x, y in zip(q, v)) % 4:
                return False
            v = a.matvec(v)
    return True


def isotropy_diagnostic(q: RegularRationalOrthogonal, g: SignedGraph, p: int) -> IsotropyReport:
    """
    Check the structure col_p(lift) must have for a prime p dividing the level
    of a conjugator in Q(g): nonzero, totally isotropic, A-invariant, meeting
    ker phi(A) for some repeated factor phi of chi(A) mod p. For p = 2 the
    lift columns also satisfy q^T A^k q = 0 (mod 4); for odd p,
    p^(deg phi + 1) divides det phi(A).
    """
    require_prime(p)
    if q.level % p:
        raise DiagnosticPreconditionError(f"{p} does not divide the level {q.level}")
    if not check_membership(q, g):
        raise DiagnosticPreconditionError("Q^T A Q is not integral, Q is not in Q(g)")

    a = adjacency_matrix(g)
    lift = q.lift.mod(p)
    rank = rank_mod_p(lift, p)
    isotropic = all(x % p == 0 for x in (lift.T @ lift).entries)
    invariant = rank_mod_p(lift.hstack(a @ lift), p) == rank
    walks = _walks_mod4(a, q.lift) if p == 2 else None

    factors = []
    for phi, mult in multiple_factors_mod_p(charpoly(a), p):
        phi_a = poly_of_matrix(phi.lift(), a)
        meets = rank_mod_p(phi_a @ lift, p) < rank
        divisible = None
        if meets and p != 2:
            divisible = det(phi_a) % p ** (phi.degree + 1) == 0
        factors.append(FactorIntersection(phi=phi, multiplicity=mult, intersects=meets, det_divisible=divisible))

    report = IsotropyReport(
        p=p,
        level=q.level,
        column_rank=rank,
        nonzero=rank > 0,
        totally_isotropic=isotropic,
        a_invariant=invariant,
        walks_mod4=walks,
        factors=tuple(factors),
    )
    if not report.passed:
        logger.warning("isotropy diagnostic failed for p=%d: %s", p, report.to_json())
    return report
