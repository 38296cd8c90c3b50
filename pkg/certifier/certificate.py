from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

from algebra.arith import (
    FactorEffort,
    IntFactorization,
    SquarefreeKind,
    integer_sqrt_exact,
    squarefree_status,
)
from algebra.polynomials import IntPoly, charpoly, discriminant
from certifier.blocks import (
    BipartiteBlocks,
    bipartite_blocks,
    coefficient_cdelta,
    delta_of,
    gram_charpoly,
    verify_abb,
    verify_chiab,
    verify_chiab_transpose,
)
from certifier.walk import ControllabilityClass, WalkMatrixReport, walk_matrix
from graph.signed_graph import Bipartition, OddCycleError, SignedGraph, adjacency_matrix

logger = logging.getLogger(__name__)


class CertificateInvariantError(RuntimeError):
    pass


class Verdict(str, Enum):
    CERTIFIED_DGS = "CertifiedDGS"
    NOT_APPLICABLE = "NotApplicable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Crosschecks:
    chiab: Optional[bool] = None
    abb: Optional[bool] = None
    chiab_transpose: Optional[bool] = None


@dataclass(frozen=True)
class DgsCertificate:
    """
    Everything the certification pipeline computed for one signed graph.

    Fields stay None past the stage where the pipeline stopped. ``verdict`` is
    None for reports produced by ``analyze``.
    """

    n: int
    delta: int
    chi: IntPoly
    effort: FactorEffort
    cls: Optional[ControllabilityClass] = None
    c_delta: Optional[int] = None
    chi_gram: Optional[IntPoly] = None
    discriminant: Optional[int] = None
    sqrt_discriminant: Optional[int] = None
    d: Optional[int] = None
    d_factorization: Optional[IntFactorization] = None
    d_status: Optional[SquarefreeKind] = None
    crosschecks: Crosschecks = field(default_factory=Crosschecks)
    verdict: Optional[Verdict] = None
    reasons: Tuple[str, ...] = ()
    walk_rank: Optional[int] = None
    det_w: Optional[int] = None
    det_w_factorization: Optional[IntFactorization] = None
    s: Optional[int] = None
    bipartition: Optional[Bipartition] = None

    @property
    def seed(self) -> int:
        return self.effort.seed

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED_DGS


def _discriminant_root(delta_a: int, n: int) -> Tuple[Optional[int], Optional[int], Optional[str]]:
    """(sqrt(Delta), Delta-derived D, failure reason)."""
    if delta_a == 0:
        return None, None, "discriminant vanishes"
    if delta_a < 0:
        return None, None, f"discriminant shape: negative discriminant {delta_a}"
    root = integer_sqrt_exact(delta_a)
    if root is None:
        return None, None, "discriminant shape: discriminant is not a perfect square"
    scale = 1 << (n // 2)
    if root % scale:
        return root, None, f"discriminant shape: 2^{n // 2} does not divide sqrt(discriminant)"
    return root, root // scale, None


def _gram_discriminant(chi_gram: IntPoly) -> int:
    # An empty Gram matrix (n = 1) has discriminant 1, the empty product.
    return discriminant(chi_gram) if chi_gram.degree >= 1 else 1


class _Stages:
    """Shared computation steps behind certify and analyze."""

    def __init__(self, g: SignedGraph, effort: FactorEffort) -> None:
        self.g = g
        self.a = adjacency_matrix(g)
        self.cert = DgsCertificate(n=g.n, delta=delta_of(g.n), chi=charpoly(self.a), effort=effort)
        self.reasons: List[str] = []

    def update(self, **changes) -> None:
        self.cert = replace(self.cert, **changes)

    def blocks(self) -> Optional[BipartiteBlocks]:
        try:
            blocks = bipartite_blocks(self.g)
        except OddCycleError as exc:
            self.reasons.append(f"not bipartite: odd cycle {exc.cycle}")
            return None
        self.update(s=blocks.s, bipartition=blocks.bipartition)
        if not blocks.balanced:
            self.reasons.append(
                f"unbalanced bipartition: sides {blocks.s} and {self.g.n - blocks.s}, need {self.g.n // 2}"
            )
        return blocks

    def gram(self, blocks: BipartiteBlocks) -> None:
        chi = self.cert.chi
        chi_gram = gram_charpoly(blocks)
        checks = replace(
            self.cert.crosschecks,
            chiab=verify_chiab(chi, chi_gram, self.g.n),
            chiab_transpose=verify_chiab_transpose(chi, charpoly(blocks.gram_transpose()), self.g.n),
        )
        if not (checks.chiab and checks.chiab_transpose):
            logger.error("characteristic polynomial identity failed for n=%d", self.g.n)
        self.update(chi_gram=chi_gram, crosschecks=checks)

    def c_delta(self) -> int:
        c = coefficient_cdelta(self.cert.chi, self.g.n)
        self.update(c_delta=c)
        if abs(c) != 1:
            self.reasons.append(f"c_delta = {c}, need +1 or -1")
        return c

    def walk(self) -> WalkMatrixReport:
        report = walk_matrix(self.a, self.cert.effort)
        self.update(
            cls=report.cls,
            walk_rank=report.rank,
            det_w=report.det_w,
            det_w_factorization=report.det_w_factorization,
        )
        if report.cls is ControllabilityClass.NEITHER:
            self.reasons.append(f"walk matrix rank {report.rank} is below n - 1 = {self.g.n - 1}")
        return report

    def discriminant(self) -> Optional[int]:
        """Sets Delta, sqrt(Delta) and D; returns D or None on a shape failure."""
        delta_a = discriminant(self.cert.chi)
        if self.cert.chi_gram is not None:
            checks = replace(
                self.cert.crosschecks, abb=verify_abb(delta_a, _gram_discriminant(self.cert.chi_gram), self.g.n)
            )
            self.update(crosschecks=checks)
        root, d, reason = _discriminant_root(delta_a, self.g.n)
        self.update(discriminant=delta_a, sqrt_discriminant=root, d=d)
        if reason is not None:
            self.reasons.append(reason)
        return d

    def squarefree(self, d: int) -> SquarefreeKind:
        status = squarefree_status(d, self.cert.effort)
        self.update(d_factorization=status.factorization, d_status=status.kind)
        if status.kind is SquarefreeKind.NOT_SQUAREFREE:
            qualifier = "" if status.witness_is_prime else " (composite witness)"
            self.reasons.append(f"criterion fails: {status.witness}^2 divides D{qualifier}")
        elif status.kind is SquarefreeKind.UNKNOWN:
            self.reasons.append(
                f"factorization incomplete: cofactor {status.factorization.cofactor} left after "
                f"{status.factorization.rho_iterations_used} rho iterations"
            )
        return status.kind

    def finish(self, verdict: Optional[Verdict]) -> DgsCertificate:
        self.update(verdict=verdict, reasons=tuple(self.reasons))
        return self.cert


def _check_certified(cert: DgsCertificate) -> None:
    if cert.d is None or cert.d % 2 == 0:
        raise CertificateInvariantError(f"certified graph has even or missing D={cert.d}")
    gram_disc = _gram_discriminant(cert.chi_gram) if cert.chi_gram is not None else None
    if gram_disc is None or cert.d != abs(gram_disc):
        raise CertificateInvariantError(f"D={cert.d} differs from |disc(B B^T)|={gram_disc}")


def certify(g: SignedGraph, effort: FactorEffort | None = None) -> DgsCertificate:
    """
    Run the sufficient DGS criterion. Hypothesis failures give NotApplicable;
    a graph meeting the hypotheses whose D is not proven squarefree gives
    Inconclusive. The criterion never concludes that a graph is not DGS.
    """
    run = _Stages(g, effort or FactorEffort())
    verdict = _certify_stages(run)
    cert = run.finish(verdict)
    if cert.certified:
        _check_certified(cert)
    logger.info(
        "certify: n=%d class=%s verdict=%s",
        g.n,
        cert.cls.value if cert.cls else "-",
        cert.verdict.value,
    )
    return cert


def _certify_stages(run: _Stages) -> Verdict:
    blocks = run.blocks()
    if blocks is None or not blocks.balanced:
        return Verdict.NOT_APPLICABLE
    run.gram(blocks)
    if abs(run.c_delta()) != 1:
        return Verdict.NOT_APPLICABLE
    if run.walk().cls is ControllabilityClass.NEITHER:
        return Verdict.NOT_APPLICABLE
    d = run.discriminant()
    if d is None:
        return Verdict.INCONCLUSIVE
    if run.squarefree(d) is SquarefreeKind.SQUAREFREE:
        return Verdict.CERTIFIED_DGS
    return Verdict.INCONCLUSIVE


def analyze(g: SignedGraph, effort: FactorEffort | None = None) -> DgsCertificate:
    """Every invariant the pipeline knows how to compute, without gating or a verdict."""
    run = _Stages(g, effort or FactorEffort())
    blocks = run.blocks()
    if blocks is not None and blocks.balanced:
        run.gram(blocks)
    run.c_delta()
    run.walk()
    d = run.discriminant()
    if d is not None:
        run.squarefree(d)
    cert = run.finish(None)
    logger.info("analyze: n=%d rank W=%d", g.n, cert.walk_rank)
    return cert
