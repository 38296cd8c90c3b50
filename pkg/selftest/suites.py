from __future__ import annotations

import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List

import yaml

from algebra.arith import FactorEffort, small_primes
from algebra.matrices import det, rank_mod_p, rank_rational
from algebra.polynomials import (
    IntPoly,
    charpoly,
    discriminant,
    has_multiple_factor_mod_p,
    sylvester_kernel_vs_gcd,
)
from algebra.smith import divisibility_chain_holds, mod_p2_kernel_vector, smith_normal_form
from certifier.blocks import bipartite_blocks, gram_charpoly, verify_abb, verify_chiab, verify_chiab_transpose
from certifier.certificate import DgsCertificate, Verdict, analyze, certify
from cospectral.conjugator import recover_conjugator
from cospectral.mates import mate_search
from graph.graph_io import load_signed_graph
from graph.signed_graph import adjacency_matrix, permutation_matrix, permute
from selftest.generators import (
    random_bipartite_unit_graph,
    random_controllable_graph,
    random_int_matrix,
    random_monic_poly,
    random_permutation,
)

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"
INVARIANTS_FILE = FIXTURE_DIR / "example_invariants.yaml"
MATE_FIXTURES = ("k2.mat", "k2_k1.mat", "p4_signed.mat", "n5_signed.edges", "c4.mat")


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(message)


@dataclass
class SuiteSettings:
    """Corpus sizes; defaults match the shipped configuration."""

    seed: int = 20240617
    bipartite_graphs: int = 200
    bipartite_max_n: int = 12
    polynomials: int = 1000
    polynomial_max_degree: int = 8
    polynomial_max_coeff: int = 9
    prime_bound: int = 50
    smith_matrices: int = 200
    smith_max_n: int = 6
    roundtrip_graphs: int = 50
    roundtrip_max_n: int = 8
    effort: FactorEffort = field(default_factory=FactorEffort)
    fixture_dir: Path = FIXTURE_DIR

    @classmethod
    def from_config(cls, section: Dict, effort: FactorEffort) -> "SuiteSettings":
        known = {k: v for k, v in section.items() if k in cls.__dataclass_fields__}
        return cls(effort=effort, **known)


def _poly_product(factors: List[List[int]]) -> IntPoly:
    out = IntPoly((1,))
    for coeffs in factors:
        out = out * IntPoly.from_high(coeffs)
    return out


def _factor_map(f) -> Dict[int, int]:
    return {p: e for p, e in f.factors} if f is not None else {}


def _check_certified_odd(result: SuiteResult, label: str, cert: DgsCertificate) -> None:
    if cert.verdict is Verdict.CERTIFIED_DGS:
        result.check(cert.d is not None and cert.d % 2 == 1, f"{label}: certified with even D={cert.d}")


def suite_fixtures(settings: SuiteSettings) -> List[SuiteResult]:
    """One result row per published example."""
    with INVARIANTS_FILE.open("r", encoding="utf-8") as f:
        expected_all = yaml.safe_load(f)
    rows = []
    for name, exp in expected_all.items():
        result = SuiteResult(name=f"fixture:{name}")
        try:
            g = load_signed_graph(settings.fixture_dir / exp["file"])
        except (OSError, ValueError) as exc:
            result.check(False, f"cannot load: {exc}")
            rows.append(result)
            continue
        report = analyze(g, settings.effort)
        cert = certify(g, settings.effort)
        result.check(g.n == exp["n"], f"n={g.n}")
        result.check(len(g.edges) == exp["edges"], f"edges={len(g.edges)}")
        result.check(report.cls is not None and report.cls.value == exp["class"], f"class={report.cls}")
        if "walk_rank" in exp:
            result.check(report.walk_rank == exp["walk_rank"], f"rank W={report.walk_rank}")
        if "det_w_abs" in exp:
            result.check(_factor_map(report.det_w_factorization) == exp["det_w_abs"], f"det W={report.det_w}")
        result.check(report.chi == _poly_product(exp["chi_factors"]), f"chi={report.chi}")
        result.check(_factor_map(report.d_factorization) == exp["d"], f"D={report.d}")
        result.check(cert.bipartition is not None and list(cert.bipartition.left) == exp["left"], "bipartition")
        result.check(cert.verdict is not None and cert.verdict.value == exp["verdict"], f"verdict={cert.verdict}")
        _check_certified_odd(result, name, cert)
        rows.append(result)
    return rows


def suite_chiab(settings: SuiteSettings) -> List[SuiteResult]:
    """Characteristic polynomial and discriminant identities on random bipartite graphs."""
    rng = random.Random(settings.seed)
    result = SuiteResult(name="chiab")
    for k in range(settings.bipartite_graphs):
        n = rng.randint(1, settings.bipartite_max_n)
        g = random_bipartite_unit_graph(rng, n)
        label = f"graph {k} (n={n}, edges={g.sorted_edges()})"
        blocks = bipartite_blocks(g)
        chi = charpoly(adjacency_matrix(g))
        chi_gram = gram_charpoly(blocks)
        result.check(verify_chiab(chi, chi_gram, n), f"{label}: chi != x^delta chi_gram(x^2)")
        result.check(
            verify_chiab_transpose(chi, charpoly(blocks.gram_transpose()), n),
            f"{label}: x^delta chi != chi(B^T B; x^2)",
        )
        gram_disc = discriminant(chi_gram) if chi_gram.degree >= 1 else 1
        result.check(verify_abb(discriminant(chi), gram_disc, n), f"{label}: discriminant identity fails")
        mirrored = IntPoly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(chi.coeffs)))
        result.check(mirrored == chi * (-1) ** n, f"{label}: spectrum not symmetric")
        result.check(det(blocks.gram()) == 1, f"{label}: det(B B^T) != 1")
    return [result]


def suite_certified_odd(settings: SuiteSettings) -> List[SuiteResult]:
    rng = random.Random(settings.seed + 1)
    result = SuiteResult(name="certified_odd")
    for k in range(settings.bipartite_graphs):
        g = random_bipartite_unit_graph(rng, rng.randint(1, settings.bipartite_max_n))
        _check_certified_odd(result, f"graph {k}", certify(g, settings.effort))
    return [result]


def _polynomials(settings: SuiteSettings) -> List[IntPoly]:
    rng = random.Random(settings.seed + 2)
    return [
        random_monic_poly(rng, settings.polynomial_max_degree, settings.polynomial_max_coeff)
        for _ in range(settings.polynomials)
    ]


def suite_discriminant_mod4(settings: SuiteSettings) -> List[SuiteResult]:
    result = SuiteResult(name="discriminant_mod4")
    for f in _polynomials(settings):
        result.check(discriminant(f) % 4 != 2, f"disc({f}) = 2 mod 4")
    return [result]


def suite_multiple_factor(settings: SuiteSettings) -> List[SuiteResult]:
    """p | disc(f) iff f has a repeated factor mod p; deg gcd(f, f') equals the Sylvester corank."""
    divides = SuiteResult(name="multiple_factor")
    kernel = SuiteResult(name="sylvester_kernel")
    primes = small_primes(settings.prime_bound)
    for f in _polynomials(settings):
        disc = discriminant(f)
        for p in primes:
            divides.check((disc % p == 0) == has_multiple_factor_mod_p(f, p), f"{f} mod {p}")
            check = sylvester_kernel_vs_gcd(f, p)
            kernel.check(check.agree, f"{f} mod {p}: gcd degree {check.degree}, corank {check.corank}")
    return [divides, kernel]


def _has_kernel_vector_brute(m, p: int) -> bool:
    q = p * p
    for x in itertools.product(range(q), repeat=m.cols):
        if all(v % p == 0 for v in x):
            continue
        if all(v % q == 0 for v in m.matvec(x)):
            return True
    return False


def suite_smith(settings: SuiteSettings) -> List[SuiteResult]:
    rng = random.Random(settings.seed + 3)
    result = SuiteResult(name="smith")
    for k in range(settings.smith_matrices):
        n = rng.randint(1, settings.smith_max_n)
        m = random_int_matrix(rng, n)
        snf = smith_normal_form(m)
        label = f"matrix {k} {m.to_rows()}"
        result.check(snf.u @ m @ snf.v == snf.diagonal_matrix(), f"{label}: U M V != diag(d)")
        result.check(abs(det(snf.u)) == 1 and abs(det(snf.v)) == 1, f"{label}: U or V not unimodular")
        result.check(divisibility_chain_holds(snf.d), f"{label}: divisibility chain broken {snf.d}")
        prod = 1
        for x in snf.d:
            prod *= x
        result.check(abs(det(m)) == prod, f"{label}: |det| != product of invariant factors")
        for p in (2, 3, 5, 7):
            rank_p = rank_mod_p(m, p)
            result.check(rank_p == snf.rank_mod(p), f"{label}: rank mod {p}")
            result.check(rank_rational(m) >= rank_p, f"{label}: rank over Q below rank mod {p}")
            result.check(det(m) % p ** (n - rank_p) == 0, f"{label}: {p}^(n - rank mod {p}) does not divide det")
            x = mod_p2_kernel_vector(m, p)
            expected = snf.d[-1] % (p * p) == 0
            result.check((x is not None) == expected, f"{label}: mod {p}^2 kernel presence")
            if x is not None:
                ok = any(v % p for v in x) and all(v % (p * p) == 0 for v in m.matvec(x))
                result.check(ok, f"{label}: bad mod {p}^2 kernel witness {x}")
            elif n <= 3 and p <= 3:
                result.check(not _has_kernel_vector_brute(m, p), f"{label}: missed mod {p}^2 kernel vector")
    return [result]


def suite_conjugator_roundtrip(settings: SuiteSettings) -> List[SuiteResult]:
    rng = random.Random(settings.seed + 4)
    result = SuiteResult(name="conjugator_roundtrip")
    for k in range(settings.roundtrip_graphs):
        n = rng.randint(3, settings.roundtrip_max_n)
        sigma = random_controllable_graph(rng, n)
        if sigma is None:
            result.check(False, f"no controllable graph found for n={n}")
            continue
        perm = random_permutation(rng, n)
        q = recover_conjugator(sigma, permute(sigma, perm))
        label = f"graph {k} (n={n}) perm {perm}"
        result.check(q.level == 1, f"{label}: level {q.level}")
        result.check(q.lift == permutation_matrix(perm), f"{label}: Q is not the permutation matrix")
    return [result]


def suite_mate_oracle(settings: SuiteSettings) -> List[SuiteResult]:
    """Certified graphs on at most 5 vertices have no non-isomorphic mates."""
    result = SuiteResult(name="mate_oracle")
    for name in MATE_FIXTURES:
        g = load_signed_graph(settings.fixture_dir / name)
        cert = certify(g, settings.effort)
        if cert.verdict is not Verdict.CERTIFIED_DGS:
            continue
        report = mate_search(g, max_n=5)
        result.check(report.dgs_empirical is True, f"{name}: certified but has a non-isomorphic mate")
    return [result]


Suite = Callable[[SuiteSettings], List[SuiteResult]]

SUITES: Dict[str, Suite] = {
    "fixtures": suite_fixtures,
    "chiab": suite_chiab,
    "certified_odd": suite_certified_odd,
    "discriminant_mod4": suite_discriminant_mod4,
    "multiple_factor": suite_multiple_factor,
    "smith": suite_smith,
    "conjugator_roundtrip": suite_conjugator_roundtrip,
    "mate_oracle": suite_mate_oracle,
}


def run_suites(settings: SuiteSettings, name_filter: str | None = None) -> List[SuiteResult]:
    rows: List[SuiteResult] = []
    for name, suite in SUITES.items():
        if name_filter and name_filter not in name:
            continue
        start = time.perf_counter()
        produced = suite(settings)
        elapsed = time.perf_counter() - start
        for row in produced:
            row.seconds = elapsed / len(produced)
            logger.info("suite %s: %d cases, %d failures", row.name, row.cases, len(row.failures))
        rows.extend(produced)
    return rows


def render_table(rows: List[SuiteResult]) -> str:
    width = max([len(r.name) for r in rows] + [5])
    lines = [f"{'suite'.ljust(width)}  result  cases  seconds"]
    for r in rows:
        lines.append(f"{r.name.ljust(width)}  {'PASS' if r.passed else 'FAIL':6}  {r.cases:5d}  {r.seconds:7.2f}")
        lines.extend(f"    {msg}" for msg in r.failures[:5])
    return "\n".join(lines) + "\n"
