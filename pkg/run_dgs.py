import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from algebra.arith import factor_integer
from certifier.certificate import Verdict, analyze, certify
from certifier.report import render_certificate
from config.runtime_config import DEFAULT_CONFIG_PATH, CliConfig, build_runtime_config, load_yaml
from cospectral.conjugator import RegularRationalOrthogonal, recover_conjugator
from cospectral.diagnostics import isotropy_diagnostic
from cospectral.mates import mate_search
from graph.graph_io import load_signed_graph
from graph.signed_graph import SignedGraph, is_isomorphic
from selftest.suites import FIXTURE_DIR, SuiteSettings, render_table, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_NOT_APPLICABLE = 10
EXIT_INCONCLUSIVE = 11
EXIT_SELFTEST_FAILED = 1

VERDICT_EXIT = {
    Verdict.CERTIFIED_DGS: EXIT_OK,
    Verdict.NOT_APPLICABLE: EXIT_NOT_APPLICABLE,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def resolve_fixture(name: str) -> Path:
    """Built-in fixture by file name, with or without extension."""
    for candidate in (FIXTURE_DIR / name, FIXTURE_DIR / f"{name}.mat", FIXTURE_DIR / f"{name}.edges"):
        if candidate.is_file():
            return candidate
    known = sorted(p.name for p in FIXTURE_DIR.iterdir() if p.suffix in (".mat", ".edges"))
    raise FileNotFoundError(f"unknown fixture {name!r}; available: {', '.join(known)}")


def _input_paths(cfg: CliConfig, fixtures: Optional[List[str]], needed: int) -> List[Path]:
    paths = [Path(p) for p in cfg.inputs] + [resolve_fixture(f) for f in fixtures or []]
    if len(paths) != needed:
        raise ValueError(f"{cfg.command} needs {needed} graph input(s), got {len(paths)}")
    return paths


def _load(paths: Sequence[Path]) -> List[SignedGraph]:
    return [load_signed_graph(p) for p in paths]


def _conjugator_json(q: RegularRationalOrthogonal, sigma: SignedGraph, gamma: SignedGraph, iso_max_n: int) -> Dict:
    out: Dict = {
        "n": q.n,
        "level": q.level,
        "q": [[str(x) for x in row] for row in q.q.to_rows()],
        "lift": q.lift.to_rows(),
        "is_permutation": q.is_permutation(),
        "isomorphism": None,
        "diagnostics": [],
    }
    if q.n <= iso_max_n:
        witness = is_isomorphic(sigma, gamma, max_n=iso_max_n)
        out["isomorphism"] = None if witness is None else list(witness)
    if q.level > 1:
        for p, _ in factor_integer(q.level).factors:
            out["diagnostics"].append(isotropy_diagnostic(q, sigma, p).to_json())
    return out


def cmd_certify(cfg: CliConfig, fixtures: Optional[List[str]]) -> int:
    (g,) = _load(_input_paths(cfg, fixtures, 1))
    cert = certify(g, cfg.factor_effort())
    sys.stdout.write(render_certificate(cert, cfg.output_format))
    return VERDICT_EXIT[cert.verdict]


def cmd_analyze(cfg: CliConfig, fixtures: Optional[List[str]]) -> int:
    (g,) = _load(_input_paths(cfg, fixtures, 1))
    sys.stdout.write(render_certificate(analyze(g, cfg.factor_effort()), cfg.output_format))
    return EXIT_OK


def cmd_recover_q(cfg: CliConfig, fixtures: Optional[List[str]]) -> int:
    sigma, gamma = _load(_input_paths(cfg, fixtures, 2))
    q = recover_conjugator(sigma, gamma)
    payload = _conjugator_json(q, sigma, gamma, cfg.isomorphism_max_n)
    if cfg.output_format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"level {payload['level']}", "Q ="]
        lines.extend("  " + " ".join(row) for row in payload["q"])
        lines.extend(f"p={d['p']}: passed={d['passed']}" for d in payload["diagnostics"])
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_mates(cfg: CliConfig, fixtures: Optional[List[str]]) -> int:
    (g,) = _load(_input_paths(cfg, fixtures, 1))
    report = mate_search(g, max_n=cfg.max_n, budget=cfg.mate_budget, workers=cfg.workers, seed=cfg.seed)
    if cfg.output_format == "json":
        sys.stdout.write(json.dumps(report.to_json(), indent=2) + "\n")
    else:
        sys.stdout.write(
            f"n={g.n} examined {report.examined}/{report.search_space_size} "
            f"mates={report.mate_count} classes={len(report.classes)} dgs_empirical={report.dgs_empirical}\n"
        )
    return EXIT_OK


def cmd_selftest(cfg: CliConfig, fixtures: Optional[List[str]]) -> int:
    settings = SuiteSettings.from_config(cfg.selftest, cfg.factor_effort())
    rows = run_suites(settings, cfg.selftest_filter)
    if not rows:
        raise ValueError(f"no suite matches filter {cfg.selftest_filter!r}")
    sys.stdout.write(render_table(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_SELFTEST_FAILED


COMMANDS = {
    "certify": cmd_certify,
    "analyze": cmd_analyze,
    "recover-q": cmd_recover_q,
    "mates": cmd_mates,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Certify signed bipartite graphs as determined by generalized spectrum.")
    parser.add_argument("--config", type=Path, default=DEFAULT_CONFIG_PATH, help="YAML defaults")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, inputs: str) -> None:
        p.add_argument("inputs", nargs=inputs, default=[], help="graph file(s), .mat or .edges")
        p.add_argument("--fixture", action="append", help="built-in fixture name instead of a path")
        p.add_argument("--format", choices=("json", "text"))
        p.add_argument("--effort", type=int, help="Pollard-Brent iteration budget per factorization")
        p.add_argument("--seed", type=int)

    common(sub.add_parser("certify", help="run the DGS criterion"), "?")
    common(sub.add_parser("analyze", help="report invariants without a verdict"), "?")
    common(sub.add_parser("recover-q", help="conjugator between two controllable graphs"), "*")
    mates = sub.add_parser("mates", help="exhaustive generalized cospectral mate search")
    common(mates, "?")
    mates.add_argument("--max-n", dest="max_n", type=int)
    mates.add_argument("--budget", type=int, help="number of candidates to examine")
    mates.add_argument("--workers", type=int)
    selftest = sub.add_parser("selftest", help="run the embedded property suites")
    selftest.add_argument("--filter", help="run only suites whose name contains this")
    selftest.add_argument("--effort", type=int)
    selftest.add_argument("--seed", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    overrides = vars(args).copy()
    if isinstance(overrides.get("inputs"), str):
        overrides["inputs"] = [overrides["inputs"]]
    try:
        cfg = build_runtime_config(load_yaml(args.config), overrides, os.environ)
        return COMMANDS[args.command](cfg, getattr(args, "fixture", None))
    except (ValueError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
