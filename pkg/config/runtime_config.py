from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from algebra.arith import FactorEffort

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent / "dgs_config.yaml"
EFFORT_ENV = "SPECDGS_EFFORT"
OUTPUT_FORMATS = ("json", "text")


class ConfigError(ValueError):
    pass


@dataclass
class CliConfig:
    """Resolved settings for one command invocation."""

    command: str
    inputs: List[str] = field(default_factory=list)
    output_format: str = "json"
    effort: int = 10**8
    trial_division_bound: int = 10**6
    seed: int = 0
    max_n: int = 5
    mate_hard_cap: int = 6
    mate_budget: Optional[int] = None
    workers: int = 1
    isomorphism_max_n: int = 8
    selftest_filter: Optional[str] = None
    selftest: Dict[str, Any] = field(default_factory=dict)

    def factor_effort(self) -> FactorEffort:
        return FactorEffort(rho_iterations=self.effort, trial_bound=self.trial_division_bound, seed=self.seed)


def load_yaml(path: Path | str) -> Dict:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def _as_int(value: Any, name: str, minimum: int = 0) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be an integer, got {value!r}") from exc
    if out < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {out}")
    return out


def build_runtime_config(
    user_cfg: Mapping[str, Any],
    overrides: Mapping[str, Any],
    env: Mapping[str, str] | None = None,
) -> CliConfig:
    """
    Merge YAML defaults, the SPECDGS_EFFORT environment variable and CLI
    overrides. Later sources win; None in ``overrides`` means "not given".
    """
    env = env or {}
    certifier = user_cfg.get("certifier", {}) or {}
    output = user_cfg.get("output", {}) or {}
    mates = user_cfg.get("mates", {}) or {}
    iso = user_cfg.get("isomorphism", {}) or {}

    effort = certifier.get("effort", 10**8)
    if env.get(EFFORT_ENV):
        effort = env[EFFORT_ENV]
        logger.debug("effort taken from %s", EFFORT_ENV)

    def pick(key: str, default: Any) -> Any:
        value = overrides.get(key)
        return default if value is None else value

    hard_cap = _as_int(mates.get("hard_cap", 6), "mates.hard_cap", 1)
    cfg = CliConfig(
        command=overrides.get("command") or "certify",
        inputs=list(overrides.get("inputs") or []),
        output_format=pick("format", output.get("format", "json")),
        effort=_as_int(pick("effort", effort), "effort"),
        trial_division_bound=_as_int(certifier.get("trial_division_bound", 10**6), "trial_division_bound", 2),
        seed=_as_int(pick("seed", certifier.get("seed", 0)), "seed"),
        max_n=_as_int(pick("max_n", mates.get("max_n", 5)), "max_n", 1),
        mate_hard_cap=hard_cap,
        mate_budget=pick("budget", mates.get("budget")),
        workers=_as_int(pick("workers", mates.get("workers", 1)), "workers", 1),
        isomorphism_max_n=_as_int(iso.get("max_n", 8), "isomorphism.max_n", 1),
        selftest_filter=overrides.get("filter"),
        selftest=dict(user_cfg.get("selftest", {}) or {}),
    )
    if cfg.output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"unknown output format {cfg.output_format!r}, expected one of {OUTPUT_FORMATS}")
    if cfg.command == "selftest" and overrides.get("seed") is not None:
        cfg.selftest["seed"] = cfg.seed
    if cfg.mate_budget is not None:
        cfg.mate_budget = _as_int(cfg.mate_budget, "budget")
    if cfg.command == "mates" and cfg.max_n > hard_cap:
        raise ConfigError(f"max_n={cfg.max_n} exceeds hard cap {hard_cap}")
    return cfg
