import pytest

from config.runtime_config import (
    DEFAULT_CONFIG_PATH,
    EFFORT_ENV,
    ConfigError,
    build_runtime_config,
    load_yaml,
)


@pytest.fixture
def defaults():
    return load_yaml(DEFAULT_CONFIG_PATH)


def test_shipped_defaults(defaults):
    cfg = build_runtime_config(defaults, {"command": "certify"})
    assert cfg.output_format == "json"
    assert cfg.effort == 100_000_000
    assert cfg.trial_division_bound == 1_000_000
    assert cfg.max_n == 5
    assert cfg.mate_hard_cap == 6
    assert cfg.mate_budget is None
    assert cfg.isomorphism_max_n == 8
    assert cfg.selftest["seed"] == 20240617
    effort = cfg.factor_effort()
    assert (effort.rho_iterations, effort.trial_bound, effort.seed) == (100_000_000, 1_000_000, 0)


def test_precedence_cli_over_env_over_yaml(defaults):
    cfg = build_runtime_config(defaults, {"command": "certify"}, {EFFORT_ENV: "500"})
    assert cfg.effort == 500
    cfg = build_runtime_config(defaults, {"command": "certify", "effort": 7}, {EFFORT_ENV: "500"})
    assert cfg.effort == 7
    cfg = build_runtime_config(defaults, {"command": "certify", "effort": None, "format": "text"})
    assert cfg.effort == 100_000_000
    assert cfg.output_format == "text"


def test_selftest_seed_override(defaults):
    cfg = build_runtime_config(defaults, {"command": "selftest", "seed": 99})
    assert cfg.selftest["seed"] == 99
    cfg = build_runtime_config(defaults, {"command": "certify", "seed": 99})
    assert cfg.seed == 99
    assert cfg.selftest["seed"] == 20240617


@pytest.mark.parametrize(
    "overrides, env",
    [
        ({"command": "certify", "format": "xml"}, {}),
        ({"command": "certify", "effort": -1}, {}),
        ({"command": "certify"}, {EFFORT_ENV: "lots"}),
        ({"command": "mates", "max_n": 7}, {}),
        ({"command": "mates", "workers": 0}, {}),
        ({"command": "mates", "budget": -5}, {}),
    ],
)
def test_invalid_settings(defaults, overrides, env):
    with pytest.raises(ConfigError):
        build_runtime_config(defaults, overrides, env)


def test_empty_yaml_uses_builtin_defaults(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    cfg = build_runtime_config(load_yaml(path), {"command": "analyze", "inputs": ["g.mat"]})
    assert cfg.command == "analyze"
    assert cfg.inputs == ["g.mat"]
    assert cfg.effort == 10**8
    assert cfg.selftest == {}


def test_load_yaml_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_yaml(tmp_path / "nope.yaml")
