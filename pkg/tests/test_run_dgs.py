import json

import pytest
import yaml

from graph.graph_io import serialize_signed_graph
from graph.signed_graph import SignedGraph, permute
from run_dgs import (
    EXIT_INCONCLUSIVE,
    EXIT_INPUT_ERROR,
    EXIT_NOT_APPLICABLE,
    EXIT_OK,
    EXIT_SELFTEST_FAILED,
    main,
    resolve_fixture,
)


def _write(tmp_path, name: str, g: SignedGraph, fmt: str = "edgelist"):
    path = tmp_path / name
    path.write_text(serialize_signed_graph(g, fmt), encoding="utf-8")
    return str(path)


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.yaml"
    path.write_text(
        yaml.safe_dump(
            {
                "certifier": {"effort": 100000, "trial_division_bound": 10000, "seed": 0},
                "selftest": {"seed": 3, "polynomials": 10, "polynomial_max_degree": 3, "prime_bound": 7},
            }
        ),
        encoding="utf-8",
    )
    return str(path)


def test_resolve_fixture():
    assert resolve_fixture("example2").name == "example2.mat"
    assert resolve_fixture("n5_signed").name == "n5_signed.edges"
    with pytest.raises(FileNotFoundError):
        resolve_fixture("example9")


def test_certify_fixture(capsys):
    assert main(["certify", "--fixture", "example2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "CertifiedDGS"
    assert out["D"] == str(17 * 23 * 64879)
    assert out["class"] == "Controllable"


def test_certify_not_applicable(capsys, fixture_dir):
    assert main(["certify", str(fixture_dir / "c4.mat")]) == EXIT_NOT_APPLICABLE
    assert json.loads(capsys.readouterr().out)["verdict"] == "NotApplicable"
    assert main(["certify", "--fixture", "triangle", "--format", "text"]) == EXIT_NOT_APPLICABLE
    assert "NotApplicable" in capsys.readouterr().out


def test_certify_inconclusive(capsys, tmp_path):
    path6 = SignedGraph.from_edges(6, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, -1)])
    assert main(["certify", _write(tmp_path, "p6.edges", path6)]) == EXIT_INCONCLUSIVE
    out = json.loads(capsys.readouterr().out)
    assert out["D"] == "49"
    assert out["reasons"] == ["criterion fails: 7^2 divides D"]


def test_effort_flag_and_environment(capsys, monkeypatch):
    monkeypatch.setenv("SPECDGS_EFFORT", "0")
    assert main(["certify", "--fixture", "k2", "--seed", "5"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["effort"]["rho_iterations"] == 0
    assert out["seed"] == 5
    assert main(["certify", "--fixture", "k2", "--effort", "12"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["effort"]["rho_iterations"] == 12


def test_analyze_has_no_verdict(capsys):
    assert main(["analyze", "--fixture", "c4"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] is None
    assert out["walk_rank"] is not None


def test_recover_q(capsys, tmp_path, fixture_dir, load_fixture):
    sigma = load_fixture("p4_signed.mat")
    gamma = permute(sigma, (2, 3, 0, 1))
    argv = ["recover-q", str(fixture_dir / "p4_signed.mat"), _write(tmp_path, "gamma.mat", gamma, "matrix")]
    assert main(argv) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["level"] == 1
    assert out["is_permutation"] is True
    assert out["isomorphism"] is not None
    assert permute(sigma, out["isomorphism"]) == gamma
    assert out["diagnostics"] == []


def test_recover_q_errors(fixture_dir):
    assert main(["recover-q", str(fixture_dir / "p4_signed.mat")]) == EXIT_INPUT_ERROR
    assert main(["recover-q", "--fixture", "k2", "--fixture", "k2"]) == EXIT_INPUT_ERROR


def test_mates(capsys):
    assert main(["mates", "--fixture", "k2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["dgs_empirical"] is True
    assert out["complete"] is True
    assert main(["mates", "--fixture", "k2", "--budget", "1", "--format", "text"]) == EXIT_OK
    assert "examined 1/3" in capsys.readouterr().out


def test_mates_limits():
    assert main(["mates", "--fixture", "k2", "--max-n", "7"]) == EXIT_INPUT_ERROR
    assert main(["mates", "--fixture", "example2"]) == EXIT_INPUT_ERROR


def test_input_errors(tmp_path):
    assert main(["certify", str(tmp_path / "missing.mat")]) == EXIT_INPUT_ERROR
    bad = tmp_path / "bad.mat"
    bad.write_text("2\n0 1\n1 x\n", encoding="utf-8")
    assert main(["certify", str(bad)]) == EXIT_INPUT_ERROR
    assert main(["certify", "--fixture", "nope"]) == EXIT_INPUT_ERROR
    assert main(["certify"]) == EXIT_INPUT_ERROR


def test_selftest_command(capsys, small_config):
    assert main(["--config", small_config, "selftest", "--filter", "discriminant"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "discriminant_mod4" in out and "PASS" in out
    assert main(["--config", small_config, "selftest", "--filter", "no-such-suite"]) == EXIT_INPUT_ERROR


def test_selftest_failure_exit_code(monkeypatch, small_config):
    from selftest import suites

    def failing(settings):
        row = suites.SuiteResult(name="always_fails")
        row.check(False, "forced")
        return [row]

    monkeypatch.setitem(suites.SUITES, "always_fails", failing)
    assert main(["--config", small_config, "selftest", "--filter", "always_fails"]) == EXIT_SELFTEST_FAILED
