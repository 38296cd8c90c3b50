import random

import pytest

from algebra.arith import FactorEffort
from algebra.polynomials import charpoly
from certifier.blocks import bipartite_blocks, coefficient_cdelta
from certifier.walk import ControllabilityClass, walk_matrix
from graph.signed_graph import adjacency_matrix
from selftest.generators import (
    random_bipartite_unit_graph,
    random_controllable_graph,
    random_monic_poly,
    random_permutation,
)
from selftest.suites import SUITES, SuiteResult, SuiteSettings, render_table, run_suites


@pytest.fixture
def small_settings() -> SuiteSettings:
    return SuiteSettings(
        seed=7,
        bipartite_graphs=6,
        bipartite_max_n=7,
        polynomials=25,
        polynomial_max_degree=4,
        prime_bound=11,
        smith_matrices=12,
        smith_max_n=3,
        roundtrip_graphs=3,
        roundtrip_max_n=5,
    )


def test_random_bipartite_unit_graph_meets_hypotheses():
    rng = random.Random(1)
    for n in range(1, 11):
        g = random_bipartite_unit_graph(rng, n)
        blocks = bipartite_blocks(g)
        assert blocks.balanced
        assert abs(coefficient_cdelta(charpoly(adjacency_matrix(g)), n)) == 1


def test_random_bipartite_unit_graph_fallback():
    g = random_bipartite_unit_graph(random.Random(2), 9, attempts=0)
    assert bipartite_blocks(g).balanced
    assert abs(coefficient_cdelta(charpoly(adjacency_matrix(g)), 9)) == 1


def test_other_generators():
    rng = random.Random(3)
    assert sorted(random_permutation(rng, 6)) == list(range(6))
    f = random_monic_poly(rng, 5, 3)
    assert f.is_monic and 1 <= f.degree <= 5
    g = random_controllable_graph(rng, 5)
    assert g is not None
    assert walk_matrix(adjacency_matrix(g)).cls is ControllabilityClass.CONTROLLABLE


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes(small_settings, name):
    rows = SUITES[name](small_settings)
    assert rows
    for row in rows:
        assert row.cases > 0, row.name
        assert row.passed, (row.name, row.failures[:3])


def test_fixture_suite_rows(small_settings):
    rows = run_suites(small_settings, "fixtures")
    assert [r.name for r in rows] == ["fixture:example1", "fixture:example2", "fixture:example3"]


def test_filter_and_table(small_settings):
    rows = run_suites(small_settings, "multiple")
    assert [r.name for r in rows] == ["multiple_factor", "sylvester_kernel"]
    table = render_table(rows)
    assert table.splitlines()[0].startswith("suite")
    assert "PASS" in table
    assert run_suites(small_settings, "no-such-suite") == []


def test_render_table_lists_failures():
    row = SuiteResult(name="demo")
    row.check(True, "fine")
    row.check(False, "broken case")
    assert not row.passed
    table = render_table([row])
    assert "FAIL" in table
    assert "    broken case" in table


def test_settings_from_config_ignores_unknown_keys():
    effort = FactorEffort(rho_iterations=10, trial_bound=100, seed=1)
    settings = SuiteSettings.from_config({"seed": 5, "polynomials": 3, "unrelated": True}, effort)
    assert settings.seed == 5
    assert settings.polynomials == 3
    assert settings.effort is effort
