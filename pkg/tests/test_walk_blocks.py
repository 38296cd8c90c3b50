import pytest

from algebra.arith import FactorEffort
from algebra.matrices import DimensionError, IntMatrix
from algebra.polynomials import IntPoly, charpoly, discriminant
from certifier.blocks import (
    bipartite_blocks,
    coefficient_cdelta,
    delta_of,
    gram_charpoly,
    verify_abb,
    verify_chiab,
    verify_chiab_transpose,
)
from certifier.walk import ControllabilityClass, classify, walk_matrix
from graph.signed_graph import OddCycleError, SignedGraph, adjacency_matrix


def test_classify():
    assert classify(5, 5) is ControllabilityClass.CONTROLLABLE
    assert classify(4, 5) is ControllabilityClass.ALMOST_CONTROLLABLE
    assert classify(3, 5) is ControllabilityClass.NEITHER


def test_walk_matrix_of_k2(k2):
    report = walk_matrix(adjacency_matrix(k2))
    assert report.w.to_rows() == [[1, 1], [1, 1]]
    assert report.rank == 1
    assert report.cls is ControllabilityClass.ALMOST_CONTROLLABLE
    assert report.det_w == 0
    assert report.det_w_factorization is None


def test_walk_matrix_of_signed_path(p4_signed):
    report = walk_matrix(adjacency_matrix(p4_signed), FactorEffort())
    assert report.w.col(1) == (-1, 0, 2, 1)
    assert report.w.col(3) == (-3, 1, 5, 1)
    assert report.cls is ControllabilityClass.CONTROLLABLE
    assert abs(report.det_w) == 16
    assert report.det_w_factorization.factors == ((2, 4),)


def test_walk_matrix_signs_matter(path3):
    assert walk_matrix(adjacency_matrix(path3)).cls is ControllabilityClass.ALMOST_CONTROLLABLE
    signed = SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, -1)])
    report = walk_matrix(adjacency_matrix(signed))
    assert report.cls is ControllabilityClass.CONTROLLABLE
    assert abs(report.det_w) == 4


def test_walk_matrix_neither():
    two_edges = SignedGraph.from_edges(4, [(0, 1, 1), (2, 3, 1)])
    report = walk_matrix(adjacency_matrix(two_edges))
    assert report.rank == 1
    assert report.cls is ControllabilityClass.NEITHER


def test_walk_matrix_rejects_bad_input():
    with pytest.raises(DimensionError):
        walk_matrix(IntMatrix.from_rows([[0, 1, 0], [1, 0, 1]]))
    with pytest.raises(DimensionError):
        walk_matrix(IntMatrix.from_rows([[0, 1], [0, 0]]))


def test_blocks_of_signed_path(p4_signed):
    blocks = bipartite_blocks(p4_signed)
    assert blocks.ordering == (0, 2, 1, 3)
    assert blocks.b.to_rows() == [[-1, 0], [1, 1]]
    assert blocks.gram().to_rows() == [[1, -1], [-1, 2]]
    assert blocks.balanced
    assert blocks.delta == 0
    assert gram_charpoly(blocks) == IntPoly.from_high([1, -3, 1])


def test_blocks_reorder_into_block_form(load_fixture):
    g = load_fixture("example2.mat")
    blocks = bipartite_blocks(g)
    a = adjacency_matrix(g)
    order = blocks.ordering
    reordered = a.submatrix(order, order)
    s = blocks.s
    assert reordered.submatrix(range(s), range(s, g.n)) == blocks.b
    assert reordered.submatrix(range(s), range(s)) == IntMatrix.zeros(s)


def test_blocks_unbalanced_and_odd_cycle(triangle):
    star = SignedGraph.from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, -1)])
    blocks = bipartite_blocks(star)
    assert blocks.s == 1
    assert not blocks.balanced
    with pytest.raises(OddCycleError):
        bipartite_blocks(triangle)


@pytest.mark.parametrize("fixture", ["p4_signed.mat", "n5_signed.edges", "k2_k1.mat", "example1.mat", "example3.mat"])
def test_characteristic_polynomial_identities(load_fixture, fixture):
    g = load_fixture(fixture)
    blocks = bipartite_blocks(g)
    chi = charpoly(adjacency_matrix(g))
    chi_gram = gram_charpoly(blocks)
    assert verify_chiab(chi, chi_gram, g.n)
    assert verify_chiab_transpose(chi, charpoly(blocks.gram_transpose()), g.n)
    assert verify_abb(discriminant(chi), discriminant(chi_gram), g.n)


def test_identity_checks_detect_mismatch():
    chi = IntPoly.from_high([1, 0, -3, 0, 1])
    assert not verify_chiab(chi, IntPoly.from_high([1, -3, 2]), 4)
    assert not verify_abb(400, 4, 4)


def test_coefficient_cdelta():
    assert delta_of(4) == 0 and delta_of(5) == 1
    assert coefficient_cdelta(IntPoly.from_high([1, 0, -3, 0, 1]), 4) == 1
    assert coefficient_cdelta(IntPoly.from_high([1, 0, -3, 0, 1, 0]), 5) == 1
    assert coefficient_cdelta(IntPoly.from_high([1, 0, -2, 0]), 3) == -2
