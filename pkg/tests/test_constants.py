"""
常数 μ, t, μ₀, t₀、着色常数 μ*, t*、边色数界与键空间有向图
"""

import functools
import itertools
import operator
import random
from fractions import Fraction

import pytest

from geodetic_mcp.blocks import SupportIndex, is_half_factorial, is_weakly_half_factorial
from geodetic_mcp.catalog import abelian_catalog, digraph_corpus
from geodetic_mcp.cayley import build_cayley
from geodetic_mcp.constants import (
    bond_induced_digraph,
    check_coloring_bounds,
    compute_mu_star_t_star,
    compute_mu_t,
    random_potential,
)
from geodetic_mcp.digraph import Arc, WeightedDigraph, graph_from_edges, is_geodetical
from geodetic_mcp.errors import CapExceededError, InvalidInputError
from geodetic_mcp.group import AbelianGroup
from geodetic_mcp.voltage import VoltageAssignment, cayley_voltage


def as_elements(coords):
    return [tuple(c) for c in coords]


@pytest.mark.parametrize(
    "moduli,mu,t,mu0,t0",
    [([], 0, 0, 0, 0), ([2], 1, 1, 1, 1), ([3], 1, 2, 1, 2), ([4], 2, 2, 2, 2)],
    ids=["trivial", "Z_2", "Z_3", "Z_4"],
)
def test_small_constants(moduli, mu, t, mu0, t0):
    report = compute_mu_t(AbelianGroup(moduli))
    assert (report.mu, report.t, report.mu0, report.t0) == (mu, t, mu0, t0)


def test_z4_witnesses(z4):
    report = compute_mu_t(z4)
    assert report.mu_witness == [[1], [2]]
    assert report.t_cover == [[[1], [2]], [[2], [3]]]
    assert report.hf_subsets == 6


@pytest.mark.parametrize("group", abelian_catalog(7, min_order=2), ids=lambda g: g.describe())
def test_witnesses_verify(group):
    report = compute_mu_t(group)
    universe = set(group.non_identity())
    assert report.mu0 >= report.mu
    witness = as_elements(report.mu_witness)
    assert is_half_factorial(group, witness)[0]
    for g in universe - set(witness):
        assert not is_half_factorial(group, witness + [g])[0]
    covered = set()
    for part in report.t_cover:
        assert is_half_factorial(group, as_elements(part))[0]
        covered |= set(as_elements(part))
    assert covered == universe
    covered = set()
    for part in report.t0_cover:
        assert is_weakly_half_factorial(group, as_elements(part))[0]
        covered |= set(as_elements(part))
    assert covered == universe


def covers_with(masks, full, size):
    return any(
        functools.reduce(operator.or_, combo, 0) == full for combo in itertools.combinations(masks, size)
    )


@pytest.mark.parametrize("group", abelian_catalog(7, min_order=2), ids=lambda g: g.describe())
def test_covers_are_minimal(group):
    report = compute_mu_t(group)
    index = SupportIndex(group)
    full = index.full_mask
    for predicate, t in (
        (index.is_half_factorial_mask, report.t),
        (index.is_weakly_half_factorial_mask, report.t0),
    ):
        family = [m for m in range(full + 1) if predicate(m)]
        # 只需看极大成员：任何覆盖都能换成极大成员的覆盖
        maximal = [m for m in family if not any(m != o and m & o == m for o in family)]
        assert covers_with(maximal, full, t)
        assert not covers_with(maximal, full, t - 1)


def test_constants_cap():
    with pytest.raises(CapExceededError):
        compute_mu_t(AbelianGroup([13]))
    with pytest.raises(CapExceededError):
        compute_mu_t(AbelianGroup([5]), max_order=4)


def test_constants_need_abelian_group(s3):
    with pytest.raises(InvalidInputError):
        compute_mu_t(s3)


def test_mu_star_of_z3_cayley(z3):
    cayley = build_cayley(z3, z3.non_identity())
    report = compute_mu_star_t_star(cayley.digraph, cayley_voltage(cayley))
    assert report.colors == [0, 1]
    assert report.mu_star == 1
    assert report.t_star == 2
    assert report.t_star_partition == [[0], [1]]
    assert report.mu0_star == 1
    assert report.t0_star == 2


def test_mu_star_of_monochromatic_forest():
    forest = graph_from_edges(4, [(0, 1), (1, 2), (1, 3)], colors=[0, 0, 0])
    report = compute_mu_star_t_star(forest, as_graph=True)
    assert (report.mu_star, report.t_star) == (1, 1)
    assert report.mu0_star is None


def test_mu_star_of_rainbow_triangle():
    triangle = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)], colors=[0, 1, 2])
    report = compute_mu_star_t_star(triangle, as_graph=True)
    assert report.mu_star == 2
    assert report.mu_star_witness == [0, 1]
    assert report.t_star == 2


def test_mu_star_without_partition():
    # 单色类本身就不测地
    digraph = WeightedDigraph(3, [Arc(0, 1, 1, 0), Arc(1, 2, 1, 0), Arc(0, 2, 1, 0)])
    report = compute_mu_star_t_star(digraph)
    assert report.mu_star == 0
    assert report.t_star is None
    assert report.t_star_partition is None


def test_mu_star_needs_colors(shortcut):
    with pytest.raises(InvalidInputError):
        compute_mu_star_t_star(shortcut)


def test_mu_star_kvl_follows_graph_mode():
    # 一条边两个方向同色，电压 1 + 1 ≢ 0 (mod 3)：有向时是违反 KVL 的 2-圈，作为图时没有圈
    edge = WeightedDigraph(2, [Arc(0, 1, 1, 0), Arc(1, 0, 1, 0)])
    voltage = VoltageAssignment(3, {(0, 1): 1, (1, 0): 1})
    directed = compute_mu_star_t_star(edge, voltage)
    assert (directed.mu0_star, directed.t0_star) == (0, None)
    graph = compute_mu_star_t_star(edge, voltage, as_graph=True)
    assert (graph.mu_star, graph.t_star) == (1, 1)
    assert (graph.mu0_star, graph.t0_star) == (1, 1)


def test_bounds_single_edge():
    report = check_coloring_bounds(graph_from_edges(2, [(0, 1)]))
    assert (report.chromatic_index, report.t, report.mu) == (1, 1, 1)
    assert report.t_le_chromatic_index


def test_bounds_triangle(triangle):
    report = check_coloring_bounds(triangle)
    assert report.chromatic_index == 3
    assert report.max_degree == 2
    assert report.t == 2
    assert report.mu == 2
    assert report.t_le_chromatic_index and report.t_le_max_degree_plus_one
    assert report.color_classes_up
    assert report.mu_rhs == 1
    assert report.mu_le_rhs is False


def test_bounds_path_reports_mu_relation_without_asserting():
    report = check_coloring_bounds(graph_from_edges(4, [(0, 1), (1, 2), (2, 3)]))
    assert (report.chromatic_index, report.t, report.mu) == (2, 1, 3)
    assert report.mu_rhs == Fraction(3, 2)
    assert report.mu_le_rhs is False
    assert report.mu_le_min_class is False
    assert report.min_class_size == 1


def test_bounds_supplied_coloring():
    graph = graph_from_edges(3, [(0, 1), (1, 2)], colors=[0, 1])
    report = check_coloring_bounds(graph)
    assert report.coloring_supplied
    assert report.coloring == [0, 1]
    with pytest.raises(InvalidInputError, match="proper"):
        check_coloring_bounds(graph, coloring=[0, 0])


def test_bounds_reject_partial_coloring():
    graph = WeightedDigraph(3, [Arc(0, 1, 1, 0), Arc(1, 0, 1, 0), Arc(1, 2, 1), Arc(2, 1, 1)])
    with pytest.raises(InvalidInputError, match="uncolored"):
        check_coloring_bounds(graph)
    # 只写一个方向的颜色也算已着色
    one_way = WeightedDigraph(3, [Arc(0, 1, 1, 0), Arc(1, 2, 1, 1)])
    report = check_coloring_bounds(one_way)
    assert report.coloring_supplied
    assert report.coloring == [0, 1]


def test_bounds_edge_cap():
    k6 = graph_from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6)])
    with pytest.raises(CapExceededError):
        check_coloring_bounds(k6, max_edges=14)


def test_bond_constant_potential_has_no_arcs(shortcut):
    induced = bond_induced_digraph(shortcut, [Fraction(2)] * 3)
    assert induced.arcs == ()


def test_bond_potential_on_directed_path():
    path = WeightedDigraph(3, [Arc(0, 1, 5), Arc(1, 2, 7)])
    induced = bond_induced_digraph(path, [Fraction(0), Fraction(1), Fraction(2)])
    assert [a.pair for a in induced.arcs] == [(0, 1), (1, 2)]
    assert all(a.length == 1 for a in induced.arcs)
    assert is_geodetical(induced)[0]


def test_bond_potential_validation(shortcut):
    with pytest.raises(InvalidInputError):
        bond_induced_digraph(shortcut, [Fraction(0), Fraction(1)])
    with pytest.raises(InvalidInputError):
        bond_induced_digraph(shortcut, [0.0, 1.0, 2.0])
    with pytest.raises(InvalidInputError):
        bond_induced_digraph(shortcut, {0: Fraction(0), 1: Fraction(1)})


SMALL_DIGRAPHS = digraph_corpus()[:6]


@pytest.mark.parametrize("name,digraph", SMALL_DIGRAPHS, ids=[n for n, _ in SMALL_DIGRAPHS])
def test_bond_induced_digraphs_are_geodetical(name, digraph):
    rng = random.Random(7)
    for _ in range(10):
        induced = bond_induced_digraph(digraph, random_potential(digraph, rng))
        assert is_geodetical(induced)[0]
