"""
验收扫描：阶 ≤ 8 的全部子集、原子朴素对照、常数、键空间与边着色界

这些测试较慢，用 ``pytest -m "not slow"`` 跳过。
"""

import random

import pytest

from geodetic_mcp.blocks import enumerate_atoms, naive_atoms
from geodetic_mcp.catalog import abelian_catalog, digraph_corpus, graph_corpus
from geodetic_mcp.constants import (
    bond_induced_digraph,
    check_coloring_bounds,
    compute_mu_t,
    random_potential,
)
from geodetic_mcp.digraph import is_geodetical
from geodetic_mcp.theorems import sweep_theorems

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def sweep_report():
    return sweep_theorems(8, naive=True)


def test_geodetical_implies_half_factorial(sweep_report):
    assert sweep_report.subsets_checked == sum(2 ** (g.order - 1) for g in abelian_catalog(8))
    assert sweep_report.geodetical_not_hf == 0


def test_weak_half_factoriality_matches_kvl(sweep_report):
    assert sweep_report.whf_not_kvl == 0
    assert sweep_report.kvl_not_whf == 0


def test_single_source_matches_all_pairs(sweep_report):
    assert sweep_report.optimization_mismatches == 0


def test_half_factorial_does_not_imply_geodetical(sweep_report):
    assert sweep_report.hf_not_geodetical > 0
    pair = sweep_report.counterexamples["hf_not_geodetical"].certificate
    assert pair.first.length != pair.second.length
    assert pair.first.vertices[0] == pair.second.vertices[0]
    assert pair.first.vertices[-1] == pair.second.vertices[-1]


def test_carlitz(sweep_report):
    assert sweep_report.carlitz_ok


@pytest.mark.parametrize("group", abelian_catalog(8, min_order=7), ids=lambda g: g.describe())
def test_atoms_match_naive_filter(group):
    subset = group.non_identity()
    fast = enumerate_atoms(group, subset)
    assert [a.block for a in fast] == [a.block for a in naive_atoms(group, subset)]
    assert max(len(a) for a in fast) <= group.order


@pytest.mark.parametrize("group", abelian_catalog(10, min_order=2), ids=lambda g: g.describe())
def test_weak_constants_dominate(group):
    report = compute_mu_t(group)
    assert report.mu0 >= report.mu
    assert report.t0 <= report.t


DIGRAPHS = digraph_corpus()


@pytest.mark.parametrize("name,digraph", DIGRAPHS, ids=[n for n, _ in DIGRAPHS])
def test_bond_space_digraphs_are_geodetical(name, digraph):
    rng = random.Random(f"bond-{name}")
    for _ in range(100):
        induced = bond_induced_digraph(digraph, random_potential(digraph, rng))
        holds, pair = is_geodetical(induced)
        assert holds, pair


GRAPHS = graph_corpus()


@pytest.mark.parametrize("name,graph", GRAPHS, ids=[n for n, _ in GRAPHS])
def test_coloring_bounds(name, graph):
    report = check_coloring_bounds(graph)
    assert report.color_classes_up
    assert report.t_le_chromatic_index
    assert report.t_le_max_degree_plus_one
    assert report.chromatic_index_in_vizing_range
    # μ 与 |E|/χ′ 的关系只记录
    print(f"{name}: mu={report.mu} |E|/chi'={report.mu_rhs} holds={report.mu_le_rhs}")
