"""
Cayley 有向图的构造与测地性
"""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from geodetic_mcp.blocks import block_from_colors, cross_number
from geodetic_mcp.cayley import (
    build_cayley,
    color_word,
    graph_half_factorial,
    is_geodetical_cayley,
    word_product,
)
from geodetic_mcp.digraph import is_geodetical, iter_cycles
from geodetic_mcp.group import AbelianGroup


def test_cyclic_cayley_digraph(z3):
    cayley = build_cayley(z3, [(1,)])
    assert len(cayley.digraph.arcs) == 3
    assert all(a.weight == 3 and a.color == 0 for a in cayley.digraph.arcs)
    assert cayley.describe() == "Cay(Z_3; {(1)})"
    assert cayley.digraph.labels == ("(0)", "(1)", "(2)")
    assert not cayley.is_cayley_graph
    assert is_geodetical_cayley(cayley) == (True, None)


def test_arc_weight_is_generator_order(z4):
    cayley = build_cayley(z4, [(2,), (1,)])
    assert cayley.generators == ((1,), (2,))
    assert cayley.digraph.arc(0, 1).weight == 4
    assert cayley.digraph.arc(0, 2).weight == 2
    assert cayley.digraph.arc(0, 2).color == 1
    assert cayley.color_of(cayley.digraph.arc(3, 1)) == (2,)


def test_z3_full_set_is_not_geodetical(z3):
    holds, pair = is_geodetical_cayley(build_cayley(z3, z3.non_identity()))
    assert not holds
    assert pair.first.length != pair.second.length


def test_z4_one_two_has_unequal_paths(z4):
    """(C) 成立但 Cay(Z_4; {1, 2}) 不测地"""
    cayley = build_cayley(z4, [(1,), (2,)])
    holds, pair = is_geodetical_cayley(cayley)
    assert not holds
    assert (pair.source, pair.target) == (0, 1)
    assert pair.first.vertices == [0, 1]
    assert pair.first.length == Fraction(1, 4)
    assert pair.second.vertices == [0, 2, 3, 1]
    assert pair.second.length == Fraction(5, 4)
    assert is_geodetical_cayley(cayley, naive=True)[0] is False


def test_z2_is_geodetical():
    cayley = build_cayley(AbelianGroup([2]), [(1,)])
    assert cayley.is_cayley_graph
    assert graph_half_factorial(cayley) == (True, None)


def test_s3_transpositions(s3):
    cayley = build_cayley(s3, [s3.element_at(1), s3.element_at(2)])
    assert cayley.is_cayley_graph
    assert all(a.weight == 2 for a in cayley.digraph.arcs)
    assert not graph_half_factorial(cayley)[0]


def test_cycle_colors_multiply_to_identity(z4, s3):
    for group, gens in ((z4, [(1,), (2,)]), (s3, [s3.element_at(1), s3.element_at(3)])):
        cayley = build_cayley(group, gens)
        for cycle in iter_cycles(cayley.digraph):
            assert word_product(group, color_word(cayley, cycle)) == group.identity


def test_cycle_length_is_cross_number(z4):
    cayley = build_cayley(z4, [(1,), (2,)])
    for cycle in iter_cycles(cayley.digraph):
        block = block_from_colors(z4, color_word(cayley, cycle))
        assert cycle.length == cross_number(z4, block)


@st.composite
def cayley_cases(draw):
    moduli = draw(st.sampled_from([[2], [3], [4], [5], [6], [2, 2], [2, 3], [2, 4], [3, 3]]))
    group = AbelianGroup(moduli)
    subset = draw(st.lists(st.sampled_from(group.non_identity()), unique=True, max_size=3))
    return group, subset


@given(cayley_cases())
@settings(max_examples=50, deadline=None)
def test_single_source_matches_all_pairs(case):
    group, subset = case
    cayley = build_cayley(group, subset)
    assert is_geodetical_cayley(cayley)[0] == is_geodetical(cayley.digraph)[0]
