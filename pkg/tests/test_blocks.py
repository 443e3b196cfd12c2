"""
块、原子、交叉数与性质 (C) / (C₀)
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodetic_mcp.blocks import (
    Block,
    SupportIndex,
    cross_number,
    enumerate_atoms,
    is_atom,
    is_block,
    is_half_factorial,
    is_weakly_half_factorial,
    make_block,
    max_atom_length,
    naive_atoms,
)
from geodetic_mcp.catalog import abelian_catalog
from geodetic_mcp.errors import InvalidInputError
from geodetic_mcp.group import AbelianGroup, TableGroup


def entries_of(atoms):
    return [list(a.entries) for a in atoms]


def test_z3_atoms_in_lexicographic_order(z3):
    atoms = enumerate_atoms(z3, [(1,), (2,)])
    assert entries_of(atoms) == [[(1,), (1,), (1,)], [(1,), (2,)], [(2,), (2,), (2,)]]
    assert [a.cross for a in atoms] == [Fraction(1), Fraction(2, 3), Fraction(1)]


def test_max_len_caps_enumeration(z3):
    assert entries_of(enumerate_atoms(z3, [(1,), (2,)], max_len=2)) == [[(1,), (2,)]]
    with pytest.raises(InvalidInputError):
        enumerate_atoms(z3, [(1,)], max_len=1)


def test_empty_subset_has_no_atoms(z3):
    assert enumerate_atoms(z3, []) == []
    assert is_half_factorial(z3, []) == (True, None)


def test_z3_full_set_is_not_half_factorial(z3):
    holds, atom = is_half_factorial(z3, [(1,), (2,)])
    assert not holds
    assert list(atom.entries) == [(1,), (2,)]
    assert atom.cross == Fraction(2, 3)
    holds, atom = is_weakly_half_factorial(z3, [(1,), (2,)])
    assert not holds
    assert atom.cross == Fraction(2, 3)


def test_carlitz_z2():
    group = AbelianGroup([2])
    assert is_half_factorial(group, [(1,)]) == (True, None)


def test_z4_one_two_is_half_factorial(z4):
    atoms = enumerate_atoms(z4, [(1,), (2,)])
    assert sorted(len(a) for a in atoms) == [2, 3, 4]
    assert all(a.cross == 1 for a in atoms)
    assert is_half_factorial(z4, [(1,), (2,)])[0]


def test_z4_units_are_not_weakly_half_factorial(z4):
    holds, atom = is_weakly_half_factorial(z4, [(1,), (3,)])
    assert not holds
    assert atom.cross == Fraction(1, 2)


def test_z6_two_three_is_half_factorial():
    group = AbelianGroup([6])
    assert is_half_factorial(group, [(2,), (3,)])[0]


def test_klein_four_full_set(klein):
    holds, atom = is_weakly_half_factorial(klein, klein.non_identity())
    assert not holds
    assert len(atom) == 3
    assert atom.cross == Fraction(3, 2)


def test_block_helpers(z3):
    assert is_block(z3, [(1,), (2,)])
    assert not is_block(z3, [(1,), (1,)])
    block = make_block(z3, [(2,), (1,)])
    assert block.entries == ((1,), (2,))
    assert cross_number(z3, block) == Fraction(2, 3)
    assert is_atom(z3, block)
    assert not is_atom(z3, block.concat(block))
    with pytest.raises(InvalidInputError):
        make_block(z3, [(1,)])
    with pytest.raises(InvalidInputError):
        make_block(z3, [(0,), (1,), (2,)])


def test_blocks_need_an_abelian_group(s3):
    with pytest.raises(InvalidInputError):
        enumerate_atoms(s3, [(1,)])
    with pytest.raises(InvalidInputError):
        is_half_factorial(TableGroup.from_abelian(AbelianGroup([3])), [(1,)])


@pytest.mark.parametrize("n", range(2, 9))
def test_max_atom_length_of_cyclic_group(n):
    assert max_atom_length(AbelianGroup([n])) == n


@pytest.mark.parametrize("group", abelian_catalog(6), ids=lambda g: g.describe())
def test_enumerator_matches_naive_filter_small(group):
    universe = group.non_identity()
    for mask in range(1 << len(universe)):
        subset = [g for i, g in enumerate(universe) if mask >> i & 1]
        fast = enumerate_atoms(group, subset)
        slow = naive_atoms(group, subset)
        assert [a.block for a in fast] == [a.block for a in slow]
        assert [a.cross for a in fast] == [a.cross for a in slow]


@pytest.mark.parametrize("group", abelian_catalog(8, min_order=2), ids=lambda g: g.describe())
def test_support_index_matches_direct_predicates(group):
    index = SupportIndex(group)
    for mask in range(index.full_mask + 1):
        subset = index.subset_of(mask)
        assert index.mask_of(subset) == mask
        assert index.is_half_factorial_mask(mask) == is_half_factorial(group, subset)[0]
        assert index.is_weakly_half_factorial_mask(mask) == is_weakly_half_factorial(group, subset)[0]


@st.composite
def group_and_subset(draw):
    moduli = draw(st.lists(st.integers(min_value=2, max_value=4), min_size=1, max_size=2))
    group = AbelianGroup(moduli)
    subset = draw(st.lists(st.sampled_from(group.non_identity()), unique=True, max_size=4))
    return group, subset


@given(group_and_subset())
@settings(max_examples=60, deadline=None)
def test_atoms_are_minimal_blocks(case):
    group, subset = case
    for atom in enumerate_atoms(group, subset):
        assert is_block(group, atom.entries)
        assert is_atom(group, atom.block)
        assert 2 <= len(atom) <= group.order
        assert set(atom.entries) <= set(subset)
        assert atom.cross == cross_number(group, Block(atom.entries))


@given(group_and_subset())
@settings(max_examples=60, deadline=None)
def test_half_factorial_implies_weakly_half_factorial(case):
    group, subset = case
    if is_half_factorial(group, subset)[0]:
        assert is_weakly_half_factorial(group, subset)[0]


@pytest.mark.parametrize("group", abelian_catalog(10, min_order=2), ids=lambda g: g.describe())
def test_singletons_are_half_factorial(group):
    for g in group.non_identity():
        atoms = enumerate_atoms(group, [g])
        assert [len(a) for a in atoms] == [group.order_of(g)]
        assert atoms[0].cross == 1
        assert is_half_factorial(group, [g]) == (True, None)


@pytest.mark.parametrize("group", abelian_catalog(7, min_order=2), ids=lambda g: g.describe())
def test_properties_are_closed_under_subsets(group):
    index = SupportIndex(group)
    for predicate in (index.is_half_factorial_mask, index.is_weakly_half_factorial_mask):
        for mask in range(index.full_mask + 1):
            if predicate(mask):
                # 去掉任一元素仍成立，归纳即得全部子集
                assert all(predicate(mask & ~(1 << i)) for i in range(index.size) if mask >> i & 1)


@st.composite
def group_subset_and_part(draw):
    group, subset = draw(group_and_subset())
    part = draw(st.lists(st.sampled_from(subset), unique=True)) if subset else []
    return group, subset, part


@given(group_subset_and_part())
@settings(max_examples=60, deadline=None)
def test_half_factorial_passes_to_subsets(case):
    group, subset, part = case
    if is_half_factorial(group, subset)[0]:
        assert is_half_factorial(group, part)[0]
    if is_weakly_half_factorial(group, subset)[0]:
        assert is_weakly_half_factorial(group, part)[0]


def closing_block(group, items):
    """补上和的逆元，使序列成为块"""
    total = group.identity
    for g in items:
        total = group.multiply(total, g)
    tail = [] if total == group.identity else [group.inverse(total)]
    return make_block(group, list(items) + tail)


@st.composite
def group_and_two_blocks(draw):
    moduli = draw(st.lists(st.integers(min_value=2, max_value=5), min_size=1, max_size=2))
    group = AbelianGroup(moduli)
    elements = st.sampled_from(group.non_identity())
    first = draw(st.lists(elements, min_size=1, max_size=6))
    second = draw(st.lists(elements, min_size=1, max_size=6))
    return group, closing_block(group, first), closing_block(group, second)


@given(group_and_two_blocks())
@settings(max_examples=80, deadline=None)
def test_cross_number_is_additive(case):
    group, first, second = case
    joined = first.concat(second)
    assert is_block(group, joined.entries)
    assert len(joined) == len(first) + len(second)
    assert cross_number(group, joined) == cross_number(group, first) + cross_number(group, second)
    assert not is_atom(group, joined)
