"""
子集 S 上的零和块与原子、交叉数，以及性质 (C) / (C₀) 的判定
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from fastmcp.utilities.logging import get_logger

from .errors import InvalidInputError
from .group import AbelianGroup, FiniteGroup, GroupElement

logger = get_logger(__name__)


@dataclass(frozen=True)
class Block:
    """非单位元的多重集，按群的元素顺序存为有序元组"""
    entries: tuple[GroupElement, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def support(self) -> tuple[GroupElement, ...]:
        return tuple(sorted(set(self.entries)))

    def concat(self, other: "Block") -> "Block":
        """多重集并 b1 ⊎ b2"""
        return Block(tuple(sorted(self.entries + other.entries)))


@dataclass(frozen=True)
class Atom:
    """极小块；交叉数精确计算"""
    block: Block
    cross: Fraction

    @property
    def entries(self) -> tuple[GroupElement, ...]:
        return self.block.entries

    def __len__(self) -> int:
        return len(self.block)


def require_abelian(group: FiniteGroup) -> AbelianGroup:
    """块与交叉数只对交换群有定义"""
    if not isinstance(group, AbelianGroup):
        raise InvalidInputError(
            f"blocks and cross numbers need an abelian direct product, got {group.describe()}; "
            "use the Cayley digraph checks for table groups"
        )
    return group


def validate_subset(group: FiniteGroup, subset: Iterable[GroupElement]) -> tuple[GroupElement, ...]:
    return require_abelian(group).normalize_subset(subset)


def _sorted_entries(group: AbelianGroup, entries: Iterable[GroupElement]) -> tuple[GroupElement, ...]:
    items = [tuple(g) for g in entries]
    if not items:
        raise InvalidInputError("a block needs at least one entry")
    for g in items:
        if group.index_of(g) == 0:
            raise InvalidInputError(f"identity {g} cannot be a block entry")
    return tuple(sorted(items, key=group.index_of))


def _sum(group: AbelianGroup, counts: Iterable[tuple[GroupElement, int]]) -> GroupElement:
    total = [0] * len(group.moduli)
    for g, k in counts:
        for i, c in enumerate(g):
            total[i] += k * c
    return tuple(t % n for t, n in zip(total, group.moduli))


def is_block(group: FiniteGroup, entries: Iterable[GroupElement]) -> bool:
    """所有元素之积是否为单位元"""
    group = require_abelian(group)
    items = _sorted_entries(group, entries)
    return _sum(group, ((g, 1) for g in items)) == group.identity


def make_block(group: FiniteGroup, entries: Iterable[GroupElement]) -> Block:
    group = require_abelian(group)
    items = _sorted_entries(group, entries)
    if _sum(group, ((g, 1) for g in items)) != group.identity:
        raise InvalidInputError(f"entries {list(items)} do not multiply to the identity")
    return Block(items)


def is_atom(group: FiniteGroup, block: Block) -> bool:
    """逐个检查不同的真子多重集，没有零和者即为原子"""
    group = require_abelian(group)
    counts = sorted(Counter(block.entries).items(), key=lambda item: group.index_of(item[0]))
    elements = [g for g, _ in counts]
    full = tuple(k for _, k in counts)
    for selection in itertools.product(*(range(k + 1) for k in full)):
        if not any(selection) or selection == full:
            continue
        if _sum(group, zip(elements, selection)) == group.identity:
            return False
    return True


def cross_number(group: FiniteGroup, block: Block) -> Fraction:
    """c(β) = Σ 1/ord(g_i)，始终是精确有理数"""
    group = require_abelian(group)
    return sum((Fraction(1, group.order_of(g)) for g in block.entries), Fraction(0))


def iter_atoms(
    group: FiniteGroup,
    subset: Iterable[GroupElement],
    max_len: Optional[int] = None,
) -> Iterator[Atom]:
    """按字典序枚举支撑在 S 中的全部原子

    深度优先遍历非递减的无零和序列 T；当 T·s 之和为 e 时 T·s 就是原子，
    否则只要 -s 不是 T 的子和就继续扩展。每个原子恰好出现一次。
    """
    group = require_abelian(group)
    gens = validate_subset(group, subset)
    if max_len is not None and max_len < 2:
        raise InvalidInputError(f"max_len must be at least 2, got {max_len}")
    cap = group.order if max_len is None else min(max_len, group.order)
    idx = [group.index_of(g) for g in gens]
    table = group.mul_table
    inv = group.inverse_indices
    orders = group.orders
    elements = group.elements()

    def emit(seq: list[int]) -> Atom:
        cross = sum((Fraction(1, orders[i]) for i in seq), Fraction(0))
        return Atom(Block(tuple(elements[i] for i in seq)), cross)

    def extend(start: int, prefix: list[int], sums: frozenset[int], total: int) -> Iterator[Atom]:
        # prefix 无零和，sums 是其全部非空子和
        for pos in range(start, len(idx)):
            s = idx[pos]
            if table[total][s] == 0:
                assert len(prefix) + 1 <= group.order, "atom longer than |G|"
                if len(prefix) + 1 <= cap:
                    yield emit(prefix + [s])
                continue
            if inv[s] in sums or len(prefix) + 2 > cap:
                continue
            assert len(prefix) + 1 < group.order, "zero-sum-free sequence of length |G|"
            grown = sums | {table[x][s] for x in sums} | {s}
            prefix.append(s)
            yield from extend(pos, prefix, frozenset(grown), table[total][s])
            prefix.pop()

    for pos, s in enumerate(idx):
        if cap >= 2:
            yield from extend(pos, [s], frozenset({s}), s)


def enumerate_atoms(
    group: FiniteGroup,
    subset: Iterable[GroupElement],
    max_len: Optional[int] = None,
) -> list[Atom]:
    atoms = list(iter_atoms(group, subset, max_len))
    logger.debug("%d atoms over %s", len(atoms), group.describe())
    return atoms


def naive_atoms(
    group: FiniteGroup,
    subset: Iterable[GroupElement],
    max_len: Optional[int] = None,
) -> list[Atom]:
    """朴素过滤器：枚举长度 ≤ |G| 的全部多重集再用 is_block + is_atom 过滤"""
    group = require_abelian(group)
    gens = validate_subset(group, subset)
    if max_len is not None and max_len < 2:
        raise InvalidInputError(f"max_len must be at least 2, got {max_len}")
    cap = group.order if max_len is None else min(max_len, group.order)
    found = []
    for length in range(2, cap + 1):
        for combo in itertools.combinations_with_replacement(gens, length):
            if not is_block(group, combo):
                continue
            block = Block(tuple(combo))
            if is_atom(group, block):
                found.append(Atom(block, cross_number(group, block)))
    index = group.index_of
    found.sort(key=lambda atom: [index(g) for g in atom.entries])
    return found


def is_half_factorial(group: FiniteGroup, subset: Iterable[GroupElement]) -> tuple[bool, Optional[Atom]]:
    """性质 (C)：每个原子的交叉数都等于 1；失败时返回第一个违反的原子"""
    for atom in iter_atoms(group, subset):
        if atom.cross != 1:
            return False, atom
    return True, None


def is_weakly_half_factorial(group: FiniteGroup, subset: Iterable[GroupElement]) -> tuple[bool, Optional[Atom]]:
    """性质 (C₀)：每个原子的交叉数都是整数"""
    for atom in iter_atoms(group, subset):
        if atom.cross.denominator != 1:
            return False, atom
    return True, None


def max_atom_length(group: FiniteGroup, subset: Optional[Iterable[GroupElement]] = None) -> int:
    """观测到的最大原子长度 (S 缺省为 G \\ {e})"""
    if subset is None:
        subset = require_abelian(group).non_identity()
    return max((len(atom) for atom in iter_atoms(group, subset)), default=0)


def block_from_colors(group: FiniteGroup, colors: Sequence[GroupElement]) -> Block:
    """闭路径的颜色序列即是一个块 (s_1 s_2 … s_k = e)"""
    return make_block(group, colors)


def _minimal_masks(masks: set[int]) -> list[int]:
    kept: list[int] = []
    for mask in sorted(masks, key=lambda m: (m.bit_count(), m)):
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return kept


class SupportIndex:
    """G \\ {e} 上全部原子只枚举一次，按支撑记录坏原子

    S 满足 (C) 当且仅当没有交叉数 ≠ 1 的原子支撑在 S 中；
    子集以位掩码表示，第 i 位对应第 i+1 个元素 (跳过单位元)。
    """

    def __init__(self, group: FiniteGroup):
        self.group = require_abelian(group)
        self.universe = self.group.non_identity()
        self.size = len(self.universe)
        hf_bad: set[int] = set()
        whf_bad: set[int] = set()
        count = 0
        for atom in iter_atoms(self.group, self.universe):
            count += 1
            if atom.cross == 1:
                continue
            mask = self.mask_of(atom.block.support())
            hf_bad.add(mask)
            if atom.cross.denominator != 1:
                whf_bad.add(mask)
        self.atom_count = count
        self._hf_bad = _minimal_masks(hf_bad)
        self._whf_bad = _minimal_masks(whf_bad)
        logger.debug(
            "%s: %d atoms, %d minimal non-(C) supports, %d minimal non-(C0) supports",
            self.group.describe(), count, len(self._hf_bad), len(self._whf_bad),
        )

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def mask_of(self, subset: Iterable[GroupElement]) -> int:
        mask = 0
        for g in subset:
            i = self.group.index_of(tuple(g))
            if i == 0:
                raise InvalidInputError("identity is not allowed in a subset S")
            mask |= 1 << (i - 1)
        return mask

    def subset_of(self, mask: int) -> tuple[GroupElement, ...]:
        return tuple(g for i, g in enumerate(self.universe) if mask >> i & 1)

    def is_half_factorial_mask(self, mask: int) -> bool:
        return not any(bad & mask == bad for bad in self._hf_bad)

    def is_weakly_half_factorial_mask(self, mask: int) -> bool:
        return not any(bad & mask == bad for bad in self._whf_bad)
