"""
向下封闭性质的子集格搜索与精确最小集合覆盖 (位掩码)
"""

from typing import Callable, Optional

from fastmcp.utilities.logging import get_logger

logger = get_logger(__name__)


def bits(mask: int) -> tuple[int, ...]:
    """掩码中置位的下标，升序"""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def downward_closed_family(size: int, predicate: Callable[[int], bool]) -> list[int]:
    """满足向下封闭谓词的全部子集，从小到大逐层生成

    每个子集只由 "去掉最大元素" 的父集规范扩展得到；候选集的每个
    余一子集都必须已在族中，否则不调用谓词直接剪枝。
    """
    family = [0]
    members = {0}
    frontier = [0]
    calls = 0
    while frontier:
        grown = []
        for mask in frontier:
            for b in range(mask.bit_length(), size):
                candidate = mask | (1 << b)
                if any((candidate & ~(1 << r)) not in members for r in bits(mask)):
                    continue
                calls += 1
                if predicate(candidate):
                    grown.append(candidate)
        members.update(grown)
        family.extend(grown)
        frontier = grown
    logger.debug("lattice of size %d: %d members, %d predicate calls", size, len(family), calls)
    return family


def maximal_members(family: list[int], size: int) -> list[int]:
    """族中的极大元 (加入任一元素都不再满足谓词)"""
    members = set(family)
    return [
        mask for mask in family
        if not any(mask | (1 << b) in members for b in range(size) if not mask >> b & 1)
    ]


def maximum_member(family: list[int]) -> int:
    """基数最大的成员中字典序最小者"""
    return min(family, key=lambda mask: (-mask.bit_count(), bits(mask)))


def exact_set_cover(universe: int, candidates: list[int]) -> Optional[list[int]]:
    """用候选集精确覆盖 universe 的最少个数；逐层加深，结果与候选顺序一起确定"""
    if universe == 0:
        return []
    ordered = sorted(set(candidates), key=bits)
    if any(c & ~universe for c in ordered):
        ordered = [c & universe for c in ordered]
    union = 0
    for c in ordered:
        union |= c
    if union & universe != universe:
        return None
    containing = {
        e: [c for c in ordered if c >> e & 1]
        for e in bits(universe)
    }
    largest = max(c.bit_count() for c in ordered)

    def search(covered: int, chosen: list[int], budget: int) -> Optional[list[int]]:
        remaining = universe & ~covered
        if remaining == 0:
            return list(chosen)
        if budget == 0 or remaining.bit_count() > budget * largest:
            return None
        lowest = (remaining & -remaining).bit_length() - 1
        for c in containing[lowest]:
            chosen.append(c)
            found = search(covered | c, chosen, budget - 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    for k in range(1, len(ordered) + 1):
        found = search(0, [], k)
        if found is not None:
            return sorted(found, key=bits)
    return None


def cover_to_partition(cover: list[int]) -> list[int]:
    """把覆盖改写成划分：每个元素只留在第一个包含它的部分中 (向下封闭保证仍合法)"""
    taken = 0
    parts = []
    for part in cover:
        parts.append(part & ~taken)
        taken |= part
    return [p for p in parts if p]
