"""
有限群运算：循环群直积 (主表示) 与乘法表给出的任意有限群
"""

import itertools
import math
from abc import ABC, abstractmethod
from functools import cached_property
from typing import Iterable, Optional, Sequence

from fastmcp.utilities.logging import get_logger

from .errors import InvalidInputError

logger = get_logger(__name__)

# 群元素统一表示为整数元组：直积群中是剩余向量，乘法表群中是 (下标,)
GroupElement = tuple[int, ...]


class FiniteGroup(ABC):
    """有限群的公共接口，元素顺序一经确定即被所有枚举器共用"""

    def __init__(self, elements: Sequence[GroupElement]):
        self._elements: tuple[GroupElement, ...] = tuple(elements)
        self._index: dict[GroupElement, int] = {g: i for i, g in enumerate(self._elements)}

    @abstractmethod
    def _product(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """未经校验的乘法"""

    @abstractmethod
    def describe(self) -> str:
        """人类可读的群描述"""

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def identity(self) -> GroupElement:
        return self._elements[0]

    def elements(self) -> tuple[GroupElement, ...]:
        """全部元素，确定的顺序，单位元在首位"""
        return self._elements

    def non_identity(self) -> tuple[GroupElement, ...]:
        return self._elements[1:]

    def __contains__(self, g: object) -> bool:
        return g in self._index

    def index_of(self, g: GroupElement) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise InvalidInputError(f"element {g} does not belong to {self.describe()}") from None

    def element_at(self, i: int) -> GroupElement:
        return self._elements[i]

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """群乘法 g·h；元素不属于本群时报错"""
        self.index_of(g)
        self.index_of(h)
        return self._product(g, h)

    def inverse(self, g: GroupElement) -> GroupElement:
        return self._elements[self.inverse_indices[self.index_of(g)]]

    def order_of(self, g: GroupElement) -> int:
        """最小的 d ≥ 1 使 g^d = e"""
        i = self.index_of(g)
        table = self.mul_table
        d, power = 1, i
        while power != 0:
            power = table[power][i]
            d += 1
        return d

    def exponent(self) -> int:
        return math.lcm(*(self.order_of(g) for g in self._elements))

    @cached_property
    def mul_table(self) -> list[list[int]]:
        """下标形式的乘法表，供内层循环使用"""
        return [
            [self._index[self._product(g, h)] for h in self._elements]
            for g in self._elements
        ]

    @cached_property
    def inverse_indices(self) -> list[int]:
        table = self.mul_table
        return [row.index(0) for row in table]

    @cached_property
    def orders(self) -> list[int]:
        """按下标排列的元素阶"""
        return [self.order_of(g) for g in self._elements]

    @property
    def is_abelian(self) -> bool:
        table = self.mul_table
        n = self.order
        return all(table[i][j] == table[j][i] for i in range(n) for j in range(i + 1, n))

    def normalize_subset(self, subset: Iterable[GroupElement]) -> tuple[GroupElement, ...]:
        """校验子集 S ⊆ G \\ {e}，去重并按元素顺序排序"""
        indices = set()
        for g in subset:
            i = self.index_of(tuple(g))
            if i == 0:
                raise InvalidInputError(f"identity {self.identity} is not allowed in a subset S")
            indices.add(i)
        return tuple(self._elements[i] for i in sorted(indices))


class AbelianGroup(FiniteGroup):
    """循环群直积 Z_{n1} × … × Z_{nk}，模按给定顺序保留，不做不变因子规范化"""

    def __init__(self, moduli: Sequence[int] = ()):
        moduli = tuple(moduli)
        for n in moduli:
            if not isinstance(n, int) or isinstance(n, bool) or n < 2:
                raise InvalidInputError(f"every modulus must be an integer >= 2, got {n!r}")
        self.moduli: tuple[int, ...] = moduli
        super().__init__(list(itertools.product(*(range(n) for n in moduli))))

    def _product(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.moduli))

    def inverse(self, g: GroupElement) -> GroupElement:
        self.index_of(g)
        return tuple((n - c) % n for c, n in zip(g, self.moduli))

    def order_of(self, g: GroupElement) -> int:
        self.index_of(g)
        return math.lcm(*(n // math.gcd(c, n) for c, n in zip(g, self.moduli)))

    def exponent(self) -> int:
        return math.lcm(*self.moduli)

    @property
    def is_abelian(self) -> bool:
        return True

    def describe(self) -> str:
        if not self.moduli:
            return "trivial"
        return " x ".join(f"Z_{n}" for n in self.moduli)

    def spec(self) -> str:
        """逗号分隔的群规格字符串"""
        return ",".join(str(n) for n in self.moduli) or "1"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbelianGroup) and other.moduli == self.moduli

    def __hash__(self) -> int:
        return hash(("abelian", self.moduli))

    def __repr__(self) -> str:
        return f"AbelianGroup({list(self.moduli)})"


class TableGroup(FiniteGroup):
    """由凯莱乘法表给出的有限群，构造时完整校验群公理"""

    def __init__(self, table: Sequence[Sequence[int]], identity: int = 0, name: Optional[str] = None):
        n = len(table)
        if n < 1:
            raise InvalidInputError("a table group needs at least one element")
        if not 0 <= identity < n:
            raise InvalidInputError(f"identity index {identity} out of range")
        rows = [list(row) for row in table]
        self._validate(rows, identity)
        self._rows = rows
        self.name = name
        # 元素保留表中的下标 (i,)，单位元排在首位
        super().__init__([(identity,)] + [(i,) for i in range(n) if i != identity])

    @staticmethod
    def _validate(rows: list[list[int]], e: int) -> None:
        n = len(rows)
        full = set(range(n))
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvalidInputError(f"row {i} has {len(row)} entries, expected {n}")
            if set(row) != full:
                raise InvalidInputError(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {rows[i][j] for i in range(n)} != full:
                raise InvalidInputError(f"column {j} is not a permutation of 0..{n - 1}")
        for x in range(n):
            if rows[e][x] != x or rows[x][e] != x:
                raise InvalidInputError(f"index {e} does not act as identity on {x}")
        for x in range(n):
            right = rows[x].index(e)
            if rows[right][x] != e:
                raise InvalidInputError(f"element {x} has no two-sided inverse")
        for a in range(n):
            for b in range(n):
                ab = rows[a][b]
                for c in range(n):
                    if rows[ab][c] != rows[a][rows[b][c]]:
                        raise InvalidInputError(f"associativity fails for ({a}, {b}, {c})")

    def _product(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return (self._rows[g[0]][h[0]],)

    def describe(self) -> str:
        return self.name or f"table group of order {self.order}"

    @classmethod
    def from_abelian(cls, group: AbelianGroup) -> "TableGroup":
        """由直积群的乘法表构造 (用于两种实现的等价性检验)"""
        return cls(group.mul_table, identity=0, name=f"table({group.describe()})")

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]], name: Optional[str] = None) -> "TableGroup":
        """置换生成元的闭包；元素按置换的字典序编号，恒等置换在首位"""
        gens = [tuple(p) for p in generators]
        if not gens:
            raise InvalidInputError("at least one permutation generator is required")
        degree = len(gens[0])
        for p in gens:
            if len(p) != degree or sorted(p) != list(range(degree)):
                raise InvalidInputError(f"{list(p)} is not a permutation of 0..{degree - 1}")
        identity = tuple(range(degree))
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for p in frontier:
                for s in gens:
                    # 先作用 p 再作用 s
                    q = tuple(s[p[i]] for i in range(degree))
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        perms = sorted(seen)
        index = {p: i for i, p in enumerate(perms)}
        table = [
            [index[tuple(b[a[i]] for i in range(degree))] for b in perms]
            for a in perms
        ]
        logger.debug("permutation closure of %d generators has order %d", len(gens), len(perms))
        return cls(table, identity=index[identity], name=name)

    def __repr__(self) -> str:
        return f"TableGroup(order={self.order}, name={self.name!r})"
