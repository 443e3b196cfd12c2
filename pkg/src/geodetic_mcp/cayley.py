"""
Cayley 有向图 Cay(G; S)：弧 (g, gs) 以 s 着色，权 ψ = ord(s)
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from fastmcp.utilities.logging import get_logger

from .digraph import (
    Arc,
    Path,
    PathPair,
    WeightedDigraph,
    check_vertex_guard,
    geodetical_from,
    is_geodetical,
)
from .group import FiniteGroup, GroupElement

logger = get_logger(__name__)


def format_element(g: GroupElement) -> str:
    return "(" + ",".join(str(c) for c in g) + ")"


@dataclass(frozen=True)
class CayleyDigraph:
    """顶点 = G 的元素 (按群的元素顺序编号)，弧颜色 = 生成元在 S 中的下标"""
    group: FiniteGroup
    generators: tuple[GroupElement, ...]
    digraph: WeightedDigraph

    def color_of(self, arc: Arc) -> GroupElement:
        return self.generators[arc.color]

    @property
    def is_cayley_graph(self) -> bool:
        """S = S⁻¹ 时可视为 Cayley 图"""
        return self.digraph.symmetric

    def describe(self) -> str:
        gens = ", ".join(format_element(s) for s in self.generators)
        return f"Cay({self.group.describe()}; {{{gens}}})"


def build_cayley(group: FiniteGroup, generators: Iterable[GroupElement]) -> CayleyDigraph:
    """构造 Cay(G; S)；e ∈ S 会产生环，因此拒绝"""
    gens = group.normalize_subset(generators)
    table = group.mul_table
    gen_idx = [group.index_of(s) for s in gens]
    weights = [Fraction(group.orders[i]) for i in gen_idx]
    arcs = [
        Arc(g, table[g][s], weights[color], color)
        for g in range(group.order)
        for color, s in enumerate(gen_idx)
    ]
    digraph = WeightedDigraph(group.order, arcs, [format_element(g) for g in group.elements()])
    logger.debug("built Cayley digraph on %d vertices with %d arcs", group.order, len(arcs))
    return CayleyDigraph(group, gens, digraph)


def is_geodetical_cayley(
    cayley: CayleyDigraph,
    naive: bool = False,
    max_vertices: Optional[int] = None,
) -> tuple[bool, Optional[PathPair]]:
    """Cay(G; S) 是否测地

    左乘 x⁻¹ 把 (x, y)-路径一一映到 (e, x⁻¹y)-路径且保持颜色与长度，
    因此只需枚举从 e 出发的路径；naive=True 时退回全对检验。
    """
    if naive:
        return is_geodetical(cayley.digraph, max_vertices=max_vertices)
    check_vertex_guard(cayley.digraph, max_vertices)
    return geodetical_from(cayley.digraph, 0)


def color_word(cayley: CayleyDigraph, path: Path) -> tuple[GroupElement, ...]:
    """沿路径读出的生成元序列 s_1 … s_k"""
    return tuple(cayley.color_of(arc) for arc in path.arcs)


def word_product(group: FiniteGroup, word: Iterable[GroupElement]) -> GroupElement:
    table = group.mul_table
    acc = 0
    for s in word:
        acc = table[acc][group.index_of(s)]
    return group.element_at(acc)


def graph_half_factorial(
    cayley: CayleyDigraph,
    max_vertices: Optional[int] = None,
) -> tuple[bool, Optional[PathPair]]:
    """图论意义下的半因子性 (对非交换群即以测地性为定义)"""
    return is_geodetical_cayley(cayley, max_vertices=max_vertices)
