"""
精确边色数 χ′：以贪心着色为上界的回溯分支定界
"""

from typing import Optional, Sequence

import networkx as nx
from fastmcp.utilities.logging import get_logger

from .errors import InvalidInputError

logger = get_logger(__name__)

Edge = tuple[int, int]


def edge_conflicts(edges: Sequence[Edge]) -> list[set[int]]:
    """线图邻接：共享端点的边互相冲突"""
    index = {frozenset(e): i for i, e in enumerate(edges)}
    if len(index) != len(edges):
        raise InvalidInputError("duplicate edges are not allowed")
    graph = nx.Graph()
    graph.add_edges_from(edges)
    line = nx.line_graph(graph)
    conflicts: list[set[int]] = [set() for _ in edges]
    for a, b in line.edges():
        i, j = index[frozenset(a)], index[frozenset(b)]
        conflicts[i].add(j)
        conflicts[j].add(i)
    return conflicts


def max_degree(edges: Sequence[Edge]) -> int:
    degree: dict[int, int] = {}
    for u, v in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    return max(degree.values(), default=0)


def is_proper_edge_coloring(edges: Sequence[Edge], colors: Sequence[int]) -> bool:
    if len(colors) != len(edges):
        return False
    conflicts = edge_conflicts(edges)
    return all(colors[i] != colors[j] for i in range(len(edges)) for j in conflicts[i])


def greedy_edge_coloring(edges: Sequence[Edge]) -> list[int]:
    """线图上的贪心着色 (最大度优先)，作为分支定界的初始上界"""
    if not edges:
        return []
    graph = nx.Graph()
    graph.add_edges_from(edges)
    line = nx.line_graph(graph)
    coloring = nx.greedy_color(line, strategy="largest_first")
    index = {frozenset(e): i for i, e in enumerate(edges)}
    colors = [0] * len(edges)
    for node, color in coloring.items():
        colors[index[frozenset(node)]] = color
    return colors


def _color_with(conflicts: list[set[int]], k: int) -> Optional[list[int]]:
    """k 色回溯；按冲突度降序着色，新颜色只用 max+1 以消除颜色对称"""
    order = sorted(range(len(conflicts)), key=lambda i: (-len(conflicts[i]), i))
    colors = [-1] * len(conflicts)

    def assign(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        e = order[pos]
        blocked = {colors[j] for j in conflicts[e]}
        for c in range(min(used + 1, k)):
            if c in blocked:
                continue
            colors[e] = c
            if assign(pos + 1, max(used, c + 1)):
                return True
        colors[e] = -1
        return False

    return colors if assign(0, 0) else None


def chromatic_index(edges: Sequence[Edge]) -> tuple[int, list[int]]:
    """返回 (χ′, 一个最优正常边着色)"""
    if not edges:
        return 0, []
    conflicts = edge_conflicts(edges)
    greedy = greedy_edge_coloring(edges)
    upper = max(greedy) + 1
    best = greedy
    for k in range(max_degree(edges), upper):
        found = _color_with(conflicts, k)
        if found is not None:
            best = found
            break
    k = max(best) + 1
    logger.debug("chromatic index %d (greedy bound %d)", k, upper)
    return k, best
