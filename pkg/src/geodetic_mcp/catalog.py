"""
小群目录与小图/有向图语料 (扫描与测试共用)
"""

import random
from fractions import Fraction
from typing import Iterator

import networkx as nx

from .cayley import build_cayley
from .digraph import Arc, WeightedDigraph, graph_from_edges
from .group import AbelianGroup, FiniteGroup, TableGroup


def abelian_moduli(order: int) -> list[tuple[int, ...]]:
    """order 的全部无序因子分解 (因子 ≥ 2，非降序)；同构类型可能重复"""
    if order == 1:
        return [()]

    def split(n: int, least: int) -> Iterator[tuple[int, ...]]:
        if n == 1:
            yield ()
            return
        for d in range(least, n + 1):
            if n % d == 0:
                for rest in split(n // d, d):
                    yield (d,) + rest

    return list(split(order, 2))


def abelian_catalog(max_order: int, min_order: int = 1) -> list[AbelianGroup]:
    """阶在 [min_order, max_order] 内的全部直积 Z_{n1} x … x Z_{nk}"""
    return [
        AbelianGroup(moduli)
        for order in range(min_order, max_order + 1)
        for moduli in abelian_moduli(order)
    ]


def symmetric_group_s3() -> TableGroup:
    return TableGroup.from_permutations([[1, 0, 2], [1, 2, 0]], name="S_3")


def dihedral_group_d4() -> TableGroup:
    return TableGroup.from_permutations([[1, 2, 3, 0], [3, 2, 1, 0]], name="D_4")


def nonabelian_catalog() -> list[FiniteGroup]:
    return [symmetric_group_s3(), dihedral_group_d4()]


def _from_networkx(graph: nx.Graph) -> tuple[int, list[tuple[int, int]]]:
    graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    edges = sorted((min(u, v), max(u, v)) for u, v in graph.edges())
    return graph.number_of_nodes(), edges


def graph_corpus() -> list[tuple[str, WeightedDigraph]]:
    """30 个小的简单图 (单位权对称有向图)"""
    named: list[tuple[str, nx.Graph]] = []
    named += [(f"P{n}", nx.path_graph(n)) for n in range(2, 7)]
    named += [(f"C{n}", nx.cycle_graph(n)) for n in range(3, 7)]
    named += [(f"K1,{n}", nx.star_graph(n)) for n in range(2, 6)]
    named += [("K3", nx.complete_graph(3)), ("K4", nx.complete_graph(4))]
    named += [("K2,2", nx.complete_bipartite_graph(2, 2)), ("K2,3", nx.complete_bipartite_graph(2, 3))]
    named += [("W4", nx.wheel_graph(4)), ("W5", nx.wheel_graph(5))]
    named += [("L2", nx.ladder_graph(2)), ("L3", nx.ladder_graph(3))]
    named += [
        ("lollipop3,2", nx.lollipop_graph(3, 2)),
        ("lollipop3,1", nx.lollipop_graph(3, 1)),
        ("barbell3", nx.barbell_graph(3, 0)),
        ("bull", nx.bull_graph()),
        ("diamond", nx.diamond_graph()),
        ("house", nx.house_graph()),
        ("house_x", nx.house_x_graph()),
        ("tree2,2", nx.balanced_tree(2, 2)),
        ("prism", nx.circular_ladder_graph(3)),
    ]
    corpus = []
    for name, graph in named:
        order, edges = _from_networkx(graph)
        corpus.append((name, graph_from_edges(order, edges)))
    return corpus


def random_digraph(order: int, density: float, seed: int) -> WeightedDigraph:
    """随机有向图；反向弧共用同一个小有理权"""
    rng = random.Random(seed)
    shape = nx.gnp_random_graph(order, density, seed=seed, directed=True)
    weights: dict[frozenset[int], Fraction] = {}
    arcs = []
    for u, v in sorted(shape.edges()):
        w = weights.setdefault(frozenset((u, v)), Fraction(rng.randint(1, 4), rng.randint(1, 3)))
        arcs.append(Arc(u, v, w, rng.randint(0, 2)))
    return WeightedDigraph(order, arcs)


def digraph_corpus() -> list[tuple[str, WeightedDigraph]]:
    """20 个小有向图：部分图语料、若干 Cayley 有向图与定种子的随机有向图"""
    graphs = dict(graph_corpus())
    corpus = [(name, graphs[name]) for name in ("P4", "C5", "K4", "K2,3", "W5", "L3", "bull", "prism")]
    cayleys = [
        (AbelianGroup([3]), [(1,)]),
        (AbelianGroup([4]), [(1,), (2,)]),
        (AbelianGroup([2, 2]), [(0, 1), (1, 0), (1, 1)]),
        (AbelianGroup([5]), [(1,), (2,)]),
        (AbelianGroup([6]), [(1,), (3,)]),
    ]
    for group, gens in cayleys:
        cayley = build_cayley(group, gens)
        corpus.append((cayley.describe(), cayley.digraph))
    s3 = symmetric_group_s3()
    cayley = build_cayley(s3, [s3.element_at(1), s3.element_at(2)])
    corpus.append((cayley.describe(), cayley.digraph))
    for seed in range(6):
        corpus.append((f"random{seed}", random_digraph(5 + seed % 3, 0.4, seed)))
    return corpus
