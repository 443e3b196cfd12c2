"""
组合常数 μ, t, μ₀, t₀ 与着色类比 μ*, t*, μ₀*, t₀*；边色数界；键空间诱导的测地有向图
"""

import random
import time
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from fastmcp.utilities.logging import get_logger

from .blocks import SupportIndex, require_abelian
from .coloring import chromatic_index, is_proper_edge_coloring, max_degree
from .digraph import (
    Arc,
    WeightedDigraph,
    arc_subgraph,
    check_vertex_guard,
    is_geodetical,
    is_unique_path,
    underlying_graph,
)
from .errors import CapExceededError, InvalidInputError
from .group import FiniteGroup
from .lattice import (
    bits,
    cover_to_partition,
    downward_closed_family,
    exact_set_cover,
    maximal_members,
    maximum_member,
)
from .models import BoundReport, ConstantsReport, StarConstantsReport, get_config
from .voltage import VoltageAssignment, kvl_check

logger = get_logger(__name__)

Potential = Union[Sequence[Fraction], Mapping[int, Fraction]]


def _optimum(
    size: int, predicate: Callable[[int], bool]
) -> tuple[list[int], int, Optional[list[int]]]:
    """(族, 最大成员, 最少覆盖)；覆盖只用极大成员，有单元素子集不满足谓词时没有覆盖"""
    family = downward_closed_family(size, predicate)
    best = maximum_member(family)
    cover = exact_set_cover((1 << size) - 1, maximal_members(family, size))
    return family, best, cover


def compute_mu_t(group: FiniteGroup, max_order: Optional[int] = None) -> ConstantsReport:
    """穷举 μ(G), t(G), μ₀(G), t₀(G) 及字典序最先的见证"""
    group = require_abelian(group)
    cap = max_order if max_order is not None else get_config().max_group_order
    if group.order > cap:
        raise CapExceededError(
            f"{group.describe()} has order {group.order}; constants are computed only up to order {cap}"
        )
    started = time.perf_counter()
    index = SupportIndex(group)
    hf_family, mu_mask, t_cover = _optimum(index.size, index.is_half_factorial_mask)
    whf_family, mu0_mask, t0_cover = _optimum(index.size, index.is_weakly_half_factorial_mask)
    # 单元素子集 {g} 只有原子 g^ord(g)，交叉数为 1
    assert t_cover is not None and t0_cover is not None

    def coords(mask: int) -> list[list[int]]:
        return [list(g) for g in index.subset_of(mask)]

    report = ConstantsReport(
        group=group.describe(),
        order=group.order,
        mu=mu_mask.bit_count(),
        t=len(t_cover),
        mu0=mu0_mask.bit_count(),
        t0=len(t0_cover),
        mu_witness=coords(mu_mask),
        t_cover=[coords(m) for m in t_cover],
        mu0_witness=coords(mu0_mask),
        t0_cover=[coords(m) for m in t0_cover],
        hf_subsets=len(hf_family),
        whf_subsets=len(whf_family),
        elapsed=time.perf_counter() - started,
    )
    logger.info("%s: mu=%d t=%d mu0=%d t0=%d", report.group, report.mu, report.t, report.mu0, report.t0)
    return report


def compute_mu_star_t_star(
    digraph: WeightedDigraph,
    voltage: Optional[VoltageAssignment] = None,
    as_graph: bool = False,
    max_vertices: Optional[int] = None,
) -> StarConstantsReport:
    """颜色子集 S 使 A_S 测地的最大 |S| 与最少测地颜色类划分；有电压时用 KVL 给出 μ₀*, t₀*"""
    if any(arc.color is None for arc in digraph.arcs):
        raise InvalidInputError("every arc must be colored to compute mu* and t*")
    check_vertex_guard(digraph, max_vertices)
    colors = sorted({arc.color for arc in digraph.arcs})

    def restrict(mask: int) -> WeightedDigraph:
        chosen = {colors[i] for i in bits(mask)}
        return arc_subgraph(digraph, lambda a: a.color in chosen)

    def geodetical(mask: int) -> bool:
        return is_geodetical(restrict(mask), as_graph, max_vertices)[0]

    _, best, cover = _optimum(len(colors), geodetical)

    def names(mask: int) -> list[int]:
        return [colors[i] for i in bits(mask)]

    fields = dict(
        colors=colors,
        as_graph=as_graph,
        mu_star=best.bit_count(),
        t_star=len(cover) if cover is not None else None,
        mu_star_witness=names(best),
        t_star_partition=[names(m) for m in cover_to_partition(cover)] if cover is not None else None,
    )
    if voltage is not None:
        def kvl(mask: int) -> bool:
            sub = restrict(mask)
            sub_voltage = VoltageAssignment(
                voltage.modulus, {a.pair: voltage(a.tail, a.head) for a in sub.arcs}
            )
            return kvl_check(sub, sub_voltage, max_vertices, as_graph).holds

        _, best0, cover0 = _optimum(len(colors), kvl)
        fields.update(
            mu0_star=best0.bit_count(),
            t0_star=len(cover0) if cover0 is not None else None,
            mu0_star_witness=names(best0),
            t0_star_partition=[names(m) for m in cover_to_partition(cover0)] if cover0 is not None else None,
        )
    return StarConstantsReport(**fields)


def _edge_coloring_from_arcs(graph: WeightedDigraph, edges: list[tuple[int, int]]) -> Optional[list[int]]:
    """弧上的颜色全有或全无；部分着色的输入直接拒绝"""
    uncolored = [
        (u, v) for u, v in edges if graph.arc(u, v).color is None and graph.arc(v, u).color is None
    ]
    if len(uncolored) == len(edges):
        return None
    if uncolored:
        raise InvalidInputError(f"edges {uncolored} are uncolored; color every edge or none")
    colors = []
    for u, v in edges:
        color = graph.arc(u, v).color
        if graph.arc(v, u).color != color:
            raise InvalidInputError(f"edge ({u}, {v}) has different colors in its two directions")
        colors.append(color)
    return colors


def check_coloring_bounds(
    graph: WeightedDigraph,
    coloring: Optional[Sequence[int]] = None,
    max_edges: Optional[int] = None,
    max_vertices: Optional[int] = None,
) -> BoundReport:
    """χ′、Δ、t(Gr)、μ(Gr) 的精确值与 t ≤ χ′、t ≤ Δ+1；μ 与 |E|/χ′ 的关系只报告不断言"""
    graph = underlying_graph(graph)
    check_vertex_guard(graph, max_vertices)
    edges = graph.edges()
    cap = max_edges if max_edges is not None else get_config().max_edges
    if len(edges) > cap:
        raise CapExceededError(f"graph has {len(edges)} edges; edge-subset search is capped at {cap}")

    supplied = list(coloring) if coloring is not None else _edge_coloring_from_arcs(graph, edges)
    if supplied is not None and not is_proper_edge_coloring(edges, supplied):
        raise InvalidInputError("the supplied edge coloring is not proper")
    chi, optimal = chromatic_index(edges)
    used = supplied if supplied is not None else optimal
    delta = max_degree(edges)

    weights = {e: graph.arc(*e).weight for e in edges}

    def subgraph(mask: int) -> WeightedDigraph:
        arcs = []
        for i in bits(mask):
            u, v = edges[i]
            arcs.append(Arc(u, v, weights[edges[i]]))
            arcs.append(Arc(v, u, weights[edges[i]]))
        return WeightedDigraph(graph.order, arcs)

    _, best, cover = _optimum(len(edges), lambda mask: is_geodetical(subgraph(mask), True, max_vertices)[0])
    assert cover is not None, "a single edge is geodetical as a graph"

    classes: dict[int, list[int]] = {}
    for i, c in enumerate(used):
        classes.setdefault(c, []).append(i)
    classes_up = all(
        is_unique_path(subgraph(sum(1 << i for i in members)), True, max_vertices)
        for members in classes.values()
    )
    min_class = min((len(m) for m in classes.values()), default=0)
    mu = best.bit_count()
    t = len(cover)
    rhs = Fraction(len(edges), chi) if chi else None
    return BoundReport(
        vertices=graph.order,
        edges=[list(e) for e in edges],
        max_degree=delta,
        chromatic_index=chi,
        coloring=list(used),
        coloring_supplied=supplied is not None,
        color_classes_up=classes_up,
        min_class_size=min_class,
        t=t,
        t_cover=[list(bits(m)) for m in cover],
        mu=mu,
        mu_witness=list(bits(best)),
        t_le_chromatic_index=t <= chi,
        t_le_max_degree_plus_one=t <= delta + 1,
        chromatic_index_in_vizing_range=chi in (delta, delta + 1),
        mu_rhs=rhs,
        mu_le_rhs=(mu <= rhs) if rhs is not None else None,
        mu_le_min_class=(mu <= min_class) if classes else None,
    )


def _potential_values(digraph: WeightedDigraph, potential: Potential) -> list[Fraction]:
    if isinstance(potential, Mapping):
        missing = [v for v in digraph.vertices if v not in potential]
        if missing:
            raise InvalidInputError(f"potential undefined on vertices {missing}")
        values = [potential[v] for v in digraph.vertices]
    else:
        values = list(potential)
        if len(values) != digraph.order:
            raise InvalidInputError(f"expected {digraph.order} potential values, got {len(values)}")
    out = []
    for value in values:
        if isinstance(value, float) or isinstance(value, bool):
            raise InvalidInputError(f"potential values must be exact rationals, got {value!r}")
        out.append(Fraction(value))
    return out


def bond_induced_digraph(digraph: WeightedDigraph, potential: Potential) -> WeightedDigraph:
    """g = δp，A_g = {a : g(a) > 0}，ψ_g = 1/g (所以 λ_g = g)"""
    p = _potential_values(digraph, potential)
    arcs = []
    for arc in digraph.arcs:
        g = p[arc.head] - p[arc.tail]
        if g > 0:
            arcs.append(Arc(arc.tail, arc.head, 1 / g, arc.color))
    return WeightedDigraph(digraph.order, arcs, digraph.labels)


def random_potential(digraph: WeightedDigraph, rng: random.Random) -> list[Fraction]:
    """小分子小分母的随机有理势"""
    return [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in digraph.vertices]
