"""
带权、着色、无环无重弧的有向图：简单路径枚举、测地性、m-测地谱与 UP 性质
"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

import networkx as nx
from fastmcp.utilities.logging import get_logger

from .errors import CapExceededError, InvalidInputError
from .models import PathSpectrum, SpectrumEntry, get_config

logger = get_logger(__name__)


@dataclass(frozen=True, order=True)
class Arc:
    """弧 (tail, head)，权 ψ 为正有理数，长度 λ = 1/ψ"""
    tail: int
    head: int
    weight: Fraction
    color: Optional[int] = None
    length: Fraction = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        weight = self.weight
        if not isinstance(weight, Fraction):
            if isinstance(weight, bool) or not isinstance(weight, int):
                raise InvalidInputError(f"arc weight must be an exact rational, got {weight!r}")
            weight = Fraction(weight)
            object.__setattr__(self, "weight", weight)
        if weight <= 0:
            raise InvalidInputError(f"arc ({self.tail}, {self.head}) has non-positive weight {weight}")
        object.__setattr__(self, "length", 1 / weight)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.tail, self.head)


class WeightedDigraph:
    """(D, ψ)：顶点为 0..n-1，弧按端点下标排序以保证结果可复现"""

    def __init__(self, order: int, arcs: Iterable[Arc], labels: Optional[Sequence[str]] = None):
        if order < 0:
            raise InvalidInputError(f"vertex count must be non-negative, got {order}")
        self.order = order
        by_pair: dict[tuple[int, int], Arc] = {}
        for arc in arcs:
            if not (0 <= arc.tail < order and 0 <= arc.head < order):
                raise InvalidInputError(f"arc ({arc.tail}, {arc.head}) has an endpoint outside 0..{order - 1}")
            if arc.tail == arc.head:
                raise InvalidInputError(f"loop at vertex {arc.tail} is not allowed")
            if arc.pair in by_pair:
                raise InvalidInputError(f"multiple arcs ({arc.tail}, {arc.head}) are not allowed")
            by_pair[arc.pair] = arc
        for (x, y), arc in by_pair.items():
            back = by_pair.get((y, x))
            if back is not None and back.weight != arc.weight:
                raise InvalidInputError(
                    f"arcs ({x}, {y}) and ({y}, {x}) must have the same weight, got {arc.weight} and {back.weight}"
                )
        self.arcs: tuple[Arc, ...] = tuple(sorted(by_pair.values()))
        self._by_pair = by_pair
        self._out: list[list[Arc]] = [[] for _ in range(order)]
        for arc in self.arcs:
            self._out[arc.tail].append(arc)
        if labels is not None and len(labels) != order:
            raise InvalidInputError(f"expected {order} vertex labels, got {len(labels)}")
        self.labels: Optional[tuple[str, ...]] = tuple(labels) if labels is not None else None

    @property
    def vertices(self) -> range:
        return range(self.order)

    @property
    def symmetric(self) -> bool:
        """(x,y) ∈ A ⟺ (y,x) ∈ A"""
        return all((y, x) in self._by_pair for (x, y) in self._by_pair)

    def arc(self, x: int, y: int) -> Optional[Arc]:
        return self._by_pair.get((x, y))

    def out_arcs(self, x: int) -> list[Arc]:
        return self._out[x]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def colors(self) -> list[Optional[int]]:
        return sorted({arc.color for arc in self.arcs}, key=lambda c: (c is None, c or 0))

    def edges(self) -> list[tuple[int, int]]:
        """底图的边 {x, y}，x < y"""
        return sorted({(min(a.tail, a.head), max(a.tail, a.head)) for a in self.arcs})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return (
            self.order == other.order
            and [(a.tail, a.head, a.weight, a.color) for a in self.arcs]
            == [(a.tail, a.head, a.weight, a.color) for a in other.arcs]
        )

    def __repr__(self) -> str:
        return f"WeightedDigraph(order={self.order}, arcs={len(self.arcs)})"


@dataclass(frozen=True)
class Path:
    """弧序列 a_1…a_k；除首尾外顶点互不相同，首尾相同时是圈"""
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        if not self.arcs:
            raise InvalidInputError("a path needs at least one arc")
        for a, b in zip(self.arcs, self.arcs[1:]):
            if a.head != b.tail:
                raise InvalidInputError(f"arcs {a.pair} and {b.pair} are not consecutive")
        inner = [a.tail for a in self.arcs] + [self.arcs[-1].head]
        interior = inner[:-1] if inner[0] == inner[-1] else inner
        if len(set(interior)) != len(interior):
            raise InvalidInputError(f"vertex sequence {inner} is not a simple path")

    @property
    def source(self) -> int:
        return self.arcs[0].tail

    @property
    def target(self) -> int:
        return self.arcs[-1].head

    @property
    def vertices(self) -> list[int]:
        return [a.tail for a in self.arcs] + [self.target]

    @property
    def colors(self) -> list[Optional[int]]:
        return [a.color for a in self.arcs]

    @property
    def length(self) -> Fraction:
        return sum((a.length for a in self.arcs), Fraction(0))

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class PathPair:
    """两条端点相同但长度不同的路径"""
    source: int
    target: int
    first: Path
    second: Path


def check_vertex_guard(digraph: WeightedDigraph, max_vertices: Optional[int] = None) -> None:
    """简单路径枚举是指数级的，超出顶点上限直接拒绝"""
    limit = max_vertices if max_vertices is not None else get_config().max_vertices
    if digraph.order > limit:
        raise CapExceededError(
            f"digraph has {digraph.order} vertices, exhaustive path enumeration is capped at {limit} "
            "(raise --max-vertices or GEODETIC_MCP_MAX_VERTICES to override)"
        )


def _check_vertex(digraph: WeightedDigraph, v: int) -> None:
    if not 0 <= v < digraph.order:
        raise InvalidInputError(f"vertex {v} is not in 0..{digraph.order - 1}")


def _as_view(digraph: WeightedDigraph, as_graph: bool) -> WeightedDigraph:
    """作为图处理时先对称化，只列出一个方向的边也按无向边计"""
    return underlying_graph(digraph) if as_graph else digraph


def iter_paths_from(
    digraph: WeightedDigraph,
    source: int,
    as_graph: bool = False,
    floor: int = 0,
) -> Iterator[tuple[tuple[Arc, ...], Fraction]]:
    """从 source 出发的全部简单路径 (含回到 source 的圈)，按弧下标深度优先

    as_graph 时把对称有向图视为无向图：沿同一条边走出再走回不算圈。
    floor 限制只经过下标 ≥ floor 的顶点 (圈的规范起点去重)。
    """
    on_path = {source}
    stack: list[Arc] = []

    def visit(v: int, length: Fraction) -> Iterator[tuple[tuple[Arc, ...], Fraction]]:
        for arc in digraph.out_arcs(v):
            w = arc.head
            if w < floor:
                continue
            reached = length + arc.length
            if w == source:
                if as_graph and len(stack) < 2:
                    continue
                yield tuple(stack) + (arc,), reached
                continue
            if w in on_path:
                continue
            stack.append(arc)
            on_path.add(w)
            yield tuple(stack), reached
            yield from visit(w, reached)
            on_path.discard(w)
            stack.pop()

    yield from visit(source, Fraction(0))


def enumerate_simple_paths(
    digraph: WeightedDigraph,
    x: int,
    y: int,
    as_graph: bool = False,
    max_vertices: Optional[int] = None,
) -> list[Path]:
    """全部简单 (x, y)-路径；x = y 时为经过 x 的圈 (至少一条弧)"""
    digraph = _as_view(digraph, as_graph)
    _check_vertex(digraph, x)
    _check_vertex(digraph, y)
    check_vertex_guard(digraph, max_vertices)
    return [Path(arcs) for arcs, _ in iter_paths_from(digraph, x, as_graph) if arcs[-1].head == y]


def iter_cycles(digraph: WeightedDigraph, as_graph: bool = False) -> Iterator[Path]:
    """每个有向简单圈恰好一次，从其最小顶点出发 (只做保向旋转去重)"""
    digraph = _as_view(digraph, as_graph)
    for x in digraph.vertices:
        for arcs, _ in iter_paths_from(digraph, x, as_graph, floor=x):
            if arcs[-1].head == x:
                yield Path(arcs)


def shortest_path_length(
    digraph: WeightedDigraph,
    x: int,
    y: int,
    as_graph: bool = False,
    max_vertices: Optional[int] = None,
) -> Optional[Fraction]:
    """最短 (x, y)-路径长度；不可达时返回 None"""
    digraph = _as_view(digraph, as_graph)
    _check_vertex(digraph, x)
    _check_vertex(digraph, y)
    check_vertex_guard(digraph, max_vertices)
    lengths = [length for arcs, length in iter_paths_from(digraph, x, as_graph) if arcs[-1].head == y]
    return min(lengths, default=None)


def is_geodesic(digraph: WeightedDigraph, path: Path, as_graph: bool = False) -> bool:
    """路径 P 是否是连接其端点的最短路径"""
    return path.length == shortest_path_length(digraph, path.source, path.target, as_graph)


def walk_length(digraph: WeightedDigraph, vertices: Sequence[int]) -> Fraction:
    """任意途径 x_1 … x_{k+1} 的长度 λ(W)"""
    total = Fraction(0)
    for x, y in zip(vertices, vertices[1:]):
        arc = digraph.arc(x, y)
        if arc is None:
            raise InvalidInputError(f"({x}, {y}) is not an arc")
        total += arc.length
    return total


def is_geodetical(
    digraph: WeightedDigraph,
    as_graph: bool = False,
    max_vertices: Optional[int] = None,
) -> tuple[bool, Optional[PathPair]]:
    """每对 (x, y) 的所有路径等长；失败时返回找到的第一对不等长路径"""
    digraph = _as_view(digraph, as_graph)
    check_vertex_guard(digraph, max_vertices)
    for x in digraph.vertices:
        ok, pair = _geodetical_from(digraph, x, as_graph)
        if not ok:
            return False, pair
    return True, None


def geodetical_from(
    digraph: WeightedDigraph,
    source: int,
    as_graph: bool = False,
) -> tuple[bool, Optional[PathPair]]:
    """只检查从 source 出发的路径"""
    _check_vertex(digraph, source)
    return _geodetical_from(_as_view(digraph, as_graph), source, as_graph)


def _geodetical_from(
    digraph: WeightedDigraph, source: int, as_graph: bool
) -> tuple[bool, Optional[PathPair]]:
    first: dict[int, tuple[tuple[Arc, ...], Fraction]] = {}
    for arcs, length in iter_paths_from(digraph, source, as_graph):
        target = arcs[-1].head
        seen = first.get(target)
        if seen is None:
            first[target] = (arcs, length)
        elif seen[1] != length:
            return False, PathPair(source, target, Path(seen[0]), Path(arcs))
    return True, None


def path_spectrum(
    digraph: WeightedDigraph,
    as_graph: bool = False,
    max_vertices: Optional[int] = None,
) -> PathSpectrum:
    """每对有路径的顶点对的长度集合 L 及 G_m 的汇总"""
    digraph = _as_view(digraph, as_graph)
    check_vertex_guard(digraph, max_vertices)
    entries = []
    pairs_by_m: Counter[int] = Counter()
    paths_by_m: Counter[int] = Counter()
    for x in digraph.vertices:
        lengths: dict[int, set[Fraction]] = defaultdict(set)
        counts: Counter[int] = Counter()
        for arcs, length in iter_paths_from(digraph, x, as_graph):
            lengths[arcs[-1].head].add(length)
            counts[arcs[-1].head] += 1
        for y in sorted(lengths):
            m = len(lengths[y])
            entries.append(SpectrumEntry(
                source=x, target=y, lengths=sorted(lengths[y]), m=m, path_count=counts[y],
            ))
            pairs_by_m[m] += 1
            paths_by_m[m] += counts[y]
    max_m = max(pairs_by_m, default=0)
    return PathSpectrum(
        entries=entries,
        pairs_by_m=dict(sorted(pairs_by_m.items())),
        paths_by_m=dict(sorted(paths_by_m.items())),
        max_m=max_m,
        gap_free=all(m in pairs_by_m for m in range(1, max_m + 1)),
    )


def is_unique_path(
    digraph: WeightedDigraph,
    as_graph: bool = False,
    max_vertices: Optional[int] = None,
) -> bool:
    """UP：每对顶点至多一条简单路径且没有圈；作为图时等价于森林"""
    digraph = _as_view(digraph, as_graph)
    check_vertex_guard(digraph, max_vertices)
    for x in digraph.vertices:
        seen: set[int] = set()
        for arcs, _ in iter_paths_from(digraph, x, as_graph):
            target = arcs[-1].head
            if target == x or target in seen:
                return False
            seen.add(target)
    return True


def underlying_graph(digraph: WeightedDigraph) -> WeightedDigraph:
    """对称化弧集，权与颜色沿用原弧"""
    arcs = {arc.pair: arc for arc in digraph.arcs}
    for arc in digraph.arcs:
        back = arcs.get((arc.head, arc.tail))
        if back is None:
            arcs[(arc.head, arc.tail)] = Arc(arc.head, arc.tail, arc.weight, arc.color)
        elif back.weight != arc.weight:
            raise InvalidInputError(f"conflicting weights on ({arc.tail}, {arc.head}) and its reverse")
    return WeightedDigraph(digraph.order, arcs.values(), digraph.labels)


def arc_subgraph(digraph: WeightedDigraph, keep: Callable[[Arc], bool]) -> WeightedDigraph:
    """同一顶点集上的支撑子图 (不一定是导出子图)"""
    return WeightedDigraph(digraph.order, [a for a in digraph.arcs if keep(a)], digraph.labels)


def graph_from_edges(
    order: int,
    edges: Iterable[tuple[int, int]],
    weight: Fraction = Fraction(1),
    colors: Optional[Sequence[Optional[int]]] = None,
) -> WeightedDigraph:
    """由无向边构造对称有向图 (图)"""
    edge_list = list(edges)
    if colors is not None and len(colors) != len(edge_list):
        raise InvalidInputError(f"expected {len(edge_list)} edge colors, got {len(colors)}")
    arcs = []
    for i, (u, v) in enumerate(edge_list):
        color = colors[i] if colors is not None else None
        arcs.append(Arc(u, v, weight, color))
        arcs.append(Arc(v, u, weight, color))
    return WeightedDigraph(order, arcs)


def to_networkx(digraph: WeightedDigraph) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(digraph.vertices)
    for arc in digraph.arcs:
        graph.add_edge(arc.tail, arc.head, weight=arc.weight, length=arc.length, color=arc.color)
    return graph
