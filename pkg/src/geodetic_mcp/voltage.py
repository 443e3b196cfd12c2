"""
电压有向图与基尔霍夫电压定律 (KVL)：N 次单位根 exp(2πi·r/N) 用 Z_N 中的剩余 r 精确表示
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from fastmcp.utilities.logging import get_logger

from .cayley import CayleyDigraph
from .digraph import Path, WeightedDigraph, check_vertex_guard, iter_cycles, underlying_graph
from .errors import InvalidInputError

logger = get_logger(__name__)


@dataclass(frozen=True)
class VoltageAssignment:
    """φ: A → Z_N，以弧的 (tail, head) 为键"""
    modulus: int
    residues: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InvalidInputError(f"voltage modulus must be positive, got {self.modulus}")
        object.__setattr__(
            self, "residues", {pair: r % self.modulus for pair, r in self.residues.items()}
        )

    def __call__(self, tail: int, head: int) -> int:
        return self.residues[(tail, head)]

    def __len__(self) -> int:
        return len(self.residues)


@dataclass(frozen=True)
class KvlResult:
    """KVL 检验结果；不成立时给出第一个违反的圈及其电压和"""
    holds: bool
    modulus: int
    cycles_checked: int
    violating_cycle: Optional[Path] = None
    residues: tuple[int, ...] = ()
    total: int = 0


def cayley_voltage(cayley: CayleyDigraph) -> VoltageAssignment:
    """φ((g, gs)) = exp(2πi/ord(s))，即 Z_N 中的 N/ord(s)，N 为群的指数"""
    n = cayley.group.exponent()
    orders = cayley.group.orders
    residues = {}
    for arc in cayley.digraph.arcs:
        s = cayley.group.index_of(cayley.color_of(arc))
        residues[arc.pair] = n // orders[s]
    return VoltageAssignment(n, residues)


def _require_total(digraph: WeightedDigraph, voltage: VoltageAssignment) -> None:
    pairs = {arc.pair for arc in digraph.arcs}
    missing = pairs - voltage.residues.keys()
    if missing:
        raise InvalidInputError(f"voltage undefined on arcs {sorted(missing)}")
    extra = voltage.residues.keys() - pairs
    if extra:
        raise InvalidInputError(f"voltage given on non-arcs {sorted(extra)}")


def cycle_voltage(voltage: VoltageAssignment, path: Path) -> tuple[tuple[int, ...], int]:
    residues = tuple(voltage(a.tail, a.head) for a in path.arcs)
    return residues, sum(residues) % voltage.modulus


def _graph_voltage(
    digraph: WeightedDigraph, voltage: VoltageAssignment
) -> tuple[WeightedDigraph, VoltageAssignment]:
    graph = underlying_graph(digraph)
    residues = dict(voltage.residues)
    for arc in graph.arcs:
        if arc.pair not in residues:
            residues[arc.pair] = -residues[(arc.head, arc.tail)]
    return graph, VoltageAssignment(voltage.modulus, residues)


def kvl_check(
    digraph: WeightedDigraph,
    voltage: VoltageAssignment,
    max_vertices: Optional[int] = None,
    as_graph: bool = False,
) -> KvlResult:
    """每个简单圈的电压和 ≡ 0 (mod N)；按规范顺序返回第一个违反的圈

    as_graph 时按无向图的圈检验，只给出一个方向的边反向取相反电压。
    """
    _require_total(digraph, voltage)
    check_vertex_guard(digraph, max_vertices)
    if as_graph:
        digraph, voltage = _graph_voltage(digraph, voltage)
    checked = 0
    for cycle in iter_cycles(digraph, as_graph):
        checked += 1
        residues, total = cycle_voltage(voltage, cycle)
        if total != 0:
            logger.debug("KVL fails on cycle %s after %d cycles", cycle.vertices, checked)
            return KvlResult(False, voltage.modulus, checked, cycle, residues, total)
    return KvlResult(True, voltage.modulus, checked)


def closed_walk_voltage(voltage: VoltageAssignment, vertices: Sequence[int]) -> int:
    """闭途径 x_1 … x_k x_1 的电压和 (mod N)"""
    if len(vertices) < 2 or vertices[0] != vertices[-1]:
        raise InvalidInputError("a closed walk must start and end at the same vertex")
    try:
        total = sum(voltage(x, y) for x, y in zip(vertices, vertices[1:]))
    except KeyError as e:
        raise InvalidInputError(f"{e.args[0]} is not an arc with a voltage") from None
    return total % voltage.modulus


def decompose_closed_walk(vertices: Sequence[int]) -> list[list[int]]:
    """把闭途径拆成简单闭路径 (顶点序列)，电压和在交换群中可加"""
    if len(vertices) < 2 or vertices[0] != vertices[-1]:
        raise InvalidInputError("a closed walk must start and end at the same vertex")
    cycles: list[list[int]] = []
    stack: list[int] = []
    position: dict[int, int] = {}
    for v in vertices:
        if v in position:
            start = position[v]
            cycles.append(stack[start:] + [v])
            for u in stack[start + 1:]:
                del position[u]
            del stack[start + 1:]
        else:
            position[v] = len(stack)
            stack.append(v)
    return cycles


def graph_weakly_half_factorial(
    cayley: CayleyDigraph,
    max_vertices: Optional[int] = None,
) -> KvlResult:
    """图论意义下的弱半因子性：Cayley 电压有向图满足 KVL"""
    return kvl_check(cayley.digraph, cayley_voltage(cayley), max_vertices)
