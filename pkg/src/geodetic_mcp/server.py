"""
FastMCP 2.0 半因子/测地检验服务器主模块
"""

import random
import sys
from typing import Any, Dict, Tuple

from fastmcp import FastMCP
from fastmcp.utilities.logging import configure_logging, get_logger

from . import constants, voltage
from .blocks import enumerate_atoms as find_atoms
from .blocks import is_half_factorial, is_weakly_half_factorial
from .cayley import build_cayley
from .digraph import is_geodetical
from .digraph import path_spectrum as spectrum_of
from .errors import GeodeticError
from .formats import (
    atom_certificate,
    atom_model,
    kvl_report,
    load_digraph,
    load_voltage,
    parse_group_spec,
    parse_potential,
    parse_subset_spec,
    path_pair_certificate,
    write_digraph_text,
    write_voltage_text,
)
from .group import FiniteGroup, GroupElement
from .models import (
    AtomListReport,
    AtomsRequest,
    BondReport,
    BondRequest,
    BoundsRequest,
    ConstantsRequest,
    DigraphRequest,
    GroupSubsetRequest,
    PropertyReport,
    VerifyRequest,
    VoltageRequest,
    get_config,
)
from .theorems import sweep_theorems

logger = get_logger(__name__)

# 初始化 FastMCP 服务器
mcp = FastMCP("Half-Factorial Geodetic MCP Server")


def _group_and_subset(request: GroupSubsetRequest) -> Tuple[FiniteGroup, Tuple[GroupElement, ...]]:
    group = parse_group_spec(request.group)
    subset = parse_subset_spec(group, request.subset) if request.subset.strip() else group.non_identity()
    return group, subset


def _subject(request: GroupSubsetRequest, group: FiniteGroup) -> str:
    subset = request.subset.strip() or "G\\{e}"
    return f"S={subset} in {group.describe()}"


def _failure(e: GeodeticError) -> Dict[str, Any]:
    logger.info("tool call rejected: %s", e)
    return {"error": str(e)}


async def enumerate_atoms(request: AtomsRequest) -> Dict[str, Any]:
    """枚举支撑在 S 中的全部原子 (S 缺省为 G \\ {e})"""
    try:
        group, subset = _group_and_subset(request)
        atoms = find_atoms(group, subset, request.max_len)
    except GeodeticError as e:
        return _failure(e)
    report = AtomListReport(
        group=group.describe(),
        subset=[list(g) for g in subset],
        atoms=[atom_model(a) for a in atoms],
        max_length=max((len(a) for a in atoms), default=0),
    )
    return {"success": True, **report.model_dump(mode="json")}


async def half_factorial(request: GroupSubsetRequest) -> Dict[str, Any]:
    """性质 (C)：S 上每个原子的交叉数都为 1"""
    try:
        group, subset = _group_and_subset(request)
        holds, atom = is_half_factorial(group, subset)
    except GeodeticError as e:
        return _failure(e)
    report = PropertyReport(
        property="half factorial",
        holds=holds,
        subject=_subject(request, group),
        certificate=atom_certificate(atom, "cross number != 1") if atom else None,
    )
    return {"success": True, **report.model_dump(mode="json")}


async def weakly_half_factorial(request: GroupSubsetRequest) -> Dict[str, Any]:
    """性质 (C₀)：S 上每个原子的交叉数都是整数"""
    try:
        group, subset = _group_and_subset(request)
        holds, atom = is_weakly_half_factorial(group, subset)
    except GeodeticError as e:
        return _failure(e)
    report = PropertyReport(
        property="weakly half factorial",
        holds=holds,
        subject=_subject(request, group),
        certificate=atom_certificate(atom, "cross number not an integer") if atom else None,
    )
    return {"success": True, **report.model_dump(mode="json")}


async def cayley_digraph(request: GroupSubsetRequest) -> Dict[str, Any]:
    """构造 Cay(G;S)，返回有向图文件与 Cayley 电压文件"""
    try:
        group, subset = _group_and_subset(request)
        cayley = build_cayley(group, subset)
    except GeodeticError as e:
        return _failure(e)
    return {
        "success": True,
        "name": cayley.describe(),
        "symmetric": cayley.is_cayley_graph,
        "digraph": write_digraph_text(cayley.digraph),
        "voltage": write_voltage_text(cayley.digraph, voltage.cayley_voltage(cayley)),
    }


async def geodetic_check(request: DigraphRequest) -> Dict[str, Any]:
    """检验有向图是否测地，失败时返回两条不等长路径"""
    try:
        digraph = load_digraph(request.digraph)
        holds, pair = is_geodetical(digraph, request.as_graph)
    except GeodeticError as e:
        return _failure(e)
    report = PropertyReport(
        property="geodetical",
        holds=holds,
        subject=repr(digraph),
        certificate=path_pair_certificate(digraph, pair) if pair else None,
    )
    return {"success": True, **report.model_dump(mode="json")}


async def kvl_check(request: VoltageRequest) -> Dict[str, Any]:
    """检验电压有向图是否满足基尔霍夫电压定律"""
    try:
        digraph, assignment = load_voltage(request.voltage)
        result = voltage.kvl_check(digraph, assignment)
    except GeodeticError as e:
        return _failure(e)
    return {"success": True, **kvl_report(digraph, result).model_dump(mode="json")}


async def path_spectrum(request: DigraphRequest) -> Dict[str, Any]:
    """m-测地谱：每对顶点的路径长度集合"""
    try:
        report = spectrum_of(load_digraph(request.digraph), request.as_graph)
    except GeodeticError as e:
        return _failure(e)
    return {"success": True, **report.model_dump(mode="json")}


async def compute_constants(request: ConstantsRequest) -> Dict[str, Any]:
    """计算 μ, t, μ₀, t₀ 及见证"""
    try:
        report = constants.compute_mu_t(parse_group_spec(request.group))
    except GeodeticError as e:
        return _failure(e)
    return {"success": True, **report.model_dump(mode="json")}


async def coloring_bounds(request: BoundsRequest) -> Dict[str, Any]:
    """图的 χ′、Δ、t、μ 以及它们之间的界"""
    try:
        report = constants.check_coloring_bounds(load_digraph(request.graph))
    except GeodeticError as e:
        return _failure(e)
    return {"success": True, **report.model_dump(mode="json")}


async def bond_digraph(request: BondRequest) -> Dict[str, Any]:
    """由势 p 诱导的有向图 D_g (g = δp)，并检验其测地性"""
    try:
        digraph = load_digraph(request.digraph)
        if request.potential is not None:
            potential = parse_potential(",".join(request.potential), digraph.order)
        else:
            potential = constants.random_potential(digraph, random.Random(request.seed))
        induced = constants.bond_induced_digraph(digraph, potential)
        holds, _ = is_geodetical(induced)
    except GeodeticError as e:
        return _failure(e)
    report = BondReport(
        potential=potential,
        arcs=[[a.tail, a.head] for a in induced.arcs],
        lengths=[a.length for a in induced.arcs],
        geodetical=holds,
    )
    return {"success": True, **report.model_dump(mode="json")}


async def verify_theorems(request: VerifyRequest) -> Dict[str, Any]:
    """穷举扫描 (C) ⟺ 测地、(C₀) ⟺ KVL，逐方向给出反例"""
    try:
        report = sweep_theorems(request.max_order, request.naive)
    except GeodeticError as e:
        return _failure(e)
    return {"success": True, "mismatches": report.mismatches, **report.model_dump(mode="json")}


# 不用 @mcp.tool() 装饰：新版 fastmcp 会把函数替换成 FunctionTool，测试要直接 await 原函数
for _tool in (
    enumerate_atoms,
    half_factorial,
    weakly_half_factorial,
    cayley_digraph,
    geodetic_check,
    kvl_check,
    path_spectrum,
    compute_constants,
    coloring_bounds,
    bond_digraph,
    verify_theorems,
):
    mcp.tool()(_tool)


def main():
    """主MCP服务器循环"""
    config = get_config()
    configure_logging(level=config.log_level)
    print(
        f"半因子/测地 MCP 服务器启动 (max_vertices={config.max_vertices}, "
        f"max_group_order={config.max_group_order})",
        file=sys.stderr,
    )
    mcp.run()


if __name__ == "__main__":
    main()
