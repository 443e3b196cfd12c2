"""
测试共用的夹具
"""

import pytest

from geodetic_mcp.catalog import symmetric_group_s3
from geodetic_mcp.digraph import Arc, WeightedDigraph, graph_from_edges
from geodetic_mcp.group import AbelianGroup
from geodetic_mcp.models import get_config


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """每个测试都从干净的环境配置开始"""
    for name in (
        "MAX_VERTICES",
        "MAX_GROUP_ORDER",
        "MAX_EDGES",
        "SEED",
        "POTENTIAL_TRIALS",
        "OUTPUT_FORMAT",
        "LOG_LEVEL",
    ):
        monkeypatch.delenv(f"GEODETIC_MCP_{name}", raising=False)
    get_config.cache_clear()
    yield
    get_config.cache_clear()


@pytest.fixture
def z3():
    return AbelianGroup([3])


@pytest.fixture
def z4():
    return AbelianGroup([4])


@pytest.fixture
def klein():
    return AbelianGroup([2, 2])


@pytest.fixture
def s3():
    return symmetric_group_s3()


@pytest.fixture
def triangle():
    """单位权的三角形 (作为图)"""
    return graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def shortcut():
    """0→1→2 与捷径 0→2：两条 (0,2)-路径长度分别为 2 和 1"""
    return WeightedDigraph(3, [Arc(0, 1, 1), Arc(1, 2, 1), Arc(0, 2, 1)])
