"""
半因子集合与测地有向图服务的数据模型
"""

from fractions import Fraction
from functools import lru_cache
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
)
from pydantic_settings import BaseSettings, SettingsConfigDict


def format_fraction(value: Fraction) -> str:
    """精确有理数的文本形式: 整数写成 "1"，其余写成 "p/q" """
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(value: Any) -> Fraction:
    """把 "p/q"、整数或 Fraction 转为 Fraction；拒绝浮点数"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"exact rational expected, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"malformed rational {value!r}") from e
    raise ValueError(f"exact rational expected, got {value!r}")


Rational = Annotated[
    Fraction,
    BeforeValidator(parse_fraction),
    PlainSerializer(format_fraction, return_type=str),
]


class ReportModel(BaseModel):
    """所有报告模型的公共配置"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class AtomModel(ReportModel):
    """原子 (极小零和块)"""
    entries: list[list[int]] = Field(..., description="按元素顺序排列的坐标元组")
    cross: Rational = Field(..., description="交叉数 Σ 1/ord(g)")
    length: int = Field(..., description="原子长度")


class AtomCertificate(ReportModel):
    """性质 (C) 或 (C₀) 失败的证书"""
    kind: Literal["atom"] = "atom"
    atom: AtomModel = Field(..., description="第一个违反条件的原子")
    reason: str = Field(..., description="违反的条件")


class PathModel(ReportModel):
    """有向图中的一条路径 (或圈)"""
    vertices: list[int] = Field(..., description="顶点序列")
    labels: list[str] = Field(default_factory=list, description="顶点标签")
    colors: list[Optional[int]] = Field(default_factory=list, description="逐弧颜色")
    length: Rational = Field(..., description="精确长度 λ(P)")


class PathPairCertificate(ReportModel):
    """同一对端点之间两条不等长路径"""
    kind: Literal["path_pair"] = "path_pair"
    source: int
    target: int
    first: PathModel
    second: PathModel


class CycleCertificate(ReportModel):
    """违反基尔霍夫电压定律的圈"""
    kind: Literal["cycle"] = "cycle"
    cycle: PathModel
    residues: list[int] = Field(..., description="逐弧电压 (Z_N 中的剩余)")
    total: int = Field(..., description="电压和 mod N")
    modulus: int = Field(..., description="N")


Certificate = Union[AtomCertificate, PathPairCertificate, CycleCertificate]


class PropertyReport(ReportModel):
    """单个性质判定的结果"""
    property: str = Field(..., description="性质名称")
    holds: bool
    subject: str = Field(..., description="被检验的对象")
    certificate: Optional[Certificate] = None


class AtomListReport(ReportModel):
    """原子枚举结果"""
    group: str
    subset: list[list[int]]
    atoms: list[AtomModel]
    max_length: int = Field(..., description="观测到的最大原子长度")
    naive: bool = Field(default=False, description="是否使用朴素过滤器枚举")


class KvlReport(ReportModel):
    """电压有向图的 KVL 检验报告"""
    holds: bool
    modulus: int
    cycles_checked: int
    violating_cycle: Optional[CycleCertificate] = None


class SpectrumEntry(ReportModel):
    """一对顶点 (x, y) 的路径长度集合 L"""
    source: int
    target: int
    lengths: list[Rational]
    m: int = Field(..., description="|L|")
    path_count: int


class PathSpectrum(ReportModel):
    """m-测地谱"""
    entries: list[SpectrumEntry] = Field(default_factory=list)
    pairs_by_m: dict[int, int] = Field(default_factory=dict, description="m -> 顶点对个数")
    paths_by_m: dict[int, int] = Field(default_factory=dict, description="m -> G_m 中的路径数")
    max_m: int = Field(default=0, description="G_m 非空的最大 m")
    gap_free: bool = Field(default=True, description="对所有 i ≤ max_m，G_i 是否非空")


class ConstantsReport(ReportModel):
    """μ, t, μ₀, t₀ 及见证"""
    group: str
    order: int
    mu: int
    t: int
    mu0: int
    t0: int
    mu_witness: list[list[int]]
    t_cover: list[list[list[int]]]
    mu0_witness: list[list[int]]
    t0_cover: list[list[list[int]]]
    hf_subsets: int = Field(..., description="(C) 子集个数 (含空集)")
    whf_subsets: int = Field(..., description="(C₀) 子集个数 (含空集)")
    elapsed: float = Field(..., description="耗时 (秒)")


class StarConstantsReport(ReportModel):
    """着色有向图的 μ*, t* (以及带电压时的 μ₀*, t₀*)"""
    colors: list[int]
    as_graph: bool
    mu_star: int
    t_star: Optional[int] = Field(..., description="某个单色类本身不测地时为 None")
    mu_star_witness: list[int]
    t_star_partition: Optional[list[list[int]]]
    mu0_star: Optional[int] = None
    t0_star: Optional[int] = None
    mu0_star_witness: Optional[list[int]] = None
    t0_star_partition: Optional[list[list[int]]] = None


class BoundReport(ReportModel):
    """图的边色数、t、μ 及其界：两侧都给出精确值"""
    vertices: int
    edges: list[list[int]]
    max_degree: int
    chromatic_index: int
    coloring: list[int] = Field(..., description="逐边颜色 (与 edges 对齐)")
    coloring_supplied: bool
    color_classes_up: bool = Field(..., description="每个单色边类是否 UP")
    min_class_size: int
    t: int
    t_cover: list[list[int]]
    mu: int
    mu_witness: list[int]
    t_le_chromatic_index: bool
    t_le_max_degree_plus_one: bool
    chromatic_index_in_vizing_range: bool
    mu_rhs: Optional[Rational] = Field(default=None, description="|E|/χ′")
    mu_le_rhs: Optional[bool] = Field(default=None, description="仅报告，不断言")
    mu_le_min_class: Optional[bool] = Field(default=None, description="μ ≤ min |E_i| (仅报告)")


class BondReport(ReportModel):
    """势函数诱导的有向图 D_g"""
    potential: list[Rational]
    arcs: list[list[int]]
    lengths: list[Rational]
    geodetical: bool
    trials: int = Field(default=1, description="检验的势个数")
    failures: int = Field(default=0, description="诱导有向图不测地的势个数")


class Counterexample(ReportModel):
    """定理扫描中的反例"""
    group: str
    subset: list[list[int]]
    arguments: str = Field(description="复现该反例的命令行参数")
    detail: str
    certificate: Optional[Certificate] = None


class TheoremSweepReport(ReportModel):
    """(C) ⟺ 测地、(C₀) ⟺ KVL 的穷举扫描结果"""
    max_order: int
    groups: list[str]
    subsets_checked: int
    hf_not_geodetical: int = Field(..., description="S 满足 (C) 但 Cay(G;S) 不测地")
    geodetical_not_hf: int = Field(..., description="Cay(G;S) 测地但 S 不满足 (C)")
    whf_not_kvl: int
    kvl_not_whf: int
    optimization_mismatches: int = Field(..., description="单源检验与全对检验不一致")
    carlitz_ok: bool
    counterexamples: dict[str, Counterexample] = Field(default_factory=dict)
    elapsed: float

    @property
    def mismatches(self) -> int:
        return (
            self.hf_not_geodetical
            + self.geodetical_not_hf
            + self.whf_not_kvl
            + self.kvl_not_whf
            + self.optimization_mismatches
        )


class GroupSubsetRequest(BaseModel):
    """群与子集请求模型"""
    group: str = Field(..., description="群规格，逗号分隔的模 (例如: '2,2' 表示 Z_2 x Z_2)")
    subset: str = Field(default="", description="子集规格，分号分隔的坐标元组 (例如: '1,0;0,1')")


class AtomsRequest(GroupSubsetRequest):
    """原子枚举请求模型"""
    max_len: Optional[int] = Field(default=None, description="最大原子长度 (≥ 2)")


class DigraphRequest(BaseModel):
    """有向图文本请求模型"""
    digraph: str = Field(..., description="有向图文件内容 ('V <n>' 头，每行 'u v psi [color]')")
    as_graph: bool = Field(default=False, description="作为无向图处理，只写一个方向的边也按无向边计")


class VoltageRequest(BaseModel):
    """电压有向图请求模型"""
    voltage: str = Field(..., description="电压文件内容 ('N <m>' 与 'V <n>' 头，每行 'u v psi r [color]')")


class ConstantsRequest(BaseModel):
    """常数计算请求模型"""
    group: str = Field(..., description="群规格")


class BoundsRequest(BaseModel):
    """边色数界检验请求模型"""
    graph: str = Field(..., description="图文件内容 (弧会被对称化)")


class BondRequest(BaseModel):
    """键空间诱导有向图请求模型"""
    digraph: str = Field(..., description="有向图文件内容")
    potential: Optional[list[str]] = Field(default=None, description="逐顶点势 p(v)，缺省时随机生成")
    seed: int = Field(default=0, description="随机势的种子")


class VerifyRequest(BaseModel):
    """定理扫描请求模型"""
    max_order: int = Field(default=8, ge=1, description="扫描的最大群阶")
    naive: bool = Field(default=True, description="同时运行全对朴素检验")


class GeodeticConfig(BaseSettings):
    """半因子/测地 MCP 服务配置"""
    max_vertices: int = Field(default=14, ge=1, description="路径穷举的顶点数上限")
    max_group_order: int = Field(default=12, ge=1, description="常数 μ/t 计算的群阶上限")
    max_edges: int = Field(default=16, ge=1, description="bounds 中边子集穷举的边数上限")
    seed: int = Field(default=0, description="随机势的默认种子")
    potential_trials: int = Field(default=100, ge=1, description="键空间演示的随机势个数")
    output_format: Literal["text", "json"] = Field(default="text", description="输出格式")
    log_level: str = Field(default="WARNING", description="日志级别")

    model_config = SettingsConfigDict(env_prefix="GEODETIC_MCP_", case_sensitive=False)


@lru_cache(maxsize=1)
def get_config() -> GeodeticConfig:
    """进程级配置 (从环境变量读取一次)"""
    return GeodeticConfig()


class RunConfig(BaseModel):
    """一次 CLI 调用的配置"""
    command: str
    group: Optional[str] = None
    subset: str = ""
    table: Optional[str] = None
    file: Optional[str] = None
    output_format: Literal["text", "json"] = "text"
    max_vertices: int = 14
    max_group_order: int = 12
    max_edges: int = 16
    max_order: int = 8
    max_len: Optional[int] = None
    seed: int = 0
    potential: Optional[str] = None
    naive: bool = False
    as_graph: bool = False

    @field_validator("max_vertices", "max_group_order", "max_edges", "max_order")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("caps must be positive")
        return value
