"""
geodetic-hf 命令行入口

退出码: 0 成功；1 计算正确但性质不成立 (附证书)；2 输入错误或超出上限。
"""

import argparse
import random
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from fastmcp.utilities.logging import configure_logging, get_logger
from pydantic import BaseModel, ValidationError

from . import __version__
from .blocks import (
    enumerate_atoms,
    is_half_factorial,
    is_weakly_half_factorial,
    max_atom_length,
    naive_atoms,
)
from .cayley import CayleyDigraph, build_cayley, format_element, is_geodetical_cayley
from .constants import (
    bond_induced_digraph,
    check_coloring_bounds,
    compute_mu_star_t_star,
    compute_mu_t,
    random_potential,
)
from .digraph import WeightedDigraph, is_geodetical, path_spectrum
from .errors import GeodeticError, InvalidInputError
from .formats import (
    atom_certificate,
    atom_model,
    digraph_document,
    kvl_report,
    load_digraph,
    load_voltage,
    parse_group_spec,
    parse_potential,
    parse_subset_spec,
    parse_table_text,
    path_pair_certificate,
    write_digraph_text,
    write_voltage_text,
)
from .group import FiniteGroup, GroupElement
from .models import (
    AtomListReport,
    BondReport,
    PropertyReport,
    RunConfig,
    format_fraction,
    get_config,
)
from .theorems import sweep_theorems
from .voltage import VoltageAssignment, cayley_voltage, kvl_check

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["text", "json"], default=None,
                        help="输出格式 (默认取 GEODETIC_MCP_OUTPUT_FORMAT 或 text)")
    common.add_argument("--max-vertices", type=int, default=None, help="路径穷举的顶点数上限")
    common.add_argument("--max-group-order", type=int, default=None, help="常数计算的群阶上限")
    common.add_argument("--max-edges", type=int, default=None, help="边子集穷举的边数上限")
    common.add_argument("--seed", type=int, default=None, help="随机势的种子")
    common.add_argument("--naive", action="store_true", help="使用朴素 (全对 / 过滤器) 检验")
    common.add_argument("--graph", dest="as_graph", action="store_true", help="把对称有向图视为图")
    common.add_argument("--group", default=None, help="群规格，例如 '2,3' 表示 Z_2 x Z_3")
    common.add_argument("--table", default=None, help="乘法表文件：阶、单位元下标、行优先的乘积表")
    common.add_argument("--subset", default=None, help="子集规格，例如 '1,0;0,1'")
    common.add_argument("--file", default=None, help="有向图 / 电压文件，'-' 表示标准输入")

    parser = argparse.ArgumentParser(
        prog="geodetic-hf",
        description="半因子集合、Cayley 有向图的测地性与 KVL 的精确检验",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("atoms", parents=[common], help="枚举支撑在 S 中的原子").add_argument(
        "--max-len", type=int, default=None, help="最大原子长度")
    sub.add_parser("hf", parents=[common], help="性质 (C)：半因子")
    sub.add_parser("whf", parents=[common], help="性质 (C₀)：弱半因子")
    sub.add_parser("cayley", parents=[common], help="输出 Cay(G;S)").add_argument(
        "--voltage", action="store_true", help="同时输出 Cayley 电压 (电压文件格式)")
    sub.add_parser("geodetic", parents=[common], help="有向图或 Cay(G;S) 的测地性")
    sub.add_parser("kvl", parents=[common], help="电压有向图或 Cay(G;S) 的 KVL")
    sub.add_parser("spectrum", parents=[common], help="m-测地谱")
    sub.add_parser("constants", parents=[common], help="μ, t, μ₀, t₀")
    sub.add_parser("mu-star", parents=[common], help="着色有向图的 μ*, t*").add_argument(
        "--voltage", action="store_true", help="--file 是电压文件，同时计算 μ₀*, t₀*")
    sub.add_parser("bounds", parents=[common], help="图的 χ′、t、μ 界")
    sub.add_parser("bond", parents=[common], help="势函数诱导的测地有向图").add_argument(
        "--potential", default=None, help="逐顶点势，例如 '0,1/2,3'；缺省时随机生成")
    sub.add_parser("verify-theorems", parents=[common], help="定理扫描").add_argument(
        "--max-order", type=int, default=8, help="扫描的最大群阶")
    return parser


def make_run_config(args: argparse.Namespace) -> RunConfig:
    """命令行参数覆盖环境配置"""
    config = get_config()

    def pick(name: str, fallback: object) -> object:
        value = getattr(args, name, None)
        return fallback if value is None else value

    return RunConfig(
        command=args.command,
        group=args.group,
        subset=args.subset or "",
        table=args.table,
        file=args.file,
        output_format=pick("output_format", config.output_format),
        max_vertices=pick("max_vertices", config.max_vertices),
        max_group_order=pick("max_group_order", config.max_group_order),
        max_edges=pick("max_edges", config.max_edges),
        max_order=pick("max_order", 8),
        max_len=getattr(args, "max_len", None),
        seed=pick("seed", config.seed),
        potential=getattr(args, "potential", None),
        naive=args.naive,
        as_graph=args.as_graph,
    )


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e.strerror}") from None


def _group(cfg: RunConfig) -> FiniteGroup:
    if cfg.table is not None:
        return parse_table_text(_read(cfg.table), name=Path(cfg.table).stem)
    if cfg.group is None:
        raise InvalidInputError(f"'{cfg.command}' needs --group (or --table)")
    return parse_group_spec(cfg.group)


def _subset(cfg: RunConfig, group: FiniteGroup) -> tuple[GroupElement, ...]:
    """--subset 缺省时取 G \\ {e}"""
    if not cfg.subset.strip():
        return group.non_identity()
    return parse_subset_spec(group, cfg.subset)


def _subject(group: FiniteGroup, subset: Sequence[GroupElement]) -> str:
    return f"S={{{', '.join(format_element(g) for g in subset)}}} in {group.describe()}"


def _cayley(cfg: RunConfig) -> CayleyDigraph:
    group = _group(cfg)
    return build_cayley(group, _subset(cfg, group))


def _emit(cfg: RunConfig, report: BaseModel, text: Optional[Callable[[], str]] = None) -> None:
    if cfg.output_format == "json":
        print(report.model_dump_json(indent=2))
    elif text is not None:
        print(text())
    else:
        print(_plain(report.model_dump(mode="json")))


def _plain(data: object, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for key, value in data.items():
            nested = isinstance(value, dict) and value
            nested = nested or (isinstance(value, list) and any(isinstance(v, dict) for v in value))
            if nested:
                lines.append(f"{pad}{key}:")
                lines.append(_plain(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(_plain(item, indent) if isinstance(item, dict) else f"{pad}- {item}" for item in data)
    return f"{pad}{data}"


def _property_text(report: PropertyReport) -> str:
    verdict = "holds" if report.holds else "fails"
    lines = [f"{report.property} {verdict}: {report.subject}"]
    if report.certificate is not None:
        lines.append(_plain(report.certificate.model_dump(mode="json"), 1))
    return "\n".join(lines)


def cmd_atoms(cfg: RunConfig) -> int:
    group = _group(cfg)
    subset = _subset(cfg, group)
    finder = naive_atoms if cfg.naive else enumerate_atoms
    atoms = finder(group, subset, cfg.max_len)
    report = AtomListReport(
        group=group.describe(),
        subset=[list(g) for g in subset],
        atoms=[atom_model(a) for a in atoms],
        max_length=max((len(a) for a in atoms), default=0),
        naive=cfg.naive,
    )

    def text() -> str:
        lines = [f"{len(atoms)} atoms over {_subject(group, subset)}"]
        lines += [
            f"  {' '.join(format_element(g) for g in a.entries)}  cross={format_fraction(a.cross)}"
            for a in atoms
        ]
        lines.append(f"max atom length: {report.max_length}")
        if cfg.max_len is None and not cfg.subset.strip():
            lines.append(f"max atom length over G\\{{e}}: {max_atom_length(group)}")
        return "\n".join(lines)

    _emit(cfg, report, text)
    return EXIT_OK


def _cmd_factorial(cfg: RunConfig, weak: bool) -> int:
    group = _group(cfg)
    subset = _subset(cfg, group)
    if weak:
        holds, atom = is_weakly_half_factorial(group, subset)
        name, reason = "weakly half factorial", "cross number not an integer"
    else:
        holds, atom = is_half_factorial(group, subset)
        name, reason = "half factorial", "cross number != 1"
    report = PropertyReport(
        property=name,
        holds=holds,
        subject=_subject(group, subset),
        certificate=atom_certificate(atom, reason) if atom is not None else None,
    )
    _emit(cfg, report, lambda: _property_text(report))
    return EXIT_OK if holds else EXIT_VIOLATED


def cmd_hf(cfg: RunConfig) -> int:
    return _cmd_factorial(cfg, weak=False)


def cmd_whf(cfg: RunConfig) -> int:
    return _cmd_factorial(cfg, weak=True)


def cmd_cayley(cfg: RunConfig, with_voltage: bool = False) -> int:
    cayley = _cayley(cfg)
    voltage = cayley_voltage(cayley) if with_voltage else None
    if cfg.output_format == "json":
        print(digraph_document(cayley.digraph, voltage).model_dump_json(indent=2, exclude_none=True))
    elif voltage is not None:
        print(write_voltage_text(cayley.digraph, voltage), end="")
    else:
        print(write_digraph_text(cayley.digraph), end="")
    return EXIT_OK


def _digraph_or_cayley(cfg: RunConfig) -> tuple[WeightedDigraph, Optional[CayleyDigraph], str]:
    if cfg.file is not None:
        return load_digraph(_read(cfg.file)), None, cfg.file
    cayley = _cayley(cfg)
    return cayley.digraph, cayley, cayley.describe()


def cmd_geodetic(cfg: RunConfig) -> int:
    digraph, cayley, subject = _digraph_or_cayley(cfg)
    if cayley is not None and not cfg.as_graph:
        holds, pair = is_geodetical_cayley(cayley, cfg.naive, cfg.max_vertices)
    else:
        holds, pair = is_geodetical(digraph, cfg.as_graph, cfg.max_vertices)
    report = PropertyReport(
        property="geodetical",
        holds=holds,
        subject=subject,
        certificate=path_pair_certificate(digraph, pair) if pair is not None else None,
    )
    _emit(cfg, report, lambda: _property_text(report))
    return EXIT_OK if holds else EXIT_VIOLATED


def _voltage_input(cfg: RunConfig) -> tuple[WeightedDigraph, VoltageAssignment, str]:
    if cfg.file is not None:
        digraph, voltage = load_voltage(_read(cfg.file))
        return digraph, voltage, cfg.file
    cayley = _cayley(cfg)
    return cayley.digraph, cayley_voltage(cayley), cayley.describe()


def cmd_kvl(cfg: RunConfig) -> int:
    digraph, voltage, subject = _voltage_input(cfg)
    report = kvl_report(digraph, kvl_check(digraph, voltage, cfg.max_vertices))

    def text() -> str:
        verdict = "holds" if report.holds else "fails"
        lines = [f"KVL {verdict} on {subject} (mod {report.modulus}, {report.cycles_checked} cycles checked)"]
        if report.violating_cycle is not None:
            lines.append(_plain(report.violating_cycle.model_dump(mode="json"), 1))
        return "\n".join(lines)

    _emit(cfg, report, text)
    return EXIT_OK if report.holds else EXIT_VIOLATED


def cmd_spectrum(cfg: RunConfig) -> int:
    digraph, _, subject = _digraph_or_cayley(cfg)
    report = path_spectrum(digraph, cfg.as_graph, cfg.max_vertices)

    def text() -> str:
        lines = [f"path spectrum of {subject}"]
        lines += [
            f"  ({e.source}, {e.target}): m={e.m} lengths={[format_fraction(x) for x in e.lengths]}"
            f" paths={e.path_count}"
            for e in report.entries
        ]
        lines.append(f"pairs by m: {report.pairs_by_m}")
        lines.append(f"paths by m: {report.paths_by_m}")
        lines.append(f"max m: {report.max_m}, gap free: {report.gap_free}")
        return "\n".join(lines)

    _emit(cfg, report, text)
    return EXIT_OK


def cmd_constants(cfg: RunConfig) -> int:
    if cfg.group is None:
        raise InvalidInputError("'constants' needs --group")
    report = compute_mu_t(parse_group_spec(cfg.group), cfg.max_group_order)
    _emit(cfg, report)
    return EXIT_OK


def cmd_mu_star(cfg: RunConfig, with_voltage: bool = False) -> int:
    voltage: Optional[VoltageAssignment] = None
    if cfg.file is not None:
        text = _read(cfg.file)
        if with_voltage:
            digraph, voltage = load_voltage(text)
        else:
            digraph = load_digraph(text)
    else:
        cayley = _cayley(cfg)
        digraph, voltage = cayley.digraph, cayley_voltage(cayley)
    report = compute_mu_star_t_star(digraph, voltage, cfg.as_graph, cfg.max_vertices)
    _emit(cfg, report)
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    if cfg.file is None:
        raise InvalidInputError("'bounds' needs --file with a graph")
    report = check_coloring_bounds(load_digraph(_read(cfg.file)), None, cfg.max_edges, cfg.max_vertices)
    _emit(cfg, report)
    ok = report.color_classes_up and report.t_le_chromatic_index and report.chromatic_index_in_vizing_range
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_bond(cfg: RunConfig) -> int:
    """给定 --potential 时检验一个势；否则检验 potential_trials 个随机势，报告第一个失败者 (或第一个)"""
    if cfg.file is None:
        raise InvalidInputError("'bond' needs --file with a digraph")
    digraph = load_digraph(_read(cfg.file))
    if cfg.potential is not None:
        potentials = [parse_potential(cfg.potential, digraph.order)]
    else:
        rng = random.Random(cfg.seed)
        potentials = [random_potential(digraph, rng) for _ in range(get_config().potential_trials)]
    shown = None
    failures = 0
    for potential in potentials:
        induced = bond_induced_digraph(digraph, potential)
        holds, _ = is_geodetical(induced, max_vertices=cfg.max_vertices)
        if not holds:
            failures += 1
        if shown is None or (not holds and shown[2]):
            shown = (potential, induced, holds)
    assert shown is not None
    potential, induced, holds = shown
    report = BondReport(
        potential=potential,
        arcs=[[a.tail, a.head] for a in induced.arcs],
        lengths=[a.length for a in induced.arcs],
        geodetical=holds,
        trials=len(potentials),
        failures=failures,
    )
    _emit(cfg, report)
    return EXIT_OK if failures == 0 else EXIT_VIOLATED


def cmd_verify_theorems(cfg: RunConfig) -> int:
    report = sweep_theorems(cfg.max_order, cfg.naive, cfg.max_vertices)

    def text() -> str:
        lines = [
            f"swept {report.subsets_checked} subsets over {len(report.groups)} groups of order <= {report.max_order}",
            f"  HF but not geodetical:       {report.hf_not_geodetical}",
            f"  geodetical but not HF:       {report.geodetical_not_hf}",
            f"  WHF but KVL fails:           {report.whf_not_kvl}",
            f"  KVL but not WHF:             {report.kvl_not_whf}",
            f"  single-source vs all-pairs:  {report.optimization_mismatches}"
            + ("" if cfg.naive else " (not checked, use --naive)"),
            f"  Carlitz (|G|=2 iff G\\{{e}} HF): {'ok' if report.carlitz_ok else 'FAILED'}",
        ]
        for key, example in report.counterexamples.items():
            lines.append(f"first counterexample [{key}]: S={example.subset} in {example.group}")
            lines.append(f"  {example.detail}")
            lines.append(f"  reproduce with: {example.arguments}")
            if example.certificate is not None:
                lines.append(_plain(example.certificate.model_dump(mode="json"), 2))
        lines.append(f"elapsed: {report.elapsed:.2f}s")
        return "\n".join(lines)

    _emit(cfg, report, text)
    return EXIT_OK if report.mismatches == 0 and report.carlitz_ok else EXIT_VIOLATED


def dispatch(cfg: RunConfig, args: argparse.Namespace) -> int:
    handlers: dict[str, Callable[[], int]] = {
        "atoms": lambda: cmd_atoms(cfg),
        "hf": lambda: cmd_hf(cfg),
        "whf": lambda: cmd_whf(cfg),
        "cayley": lambda: cmd_cayley(cfg, getattr(args, "voltage", False)),
        "geodetic": lambda: cmd_geodetic(cfg),
        "kvl": lambda: cmd_kvl(cfg),
        "spectrum": lambda: cmd_spectrum(cfg),
        "constants": lambda: cmd_constants(cfg),
        "mu-star": lambda: cmd_mu_star(cfg, getattr(args, "voltage", False)),
        "bounds": lambda: cmd_bounds(cfg),
        "bond": lambda: cmd_bond(cfg),
        "verify-theorems": lambda: cmd_verify_theorems(cfg),
    }
    return handlers[cfg.command]()


def run(argv: Optional[Sequence[str]] = None) -> int:
    """解析命令行并执行一个子命令，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        cfg = make_run_config(args)
    except ValidationError as e:
        print(f"错误: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_INPUT
    configure_logging(level=get_config().log_level)
    try:
        return dispatch(cfg, args)
    except GeodeticError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
