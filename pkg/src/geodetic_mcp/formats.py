"""
规格字符串与文件格式 (文本 / JSON) 的解析与输出，以及领域对象到报告模型的转换

有向图文本格式::

    # 注释
    V 4
    0 1 2        # tail head psi [color]
    1 2 1/3 0

电压有向图在此之前多一行 ``N <modulus>``，每条弧在 psi 之后多一个剩余 r。
"""

from fractions import Fraction
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .blocks import Atom
from .digraph import Arc, Path, PathPair, WeightedDigraph
from .errors import InvalidInputError
from .group import AbelianGroup, FiniteGroup, GroupElement, TableGroup
from .models import (
    AtomCertificate,
    AtomModel,
    CycleCertificate,
    KvlReport,
    PathModel,
    PathPairCertificate,
    Rational,
    format_fraction,
    parse_fraction,
)
from .voltage import KvlResult, VoltageAssignment


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InvalidInputError(f"malformed {what} {token!r}: expected an integer") from None


def _rational(token: str, what: str) -> Fraction:
    try:
        return parse_fraction(token)
    except ValueError:
        raise InvalidInputError(f"malformed {what} {token!r}: expected an exact rational like 3 or 1/2") from None


def parse_group_spec(spec: str) -> AbelianGroup:
    """'2,3' → Z_2 x Z_3；'' 或 '1' 为平凡群"""
    text = spec.strip()
    if text in ("", "1"):
        return AbelianGroup(())
    moduli = [_int(part.strip(), "group modulus") for part in text.split(",")]
    return AbelianGroup(moduli)


def _parse_element(group: FiniteGroup, token: str) -> GroupElement:
    coords = tuple(_int(c.strip(), "coordinate") for c in token.split(","))
    if isinstance(group, AbelianGroup):
        if len(coords) != len(group.moduli):
            raise InvalidInputError(
                f"element {token!r} has {len(coords)} coordinates, {group.describe()} needs {len(group.moduli)}"
            )
        for c, n in zip(coords, group.moduli):
            if not 0 <= c < n:
                raise InvalidInputError(f"coordinate {c} of {token!r} is outside 0..{n - 1}")
    group.index_of(coords)
    return coords


def parse_subset_spec(group: FiniteGroup, spec: str) -> tuple[GroupElement, ...]:
    """'1,0;0,1' → ((1,0), (0,1))；表群的元素写成下标"""
    text = spec.strip()
    if not text:
        return ()
    return group.normalize_subset(
        _parse_element(group, token.strip()) for token in text.split(";") if token.strip()
    )


def format_subset(subset: Sequence[GroupElement]) -> str:
    return ";".join(",".join(str(c) for c in g) for g in subset)


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line.replace(",", " ").split()))
    return lines


def parse_table_text(text: str, name: Optional[str] = None) -> TableGroup:
    """阶、单位元下标，然后按行优先给出 阶×阶 个乘积下标 (空白分隔，换行不敏感)"""
    tokens = [(n, t) for n, line in _content_lines(text) for t in line]
    if len(tokens) < 2:
        raise InvalidInputError("a table file starts with the group order and the identity index")
    order = _int(tokens[0][1], "group order")
    identity = _int(tokens[1][1], "identity index")
    if order < 1:
        raise InvalidInputError(f"group order must be >= 1, got {order}")
    entries = [_int(t, f"table entry on line {n}") for n, t in tokens[2:]]
    if len(entries) != order * order:
        raise InvalidInputError(f"expected {order * order} table entries for order {order}, got {len(entries)}")
    rows = [entries[i * order : (i + 1) * order] for i in range(order)]
    return TableGroup(rows, identity=identity, name=name)


def _header(lines: list[tuple[int, list[str]]], key: str) -> int:
    if not lines or lines[0][1][0] != key or len(lines[0][1]) != 2:
        found = " ".join(lines[0][1]) if lines else "end of input"
        raise InvalidInputError(f"expected header '{key} <n>', found {found!r}")
    _, tokens = lines.pop(0)
    return _int(tokens[1], f"'{key}' header value")


def parse_digraph_text(text: str) -> WeightedDigraph:
    lines = _content_lines(text)
    order = _header(lines, "V")
    arcs = []
    for number, tokens in lines:
        if len(tokens) not in (3, 4):
            raise InvalidInputError(f"line {number}: expected 'tail head psi [color]'")
        tail, head = _int(tokens[0], "tail"), _int(tokens[1], "head")
        weight = _rational(tokens[2], f"weight on line {number}")
        color = _int(tokens[3], "color") if len(tokens) == 4 else None
        arcs.append(Arc(tail, head, weight, color))
    return WeightedDigraph(order, arcs)


def parse_voltage_text(text: str) -> tuple[WeightedDigraph, VoltageAssignment]:
    lines = _content_lines(text)
    modulus = _header(lines, "N")
    order = _header(lines, "V")
    arcs = []
    residues = {}
    for number, tokens in lines:
        if len(tokens) not in (4, 5):
            raise InvalidInputError(f"line {number}: expected 'tail head psi residue [color]'")
        tail, head = _int(tokens[0], "tail"), _int(tokens[1], "head")
        weight = _rational(tokens[2], f"weight on line {number}")
        residues[(tail, head)] = _int(tokens[3], "residue")
        color = _int(tokens[4], "color") if len(tokens) == 5 else None
        arcs.append(Arc(tail, head, weight, color))
    return WeightedDigraph(order, arcs), VoltageAssignment(modulus, residues)


def _arc_line(arc: Arc, residue: Optional[int] = None) -> str:
    parts = [str(arc.tail), str(arc.head), format_fraction(arc.weight)]
    if residue is not None:
        parts.append(str(residue))
    if arc.color is not None:
        parts.append(str(arc.color))
    return " ".join(parts)


def write_digraph_text(digraph: WeightedDigraph) -> str:
    lines = [f"V {digraph.order}"]
    lines += [_arc_line(arc) for arc in digraph.arcs]
    return "\n".join(lines) + "\n"


def write_voltage_text(digraph: WeightedDigraph, voltage: VoltageAssignment) -> str:
    lines = [f"N {voltage.modulus}", f"V {digraph.order}"]
    lines += [_arc_line(arc, voltage(arc.tail, arc.head)) for arc in digraph.arcs]
    return "\n".join(lines) + "\n"


class ArcDocument(BaseModel):
    """JSON 中的一条弧"""
    tail: int
    head: int
    weight: Rational = Field(..., description="ψ(a)，'p/q' 字符串")
    color: Optional[int] = None
    voltage: Optional[int] = Field(default=None, description="Z_N 中的剩余")

    model_config = ConfigDict(arbitrary_types_allowed=True)


class DigraphDocument(BaseModel):
    """有向图 / 电压有向图的 JSON 文档"""
    vertices: int = Field(..., ge=0)
    labels: Optional[list[str]] = None
    modulus: Optional[int] = Field(default=None, ge=1, description="电压模 N，缺省时不是电压有向图")
    arcs: list[ArcDocument] = Field(default_factory=list)

    model_config = ConfigDict(arbitrary_types_allowed=True)


def _load_document(text: str) -> DigraphDocument:
    try:
        return DigraphDocument.model_validate_json(text)
    except ValidationError as e:
        raise InvalidInputError(f"malformed digraph JSON: {e.errors()[0]['msg']}") from None


def _document_digraph(doc: DigraphDocument) -> WeightedDigraph:
    return WeightedDigraph(
        doc.vertices, [Arc(a.tail, a.head, a.weight, a.color) for a in doc.arcs], doc.labels
    )


def load_digraph(text: str) -> WeightedDigraph:
    """按内容识别 JSON 或文本格式"""
    if text.lstrip().startswith("{"):
        return _document_digraph(_load_document(text))
    return parse_digraph_text(text)


def load_voltage(text: str) -> tuple[WeightedDigraph, VoltageAssignment]:
    if not text.lstrip().startswith("{"):
        return parse_voltage_text(text)
    doc = _load_document(text)
    if doc.modulus is None:
        raise InvalidInputError("voltage JSON needs a 'modulus'")
    missing = [(a.tail, a.head) for a in doc.arcs if a.voltage is None]
    if missing:
        raise InvalidInputError(f"voltage undefined on arcs {missing}")
    residues = {(a.tail, a.head): a.voltage for a in doc.arcs if a.voltage is not None}
    return _document_digraph(doc), VoltageAssignment(doc.modulus, residues)


def digraph_document(
    digraph: WeightedDigraph,
    voltage: Optional[VoltageAssignment] = None,
) -> DigraphDocument:
    return DigraphDocument(
        vertices=digraph.order,
        labels=list(digraph.labels) if digraph.labels is not None else None,
        modulus=voltage.modulus if voltage is not None else None,
        arcs=[
            ArcDocument(
                tail=a.tail,
                head=a.head,
                weight=a.weight,
                color=a.color,
                voltage=voltage(a.tail, a.head) if voltage is not None else None,
            )
            for a in digraph.arcs
        ],
    )


def parse_potential(spec: str, order: int) -> list[Fraction]:
    """逗号分隔的逐顶点势 '0,1/2,-3'"""
    tokens = [t.strip() for t in spec.split(",") if t.strip()]
    if len(tokens) != order:
        raise InvalidInputError(f"expected {order} potential values, got {len(tokens)}")
    return [_rational(t, "potential value") for t in tokens]


def atom_model(atom: Atom) -> AtomModel:
    return AtomModel(entries=[list(g) for g in atom.entries], cross=atom.cross, length=len(atom))


def atom_certificate(atom: Atom, reason: str) -> AtomCertificate:
    return AtomCertificate(atom=atom_model(atom), reason=reason)


def path_model(digraph: WeightedDigraph, path: Path) -> PathModel:
    return PathModel(
        vertices=path.vertices,
        labels=[digraph.label(v) for v in path.vertices],
        colors=path.colors,
        length=path.length,
    )


def path_pair_certificate(digraph: WeightedDigraph, pair: PathPair) -> PathPairCertificate:
    return PathPairCertificate(
        source=pair.source,
        target=pair.target,
        first=path_model(digraph, pair.first),
        second=path_model(digraph, pair.second),
    )


def cycle_certificate(digraph: WeightedDigraph, result: KvlResult) -> Optional[CycleCertificate]:
    if result.violating_cycle is None:
        return None
    return CycleCertificate(
        cycle=path_model(digraph, result.violating_cycle),
        residues=list(result.residues),
        total=result.total,
        modulus=result.modulus,
    )


def kvl_report(digraph: WeightedDigraph, result: KvlResult) -> KvlReport:
    return KvlReport(
        holds=result.holds,
        modulus=result.modulus,
        cycles_checked=result.cycles_checked,
        violating_cycle=cycle_certificate(digraph, result),
    )
