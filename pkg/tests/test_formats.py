"""
规格字符串、文本 / JSON 有向图格式
"""

import json
from fractions import Fraction

import pytest

from geodetic_mcp.cayley import build_cayley
from geodetic_mcp.digraph import Arc, WeightedDigraph
from geodetic_mcp.errors import InvalidInputError
from geodetic_mcp.formats import (
    digraph_document,
    format_subset,
    load_digraph,
    load_voltage,
    parse_digraph_text,
    parse_group_spec,
    parse_potential,
    parse_subset_spec,
    parse_table_text,
    parse_voltage_text,
    write_digraph_text,
    write_voltage_text,
)
from geodetic_mcp.group import AbelianGroup
from geodetic_mcp.voltage import cayley_voltage


def test_group_spec():
    assert parse_group_spec("2, 3").moduli == (2, 3)
    assert parse_group_spec("").order == 1
    assert parse_group_spec("1").order == 1


@pytest.mark.parametrize("spec", ["2,x", "1,2", "0"])
def test_bad_group_spec(spec):
    with pytest.raises(InvalidInputError):
        parse_group_spec(spec)


def test_subset_spec():
    klein = AbelianGroup([2, 2])
    subset = parse_subset_spec(klein, "1,1; 0,1;1,1")
    assert subset == ((0, 1), (1, 1))
    assert format_subset(subset) == "0,1;1,1"
    assert parse_subset_spec(klein, "  ") == ()


@pytest.mark.parametrize("spec", ["1", "2,0", "0,0", "a,1"])
def test_bad_subset_spec(spec):
    with pytest.raises(InvalidInputError):
        parse_subset_spec(AbelianGroup([2, 2]), spec)


def test_table_text():
    group = parse_table_text("3\n0\n0 1 2\n1 2 0\n2 0 1  # Z_3\n", name="Z3")
    assert group.order == 3
    assert group.describe() == "Z3"
    assert parse_subset_spec(group, "1;2") == ((1,), (2,))
    # 换行位置不影响行优先读取
    assert parse_table_text("3 0 0 1 2 1 2 0\n2 0 1").mul_table == group.mul_table


def test_table_text_identity_not_first():
    # Z_2，单位元是下标 1
    group = parse_table_text("2\n1\n1 0\n0 1\n")
    assert group.identity == (1,)
    assert group.order_of((0,)) == 2
    assert parse_subset_spec(group, "0") == ((0,),)
    with pytest.raises(InvalidInputError, match="identity"):
        parse_subset_spec(group, "1")


@pytest.mark.parametrize(
    "text",
    ["", "3", "3\n0\n0 1 2\n1 2 0\n", "2\n0\n0 1\n0 1\n", "2\n5\n0 1\n1 0\n", "0\n0\n"],
    ids=["empty", "no-identity", "short-table", "not-latin", "identity-range", "zero-order"],
)
def test_bad_table_text(text):
    with pytest.raises(InvalidInputError):
        parse_table_text(text)


DIGRAPH_TEXT = """
# shortcut
V 3
0 1 1
1 2 1/2 0
0,2,3,1
"""


def test_parse_digraph_text():
    digraph = parse_digraph_text(DIGRAPH_TEXT)
    assert digraph.order == 3
    assert digraph.arc(1, 2).weight == Fraction(1, 2)
    assert digraph.arc(1, 2).color == 0
    assert digraph.arc(0, 1).color is None
    assert parse_digraph_text(write_digraph_text(digraph)) == digraph


@pytest.mark.parametrize(
    "text,message",
    [
        ("0 1 1\n", "header"),
        ("V 2\n0 1\n", "line 2"),
        ("V 2\n0 1 half\n", "rational"),
        ("V 2\n0 1 -1\n", "non-positive"),
        ("V 2\n0 5 1\n", ""),
    ],
)
def test_bad_digraph_text(text, message):
    with pytest.raises(InvalidInputError, match=message):
        parse_digraph_text(text)


def test_voltage_text_round_trip(z4):
    cayley = build_cayley(z4, [(1,), (2,)])
    voltage = cayley_voltage(cayley)
    text = write_voltage_text(cayley.digraph, voltage)
    assert text.startswith("N 4\nV 4\n")
    digraph, parsed = parse_voltage_text(text)
    assert digraph == cayley.digraph
    assert all(parsed(a.tail, a.head) == voltage(a.tail, a.head) for a in digraph.arcs)


def test_voltage_text_needs_both_headers():
    with pytest.raises(InvalidInputError, match="'N <n>'"):
        parse_voltage_text("V 2\n0 1 1 1\n")


def test_json_documents(z3):
    cayley = build_cayley(z3, [(1,)])
    voltage = cayley_voltage(cayley)
    text = digraph_document(cayley.digraph, voltage).model_dump_json()
    data = json.loads(text)
    assert data["modulus"] == 3
    assert data["arcs"][0]["weight"] == "3"
    digraph, parsed = load_voltage(text)
    assert digraph == cayley.digraph
    assert parsed(0, 1) == 1
    assert load_digraph(text) == cayley.digraph


def test_json_weight_must_be_exact():
    text = json.dumps({"vertices": 2, "arcs": [{"tail": 0, "head": 1, "weight": 0.5}]})
    with pytest.raises(InvalidInputError, match="malformed digraph JSON"):
        load_digraph(text)
    text = json.dumps({"vertices": 2, "arcs": [{"tail": 0, "head": 1, "weight": "2/3"}]})
    assert load_digraph(text).arc(0, 1).length == Fraction(3, 2)


def test_json_voltage_requirements():
    plain = digraph_document(WeightedDigraph(2, [Arc(0, 1, 1)])).model_dump_json()
    with pytest.raises(InvalidInputError, match="modulus"):
        load_voltage(plain)
    partial = json.dumps(
        {
            "vertices": 2,
            "modulus": 2,
            "arcs": [
                {"tail": 0, "head": 1, "weight": "1", "voltage": 1},
                {"tail": 1, "head": 0, "weight": "1"},
            ],
        }
    )
    with pytest.raises(InvalidInputError, match="undefined"):
        load_voltage(partial)


def test_potential():
    assert parse_potential("0, 1/2,-3", 3) == [Fraction(0), Fraction(1, 2), Fraction(-3)]
    with pytest.raises(InvalidInputError):
        parse_potential("0,1", 3)
    with pytest.raises(InvalidInputError):
        parse_potential("0,x", 2)
