import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DIAMOND_DOT
from termdag.generate import random_dag
from termdag.graph import CycleError, PackageGraph
from termdag.parsers import (
    ParseError,
    load_graph,
    parse,
    parse_dot,
    parse_edge_list,
    parse_json,
    sniff_format,
    to_dot,
    to_edge_list,
    to_json,
)


def test_dot_empty():
    g = parse_dot("digraph G { }")
    assert len(g) == 0 and g.edges == ()


def test_dot_diamond(diamond_graph):
    g = parse_dot(DIAMOND_DOT)
    assert len(g) == 4 and len(g.edges) == 4
    assert g == diamond_graph


def test_dot_cycle():
    with pytest.raises(CycleError) as info:
        parse_dot('digraph G { "a" -> "b"; "b" -> "a"; }')
    assert info.value.cycle == ["a", "b", "a"]


def test_dot_subset_features():
    text = """
    // leading comment
    strict digraph deps {
        graph [rankdir=TB];
        node [shape=box, style="filled"];
        rankdir = LR
        "zlib" [label="zlib@1.2"];
        openssl -> zlib [color=red];
        /* block
           comment */
        perl -> openssl -> "zlib"
        lone
        "quoted \\"id\\"" [label="q"; fontsize=9]
        2.5 -> lone
    }
    """
    g = parse_dot(text)
    assert g.nodes == ("zlib", "openssl", "perl", "lone", 'quoted "id"', "2.5")
    assert g.edges == (("openssl", "zlib"), ("perl", "openssl"), ("2.5", "lone"))
    assert g.label("zlib") == "zlib@1.2"
    assert g.label('quoted "id"') == "q"
    assert g.label("perl") == "perl"


def test_dot_label_after_implicit_declaration():
    g = parse_dot('digraph { a -> b; b [label="B"]; b [label="B"] }')
    assert g.label("b") == "B"


@pytest.mark.parametrize("text, message", [
    ("graph G { a -- b }", "undirected"),
    ("digraph G { a -- b }", "undirected edge"),
    ('digraph G { a [label="x"]; a [label="y"] }', "conflicting label"),
    ("digraph G { subgraph s { a } }", "subgraph"),
    ("digraph G { a -> }", "expected id"),
    ("digraph G { a -> b", "unterminated"),
    ("digraph G { a:p -> b }", "ports"),
    ("digraph G { a @ b }", "unexpected character"),
    ("digraph G { a -> a }", "self-loop"),
])
def test_dot_errors(text, message):
    with pytest.raises(Exception, match=message):
        parse_dot(text)


def test_dot_error_position():
    with pytest.raises(ParseError) as info:
        parse_dot("digraph G {\n  a -> b;\n  c -> ;\n}")
    assert info.value.line == 3
    assert info.value.column == 8


def test_edge_list_examples():
    g = parse_edge_list("a b\nb c")
    assert g.nodes == ("a", "b", "c") and g.edges == (("a", "b"), ("b", "c"))
    assert len(parse_edge_list("")) == 0
    g = parse_edge_list("a b\na b")
    assert len(g) == 2 and len(g.edges) == 1


def test_edge_list_syntax():
    g = parse_edge_list("# header\n\na -> b   # trailing\nb->c\n  solo\n")
    assert g.edges == (("a", "b"), ("b", "c"))
    assert "solo" in g


def test_edge_list_errors():
    with pytest.raises(ParseError) as info:
        parse_edge_list("a b\nb c d\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_edge_list("a -> b -> c")
    with pytest.raises(CycleError):
        parse_edge_list("a b\nb c\nc a")


def test_json_examples(diamond_graph):
    g = parse_json('{"nodes":[{"id":"x"}],"edges":[]}')
    assert g.nodes == ("x",) and g.edges == ()

    text = json.dumps({"nodes": [{"id": n} for n in ("target", "A", "B", "C")],
                       "edges": [["target", "A"], ["target", "B"], ["A", "C"], ["B", "C"]]})
    assert parse_json(text) == parse_dot(DIAMOND_DOT) == diamond_graph

    g = parse_json('{"nodes":[],"edges":[["a","b"]]}')
    assert g.nodes == ("a", "b")
    with pytest.raises(ParseError, match=r"\$\.edges\[0\]\[0\].*undeclared"):
        parse_json('{"nodes":[],"edges":[["a","b"]]}', strict=True)


@pytest.mark.parametrize("text, path", [
    ('[1]', "$"),
    ('{"nodes": {}}', "$.nodes"),
    ('{"nodes": [{"label": "x"}]}', "$.nodes[0].id"),
    ('{"nodes": [{"id": "x", "label": 3}]}', "$.nodes[0].label"),
    ('{"edges": [["a"]]}', "$.edges[0]"),
    ('{"edges": [["a", 1]]}', "$.edges[0][1]"),
])
def test_json_schema_errors(text, path):
    with pytest.raises(ParseError) as info:
        parse_json(text)
    assert str(info.value).startswith(path + ":")


def test_json_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_json('{"nodes": [\n  {"id": }]}')
    assert info.value.line == 2


def test_sniff_format(tmp_path):
    assert sniff_format("", "g.dot") == "dot"
    assert sniff_format("", "g.json") == "json"
    assert sniff_format("", "g.txt") == "edges"
    assert sniff_format("// hi\ndigraph { a -> b }") == "dot"
    assert sniff_format('  {"nodes": []}') == "json"
    assert sniff_format("a b\n") == "edges"
    p = tmp_path / "deps.gv"
    p.write_text(DIAMOND_DOT)
    assert len(load_graph(p)) == 4
    assert len(parse("x y", "auto")) == 2


labels = st.text(st.characters(codec="utf-8", exclude_categories=("Cs",)), max_size=8)


@st.composite
def labelled_dags(draw):
    g = random_dag(draw(st.integers(0, 12)), 0.25, seed=draw(st.integers(0, 10**6)))
    return PackageGraph([(n, draw(labels)) for n in g.nodes], g.edges)


@settings(max_examples=80, deadline=None)
@given(labelled_dags())
def test_round_trip_dot(g):
    assert parse_dot(to_dot(g)) == g


@settings(max_examples=80, deadline=None)
@given(labelled_dags())
def test_round_trip_json(g):
    assert parse_json(to_json(g)) == g


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 14), st.integers(0, 10**6))
def test_round_trip_edge_list(n, seed):
    g = random_dag(n, 0.25, seed=seed)
    assert parse_edge_list(to_edge_list(g)) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6), st.data())
def test_every_parser_rejects_a_closing_back_edge(n, seed, data):
    g = random_dag(n, 0.3, seed=seed, rooted=True)
    # root reaches everything, so any edge back into it closes a cycle
    back = (data.draw(st.sampled_from(g.nodes[1:])), "root")
    edges = list(g.edges) + [back]
    dot = "digraph G {\n" + "".join(f'"{s}" -> "{t}";\n' for s, t in edges) + "}"
    el = "".join(f"{s} {t}\n" for s, t in edges)
    js = json.dumps({"nodes": [{"id": v} for v in g.nodes], "edges": [list(e) for e in edges]})
    for parser, text in ((parse_dot, dot), (parse_edge_list, el), (parse_json, js)):
        with pytest.raises(CycleError):
            parser(text)
