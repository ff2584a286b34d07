"""Readers and writers for the supported graph input formats.

Three formats are understood:

* a subset of Graphviz DOT (``digraph`` only, no subgraphs or ports),
* a plain edge list, one ``a b`` or ``a -> b`` pair per line,
* JSON of the form ``{"nodes": [{"id": ..., "label": ...}], "edges": [[src, dst]]}``.

Every reader returns a validated :class:`~termdag.graph.PackageGraph`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from termdag.graph import GraphError, PackageGraph

FORMATS = ("dot", "edges", "json")


class ParseError(GraphError):
    """Syntax or schema error; ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class _Builder:
    """Collects nodes and edges in first-mention order."""

    def __init__(self):
        self.labels: dict[str, str | None] = {}
        self.edges: list[tuple[str, str]] = []

    def node(self, node_id: str, label: str | None = None, where: tuple[int, int] | None = None):
        old = self.labels.get(node_id)
        if label is not None and old is not None and old != label:
            line, col = where or (None, None)
            raise ParseError(f"node {node_id!r} redeclared with conflicting label "
                             f"{label!r} (was {old!r})", line, col)
        if node_id not in self.labels or label is not None:
            self.labels[node_id] = label

    def edge(self, source: str, target: str):
        self.node(source)
        self.node(target)
        self.edges.append((source, target))

    def build(self) -> PackageGraph:
        return PackageGraph(self.labels.items(), self.edges)


# ---------------------------------------------------------------------------
# DOT

_DOT_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>//[^\n]*|/\*.*?\*/|^\#[^\n]*)
  | (?P<arrow>->|--)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<number>-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))
  | (?P<ident>[A-Za-z_\u0080-￿][A-Za-z0-9_\u0080-￿]*)
  | (?P<punct>[{}\[\];,=:])
""", re.VERBOSE | re.DOTALL | re.MULTILINE)

_KEYWORDS = {"strict", "graph", "digraph", "node", "edge", "subgraph"}


@dataclass
class _Tok:
    kind: str  # "id", "keyword", "arrow", "punct", "eof"
    value: str
    line: int
    column: int
    quoted: bool = False


_DOT_ESCAPE = re.compile(r'\\(\r?\n|["\\])')


def _unescape(m: re.Match) -> str:
    # line continuations vanish; \" and \\ collapse; other escapes stay verbatim
    ch = m.group(1)
    return ch if ch in ('"', "\\") else ""


def _tokenize_dot(text: str) -> list[_Tok]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind == "string":
            inner = value[1:-1]
            inner = _DOT_ESCAPE.sub(_unescape, inner)
            tokens.append(_Tok("id", inner, line, col, quoted=True))
        elif kind in ("number", "ident"):
            if kind == "ident" and value.lower() in _KEYWORDS:
                tokens.append(_Tok("keyword", value.lower(), line, col))
            else:
                tokens.append(_Tok("id", value, line, col))
        elif kind in ("arrow", "punct"):
            tokens.append(_Tok(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Tok("eof", "", line, pos - line_start + 1))
    return tokens


class _DotParser:
    def __init__(self, text: str):
        self.tokens = _tokenize_dot(text)
        self.i = 0
        self.builder = _Builder()

    @property
    def tok(self) -> _Tok:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def accept(self, kind: str, value: str | None = None) -> _Tok | None:
        tok = self.tok
        if tok.kind == kind and (value is None or tok.value == value):
            self.i += 1
            return tok
        return None

    def expect(self, kind: str, value: str | None = None) -> _Tok:
        tok = self.accept(kind, value)
        if tok is None:
            want = repr(value) if value else kind
            got = repr(self.tok.value) if self.tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        return tok

    def parse(self) -> PackageGraph:
        self.accept("keyword", "strict")
        if self.tok.kind == "keyword" and self.tok.value == "graph":
            raise self.error("undirected 'graph' is not supported; use 'digraph'")
        self.expect("keyword", "digraph")
        self.accept("id")
        self.expect("punct", "{")
        while not self.accept("punct", "}"):
            if self.tok.kind == "eof":
                raise self.error("unterminated digraph body, expected '}'")
            self.statement()
            self.accept("punct", ";")
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.value!r} after end of digraph")
        return self.builder.build()

    def statement(self) -> None:
        tok = self.tok
        if tok.kind == "keyword":
            if tok.value in ("graph", "node", "edge"):
                self.i += 1
                self.attributes()
                return
            if tok.value == "subgraph":
                raise self.error("subgraphs are not supported")
            raise self.error(f"unexpected keyword {tok.value!r}")
        if tok.kind == "punct" and tok.value == "{":
            raise self.error("subgraphs are not supported")
        first = self.expect("id")
        if self.accept("punct", "="):
            self.expect("id")
            return
        if self.tok.kind == "punct" and self.tok.value == ":":
            raise self.error("node ports are not supported")
        if self.tok.kind == "arrow":
            chain = [first]
            while self.tok.kind == "arrow":
                arrow = self.expect("arrow")
                if arrow.value == "--":
                    raise self.error("undirected edge '--' in a digraph", arrow)
                chain.append(self.expect("id"))
            self.attributes()
            for a, b in zip(chain, chain[1:]):
                self.builder.edge(a.value, b.value)
            return
        attrs = self.attributes()
        self.builder.node(first.value, attrs.get("label"), (first.line, first.column))

    def attributes(self) -> dict[str, str]:
        attrs: dict[str, str] = {}
        while self.accept("punct", "["):
            while not self.accept("punct", "]"):
                key = self.expect("id")
                value = key.value
                if self.accept("punct", "="):
                    value = self.expect("id").value
                attrs[key.value] = value
                self.accept("punct", ",") or self.accept("punct", ";")
        return attrs


def parse_dot(text: str) -> PackageGraph:
    """Parse a DOT ``digraph``; ``a -> b`` means a depends on b."""
    return _DotParser(text).parse()


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: PackageGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for n in g.nodes:
        lines.append(f"  {_dot_id(n)} [label={_dot_id(g.label(n))}];")
    for s, t in g.edges:
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# edge list

def parse_edge_list(text: str) -> PackageGraph:
    """Parse ``a b`` / ``a -> b`` lines. A lone token declares an isolated node."""
    builder = _Builder()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = re.sub(r"(^|\s)#.*$", "", raw).strip()
        if not line:
            continue
        if "->" in line:
            parts = [p.strip() for p in line.split("->")]
            if len(parts) != 2 or not all(parts) or any(len(p.split()) != 1 for p in parts):
                raise ParseError(f"malformed edge line {raw.strip()!r}", lineno)
        else:
            parts = line.split()
            if len(parts) > 2:
                raise ParseError(f"malformed edge line {raw.strip()!r}", lineno)
        if len(parts) == 1:
            builder.node(parts[0])
        else:
            builder.edge(parts[0], parts[1])
    return builder.build()


def to_edge_list(g: PackageGraph) -> str:
    """Serialize as an edge list; labels are not representable and are dropped.

    Every node is declared on its own line first so that re-reading keeps the
    node order.
    """
    lines = list(g.nodes)
    lines.extend(f"{s} {t}" for s, t in g.edges)
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# JSON

def parse_json(text: str, strict: bool = False) -> PackageGraph:
    """Parse the JSON node/edge schema.

    With ``strict`` an edge naming an undeclared node is an error; otherwise
    the node is created implicitly.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("$: expected an object")
    nodes = data.get("nodes", [])
    edges = data.get("edges", [])
    if not isinstance(nodes, list):
        raise ParseError("$.nodes: expected an array")
    if not isinstance(edges, list):
        raise ParseError("$.edges: expected an array")

    builder = _Builder()
    for i, item in enumerate(nodes):
        path = f"$.nodes[{i}]"
        if not isinstance(item, dict):
            raise ParseError(f"{path}: expected an object")
        node_id = item.get("id")
        if not isinstance(node_id, str):
            raise ParseError(f"{path}.id: expected a string")
        label = item.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError(f"{path}.label: expected a string")
        try:
            builder.node(node_id, label)
        except ParseError as exc:
            raise ParseError(f"{path}: {exc}") from None
    declared = set(builder.labels)
    for i, item in enumerate(edges):
        path = f"$.edges[{i}]"
        if not (isinstance(item, list) and len(item) == 2):
            raise ParseError(f"{path}: expected a [source, target] pair")
        for j, end in enumerate(item):
            if not isinstance(end, str):
                raise ParseError(f"{path}[{j}]: expected a string")
            if strict and end not in declared:
                raise ParseError(f"{path}[{j}]: edge references undeclared node {end!r}")
        builder.edge(item[0], item[1])
    return builder.build()


def to_json(g: PackageGraph) -> str:
    nodes = []
    for n in g.nodes:
        entry = {"id": n}
        if g.label(n) != n:
            entry["label"] = g.label(n)
        nodes.append(entry)
    return json.dumps({"nodes": nodes, "edges": [list(e) for e in g.edges]}, indent=1) + "\n"


# ---------------------------------------------------------------------------

_EXTENSIONS = {".dot": "dot", ".gv": "dot", ".json": "json",
               ".txt": "edges", ".edges": "edges", ".el": "edges"}


def sniff_format(text: str, filename: str | None = None) -> str:
    """Guess the format from the file extension, then from the content."""
    if filename:
        fmt = _EXTENSIONS.get(Path(filename).suffix.lower())
        if fmt:
            return fmt
    body = re.sub(r"//[^\n]*|/\*.*?\*/|^#[^\n]*", "", text, flags=re.DOTALL | re.MULTILINE).lstrip()
    if body.startswith("{") or body.startswith("["):
        return "json"
    if re.match(r"(strict\s+)?(di)?graph\b", body, re.IGNORECASE):
        return "dot"
    return "edges"


def parse(text: str, fmt: str = "auto", filename: str | None = None,
          strict: bool = False) -> PackageGraph:
    if fmt == "auto":
        fmt = sniff_format(text, filename)
    if fmt == "dot":
        return parse_dot(text)
    if fmt == "edges":
        return parse_edge_list(text)
    if fmt == "json":
        return parse_json(text, strict=strict)
    raise ValueError(f"unknown format {fmt!r}")


def load_graph(path: str | Path, fmt: str = "auto", strict: bool = False) -> PackageGraph:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), fmt, filename=path.name, strict=strict)
