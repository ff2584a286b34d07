"""Neighbour and reachability highlighting over a rendered grid."""

from __future__ import annotations

from dataclasses import dataclass

from termdag.graph import Edge, PackageGraph, neighbors, reachable
from termdag.render import MarkGrid

MODES = ("off", "direct", "reachable")

RESET = "\x1b[0m"
STYLES = {
    # highlighted cells, non-highlighted marks in reachable mode
    "color": ("\x1b[1;33m", "\x1b[2m"),
    "reverse": ("\x1b[1;7m", ""),
}


@dataclass(frozen=True)
class HighlightSet:
    nodes: frozenset[str]
    edges: frozenset[Edge]
    node_cells: frozenset[tuple[int, int]]
    edge_cells: frozenset[tuple[int, int]]
    mode: str = "direct"

    @property
    def cells(self) -> frozenset[tuple[int, int]]:
        return self.node_cells | self.edge_cells


def compute_highlight(g: PackageGraph, grid: MarkGrid, selected: str, mode: str = "direct") -> HighlightSet:
    """Cells to emphasise for ``selected``.

    ``direct`` covers the node, its incident edges and their other ends;
    ``reachable`` covers every ancestor and descendant and all edges on paths
    through the node. A cell shared with a non-highlighted edge is still
    highlighted.
    """
    if mode == "direct":
        nb = neighbors(g, selected)
        nodes = {selected} | nb.dependents | nb.dependencies
        edges = {(m, selected) for m in nb.dependents} | {(selected, m) for m in nb.dependencies}
    elif mode == "reachable":
        rs = reachable(g, selected)
        nodes = {selected} | rs.ancestors | rs.descendants
        edges = set(rs.path_edges)
    else:
        raise ValueError(f"unknown highlight mode {mode!r}")
    node_cells = frozenset(c for n in nodes for c in grid.cells_of(n))
    edge_cells = frozenset(c for e in edges for c in grid.cells_of(e))
    return HighlightSet(frozenset(nodes), frozenset(edges), node_cells, edge_cells, mode)


def emit(grid: MarkGrid, highlight: HighlightSet | None = None, style: str | None = None) -> str:
    """The grid as text, optionally with ANSI emphasis.

    Without a highlight or a style this is exactly ``grid.to_text()``.
    """
    if highlight is None or style is None:
        return grid.to_text()
    on, dim = STYLES[style]
    dim = dim if highlight.mode == "reachable" else ""
    lines = []
    for r, text in enumerate(grid.rows()):
        out, current = [], ""
        for c, ch in enumerate(text):
            if (r, c) in highlight.cells:
                want = on
            elif dim and ch != " ":
                want = dim
            else:
                want = ""
            if want != current:
                out.append(RESET if current else "")
                out.append(want)
                current = want
            out.append(ch)
        if current:
            out.append(RESET)
        lines.append("".join(out))
    return "\n".join(lines)
