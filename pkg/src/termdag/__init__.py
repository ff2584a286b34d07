"""Interactive ASCII drawings of dependency DAGs for the terminal."""

from termdag.graph import (
    CycleError,
    GraphError,
    NeighborSets,
    PackageGraph,
    ReachabilitySets,
    UnknownNodeError,
    count_paths,
    neighbors,
    reachable,
)
from termdag.highlight import HighlightSet, compute_highlight, emit
from termdag.layout import LayeredLayout, layout
from termdag.parsers import ParseError, load_graph, parse, parse_dot, parse_edge_list, parse_json
from termdag.render import MarkGrid, draw, render, render_text

__version__ = "0.1.0"

__all__ = [
    "CycleError", "GraphError", "HighlightSet", "LayeredLayout", "MarkGrid", "NeighborSets",
    "PackageGraph", "ParseError", "ReachabilitySets", "UnknownNodeError", "compute_highlight",
    "count_paths", "draw", "emit", "layout", "load_graph", "neighbors", "parse", "parse_dot",
    "parse_edge_list", "parse_json", "reachable", "render", "render_text",
]
