"""Highlighting and the headless viewer.

The interactive session is a thin curses loop around ``Viewer``. Driving the
viewer directly shows what each key does without needing a terminal.
"""

from pathlib import Path

from termdag import load_graph, render
from termdag.highlight import compute_highlight, emit
from termdag.tui import Viewer

g = load_graph(Path(__file__).parent / "data" / "packages.dot")
grid = render(g)

# %% Direct neighbours versus everything on a path through the node.
for mode in ("direct", "reachable"):
    hl = compute_highlight(g, grid, "openssl", mode)
    print(f"{mode:9s}: {sorted(hl.nodes)} ({len(hl.cells)} cells)")

# %% With ANSI styling (try it in a colour terminal).
print(emit(grid, compute_highlight(g, grid, "openssl"), "color"))

# %% A scripted session in a small window.
v = Viewer(g, grid, height=10, width=30)
v.search("li")
print("\nafter /li:", v.state.matches, "->", v.state.selected, "pan", (v.state.pan_row, v.state.pan_col))
for key in "nn":
    v.handle_key(key)
    print("n ->", v.state.selected)
v.handle_key("t")
print("mode:", v.state.mode, "|", v.status())
for key in ["right", "right", "s"]:
    v.handle_key(key)
print("pan:", (v.state.pan_row, v.state.pan_col), "max", v.max_pan)
v.search("nothing-like-this")
print(v.status())

# %% Quitting prints every row, not just the visible window.
v.search("")
print("\nquit dump equals static render:", v.dump() == grid.to_text())
