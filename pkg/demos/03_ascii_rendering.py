"""From coordinates to characters.

``draw`` keeps every intermediate product, so this script walks through
crossings, bundling, the grid mapping, and the finished picture.
"""

from pathlib import Path

from termdag import load_graph
from termdag.render import DIAG_VERT, draw, piece_marks, resolve_mark

g = load_graph(Path(__file__).parent / "data" / "packages.dot")
d = draw(g)

# %% Crossings before and after bundling.
print(f"{len(d.crossings)} crossings found")
for c in d.crossings:
    print(f"  {c.kind:18s} {c.a.edge} x {c.b.edge} at ({c.x:.2f}, {c.y:.2f})")

print("\nrouted heights for vertices whose in-edges cross a vertical:")
for v, y in d.bundle.routed_y.items():
    print(f"  {str(v):24s} y={y:.3f}")
moved = [c for c in d.bundled if c.rerouted]
print(f"{len(moved)} crossings moved, {len(d.crossings) - len(d.bundled)} dropped,",
      f"{sum(c.kind == DIAG_VERT for c in d.bundled)} diagonal/vertical kept")

# %% Distinct x and y values become even columns and rows.
print("\ncolumns:", d.mapping.columns)
print("rows:   ", d.mapping.rows)

# %% How a single piece is drawn: excess height as bars, excess width as
# underscores one row up, then the diagonal.
for target in [(5, 2), (2, 5)]:
    marks = piece_marks(1, 0, *target)
    print(f"\npiece to {target}:", "".join(m for *_, m in marks))

print("\nbackslash under slash gives", resolve_mark("\\", "/"), "; underscore under bar gives", resolve_mark("_", "|"))

# %% The result.
print()
print(d.grid.to_text())
for r, names in d.grid.brackets.items():
    print(f"row {r}: {len(names)} label(s) in brackets")
