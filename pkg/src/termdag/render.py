"""Turn a layered layout into an ASCII node-link diagram.

Stages, in order: segment crossings, crossing bundling, gridding of the
distinct x/y values, mark placement with glyph precedence, label placement.

Grid conventions. A grid point ``(row, col)`` is the upper-left corner of a
character cell. Layer vertices occupy the cell below-right of their point:
real nodes draw ``o``, dummy vertices draw a ``|`` stub. Edges arrive at the
top corner of that cell and leave from its bottom corner, so the extra row
that every node-bearing y value receives is where edges fan out.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from termdag.graph import Edge, PackageGraph
from termdag.layout import Dummy, LayeredLayout, Segment, Vertex, layout as layered_layout

TOL = 1e-9

# lower wins; 'o' is never overwritten
ORDER = {"o": -1, "X": 0, "|": 1, "_": 2, "\\": 3, "/": 3, " ": 4}
MARKS = frozenset("o|_/\\X ")

DIAG_VERT = "diagonal-vertical"
DIAG_DIAG = "diagonal-diagonal"


def _k(v: float) -> float:
    # snap so that equal coordinates computed along different routes compare equal
    return round(v, 9) + 0.0


# ---------------------------------------------------------------------------
# crossings


@dataclass(frozen=True)
class Crossing:
    a: Segment
    b: Segment
    x: float
    y: float
    kind: str
    rerouted: bool = False

    def other(self, seg: Segment) -> Segment:
        return self.b if seg == self.a else self.a


def segment_intersection(s: Segment, t: Segment, tol: float = TOL) -> tuple[float, float] | None:
    """Proper interior intersection point of two segments, or None."""
    ends_s = {(s.x1, s.y1), (s.x2, s.y2)}
    if ends_s & {(t.x1, t.y1), (t.x2, t.y2)}:
        return None
    rx, ry = s.x2 - s.x1, s.y2 - s.y1
    qx, qy = t.x2 - t.x1, t.y2 - t.y1
    denom = rx * qy - ry * qx
    if abs(denom) < tol:
        return None
    dx, dy = t.x1 - s.x1, t.y1 - s.y1
    u = (dx * qy - dy * qx) / denom
    v = (dx * ry - dy * rx) / denom
    if not (tol < u < 1 - tol and tol < v < 1 - tol):
        return None
    if s.vertical:
        return (s.x1, t.y1 + v * qy)
    if t.vertical:
        return (t.x1, s.y1 + u * ry)
    return (s.x1 + u * rx, s.y1 + u * ry)


def get_edge_crossings(lay: LayeredLayout | Iterable[Segment]) -> list[Crossing]:
    """All proper crossings between segments of different edges."""
    segs = lay.all_segments() if isinstance(lay, LayeredLayout) else list(lay)
    indexed = sorted(enumerate(segs), key=lambda p: (min(p[1].y1, p[1].y2), p[0]))
    found = []
    for pos, (i, s) in enumerate(indexed):
        s_hi = max(s.y1, s.y2)
        for j, t in indexed[pos + 1:]:
            if min(t.y1, t.y2) >= s_hi - TOL:
                break
            if s.edge == t.edge:
                continue
            pt = segment_intersection(s, t)
            if pt is None:
                continue
            a, b = (s, t) if i < j else (t, s)
            kind = DIAG_VERT if (a.vertical or b.vertical) else DIAG_DIAG
            found.append((min(i, j), max(i, j), Crossing(a, b, pt[0], pt[1], kind)))
    found.sort(key=lambda f: (f[0], f[1]))
    return [c for _, _, c in found]


# ---------------------------------------------------------------------------
# bundling


@dataclass
class BundleContext:
    max_x: float
    routed_y: dict[Vertex, float] = field(default_factory=dict)


def offset_factor(x: float, max_x: float) -> float:
    if max_x <= 0:
        return 0.25
    f = 0.5 * x / max_x
    if f <= 0:
        # x = 0 would route onto the upper layer itself; same-layer neighbours
        # are at least 1 apart, so this stays unique among them
        f = 0.25 / max_x
    return f


def bundle_context(lay: LayeredLayout, crossings: list[Crossing]) -> BundleContext:
    """Pick a routed y for every vertex with an in-segment crossing a vertical."""
    crosses_vertical = set()
    for c in crossings:
        if c.kind == DIAG_VERT:
            crosses_vertical.add(c.b if c.a.vertical else c.a)
    in_segments: dict[Vertex, list[Segment]] = defaultdict(list)
    for seg in lay.all_segments():
        in_segments[seg.lower].append(seg)

    ctx = BundleContext(lay.max_x)
    dummies = [seg.lower for seg in lay.all_segments() if isinstance(seg.lower, Dummy)]
    for v in list(lay.graph.nodes) + dummies:
        x, y = lay.positions[v]
        for seg in in_segments[v]:
            if seg in crosses_vertical:
                ctx.routed_y[v] = seg.y1 + (y - seg.y1) * offset_factor(x, ctx.max_x)
                break
    return ctx


def get_bundle_positions(lay: LayeredLayout, crossings: list[Crossing],
                         ctx: BundleContext | None = None) -> list[Crossing]:
    """Shift crossings onto routed y values; drop those claimed by two routes."""
    ctx = ctx or bundle_context(lay, crossings)
    routed = ctx.routed_y
    out = []
    for c in crossings:
        if c.kind == DIAG_VERT:
            diag = c.b if c.a.vertical else c.a
            y = routed[diag.lower]
            out.append(replace(c, y=y, rerouted=True))
            continue
        ra, rb = routed.get(c.a.lower), routed.get(c.b.lower)
        if ra is not None and rb is not None:
            continue
        if ra is not None or rb is not None:
            out.append(replace(c, y=ra if ra is not None else rb, rerouted=True))
        else:
            out.append(c)
    return out


def segment_polylines(lay: LayeredLayout, crossings: list[Crossing]) -> dict[Segment, list[tuple[float, float]]]:
    """Each segment as a y-monotone polyline through its (shifted) crossings."""
    bends: dict[Segment, set[tuple[float, float]]] = defaultdict(set)
    for c in crossings:
        pt = (_k(c.x), _k(c.y))
        bends[c.a].add(pt)
        bends[c.b].add(pt)
    lines = {}
    for seg in lay.all_segments():
        start, end = (_k(seg.x1), _k(seg.y1)), (_k(seg.x2), _k(seg.y2))
        sign = (seg.x2 > seg.x1) - (seg.x2 < seg.x1)
        mid = sorted(bends.get(seg, set()) - {start, end}, key=lambda p: (p[1], p[0] * sign))
        lines[seg] = [start, *mid, end]
    return lines


# ---------------------------------------------------------------------------
# gridding


@dataclass(frozen=True)
class GridMapping:
    columns: dict[float, int]
    rows: dict[float, int]
    node_rows: frozenset[int]


def to_grid_points(xset: Iterable[float], yset: Iterable[float],
                   node_ys: Iterable[float] = ()) -> GridMapping:
    """Map sorted x values to even columns and y values to rows.

    Every y that hosts a real node takes two extra rows.
    """
    node_ys = {_k(y) for y in node_ys}
    columns, rows, node_rows = {}, {}, set()
    col = 0
    for x in sorted({_k(x) for x in xset}):
        columns[x] = col
        col += 2
    row = 0
    for y in sorted({_k(y) for y in yset}):
        rows[y] = row
        row += 2
        if y in node_ys:
            node_rows.add(rows[y])
            row += 2
    return GridMapping(columns, rows, frozenset(node_rows))


# ---------------------------------------------------------------------------
# marks


def resolve_mark(existing: str, candidate: str) -> str:
    """Glyph left in a cell when ``candidate`` is drawn over ``existing``."""
    if ORDER[candidate] < ORDER[existing]:
        return candidate
    if ORDER[candidate] == ORDER[existing] and candidate != existing and candidate in "/\\":
        return "X"
    return existing


def piece_marks(r: int, c: int, r2: int, c2: int) -> list[tuple[int, int, str]]:
    """Cells and glyphs for a straight run from grid point (r, c) down to (r2, c2).

    The excess vertical displacement is drawn first as ``|``, or the excess
    horizontal displacement as ``_`` in the row above, then the remaining
    45-degree diagonal as slashes ending exactly on (r2, c2).
    """
    dr, dc = r2 - r, c2 - c
    assert dr >= 0, "pieces always descend"
    step = (dc > 0) - (dc < 0)
    diagonal = min(dr, abs(dc))
    vertical = max(0, dr - abs(dc))
    horizontal = max(0, abs(dc) - dr)
    cells = [(i, c, "|") for i in range(r, r + vertical)]
    for k in range(horizontal):
        cells.append((r - 1, c + k if step > 0 else c - 1 - k, "_"))
    row0, col0 = r + vertical, c + step * horizontal
    for k in range(diagonal):
        if step > 0:
            cells.append((row0 + k, col0 + k, "\\"))
        else:
            cells.append((row0 + k, col0 - 1 - k, "/"))
    return cells


def departure_point(r: int, c: int, r2: int, c2: int) -> tuple[int, int]:
    """Start point for a piece leaving the layer vertex drawn in cell (r, c)."""
    if abs(c2 - c) > r2 - (r + 1):
        # underscores go in the spare node row, below the vertex
        return (r + 2, c)
    return (r + 1, c)


@dataclass(frozen=True)
class Label:
    kind: str  # "right-of-node", "left-of-node", "right-of-graph", "bracket"
    row: int
    col: int
    text: str


@dataclass
class MarkGrid:
    cells: np.ndarray
    entity_index: dict[tuple[int, int], frozenset]
    node_cells: dict[str, tuple[int, int]]
    labels: dict[str, Label] = field(default_factory=dict)
    brackets: dict[int, list[str]] = field(default_factory=dict)
    label_cells: frozenset = frozenset()

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @cached_property
    def _cells_by_entity(self) -> dict[object, frozenset]:
        inverse: dict[object, set] = defaultdict(set)
        for cell, ents in self.entity_index.items():
            for ent in ents:
                inverse[ent].add(cell)
        return {ent: frozenset(cells) for ent, cells in inverse.items()}

    def cells_of(self, entity) -> frozenset[tuple[int, int]]:
        """Every cell whose mark or label text belongs to ``entity``."""
        return self._cells_by_entity.get(entity, frozenset())

    def rows(self) -> list[str]:
        return ["".join(row).rstrip() for row in self.cells]

    def to_text(self) -> str:
        return "\n".join(self.rows())

    def __str__(self) -> str:
        return self.to_text()


def place_on_grid(lay: LayeredLayout, polylines: Mapping[Segment, list[tuple[float, float]]],
                  mapping: GridMapping) -> MarkGrid:
    """Draw nodes, then every edge in input order under glyph precedence."""
    g = lay.graph

    def point(p):
        return mapping.rows[_k(p[1])], mapping.columns[_k(p[0])]

    vertex_cell = {v: point(pos) for v, pos in lay.positions.items()}
    drawn: list[tuple[int, int, str, object]] = []
    for n in g.nodes:
        r, c = vertex_cell[n]
        drawn.append((r, c, "o", n))
    for e in g.edges:
        for seg in lay.segments[e]:
            pts = [point(p) for p in polylines[seg]]
            r0, c0 = pts[0]
            if isinstance(seg.upper, Dummy):
                drawn.append((r0, c0, "|", e))
            pts[0] = departure_point(r0, c0, *pts[1])
            for (r, c), (r2, c2) in zip(pts, pts[1:]):
                drawn.extend((i, j, m, e) for i, j, m in piece_marks(r, c, r2, c2))

    if not drawn:
        return MarkGrid(np.full((0, 0), " ", dtype="<U1"), {}, {})
    height = max(d[0] for d in drawn) + 1
    width = max(d[1] for d in drawn) + 1
    cells = np.full((height, width), " ", dtype="<U1")
    index: dict[tuple[int, int], set] = defaultdict(set)
    for r, c, mark, ent in drawn:
        assert r >= 0 and c >= 0, "mark outside grid"
        if mark == "o":
            cells[r, c] = "o"
        elif cells[r, c] == "o":
            continue
        else:
            cells[r, c] = resolve_mark(cells[r, c], mark)
        index[(r, c)].add(ent)
    node_cells = {n: vertex_cell[n] for n in g.nodes}
    return MarkGrid(cells, {k: frozenset(v) for k, v in index.items()}, node_cells)


# ---------------------------------------------------------------------------
# labels


def _free(row: list[str], start: int, stop: int) -> bool:
    return all(row[i] == " " for i in range(max(start, 0), min(stop, len(row))))


def place_labels(grid: MarkGrid, labels: Mapping[str, str]) -> MarkGrid:
    """Label every node once, preferring the space right of it, then left.

    Labels that fit neither way go right of the whole graph: the right-most
    such node of a row gets its label there, the others follow it as a
    bracketed list in left-to-right order.
    """
    rows = [list(r) for r in grid.cells]
    marked = np.nonzero((grid.cells != " ").any(axis=0))[0]
    mark_right = int(marked[-1]) if marked.size else -1
    by_row: dict[int, list[str]] = defaultdict(list)
    for n, (r, c) in sorted(grid.node_cells.items(), key=lambda kv: (kv[1], kv[0])):
        by_row[r].append(n)

    placed: dict[str, Label] = {}
    brackets: dict[int, list[str]] = {}
    label_cells: set[tuple[int, int]] = set()
    index = dict(grid.entity_index)

    def write(r: int, col: int, text: str, owner: str | None) -> None:
        row = rows[r]
        if len(row) < col + len(text):
            row.extend(" " * (col + len(text) - len(row)))
        for i, ch in enumerate(text):
            row[col + i] = ch
            label_cells.add((r, col + i))
            if owner is not None and ch != " ":
                index[(r, col + i)] = index.get((r, col + i), frozenset()) | {owner}

    for r in sorted(by_row):
        pending = []
        for n in by_row[r]:
            s = labels.get(n, n)
            c = grid.node_cells[n][1]
            row = rows[r]
            if _free(row, c + 1, c + len(s) + 3):
                write(r, c + 2, s, n)
                placed[n] = Label("right-of-node", r, c + 2, s)
            elif c - 1 - len(s) >= 0 and _free(row, c - 2 - len(s), c):
                write(r, c - 1 - len(s), s, n)
                placed[n] = Label("left-of-node", r, c - 1 - len(s), s)
            else:
                pending.append(n)
        if not pending:
            continue
        *rest, last = pending
        used = [i for i, ch in enumerate(rows[r]) if ch != " "]
        col = max(mark_right, max(used, default=-1)) + 2
        s = labels.get(last, last)
        write(r, col, s, last)
        placed[last] = Label("right-of-graph", r, col, s)
        col += len(s)
        if rest:
            brackets[r] = list(rest)
            write(r, col, " [", None)
            col += 2
            for k, n in enumerate(rest):
                if k:
                    write(r, col, ", ", None)
                    col += 2
                s = labels.get(n, n)
                write(r, col, s, n)
                placed[n] = Label("bracket", r, col, s)
                col += len(s)
            write(r, col, "]", None)

    width = max((len(row) for row in rows), default=0)
    cells = np.full((len(rows), width), " ", dtype="<U1")
    for r, row in enumerate(rows):
        cells[r, :len(row)] = row
    return MarkGrid(cells, index, dict(grid.node_cells), placed, brackets, frozenset(label_cells))


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class Drawing:
    """Every intermediate product of one render, for inspection and metrics."""

    graph: PackageGraph
    layout: LayeredLayout
    crossings: list[Crossing]
    bundle: BundleContext
    bundled: list[Crossing]
    mapping: GridMapping
    grid: MarkGrid

    @property
    def layer_count(self) -> int:
        return len(self.layout.layers)


def draw(g: PackageGraph) -> Drawing:
    lay = layered_layout(g)
    crossings = get_edge_crossings(lay)
    ctx = bundle_context(lay, crossings)
    bundled = get_bundle_positions(lay, crossings, ctx)
    xset = [x for x, _ in lay.positions.values()] + [c.x for c in bundled]
    yset = [y for _, y in lay.positions.values()] + [c.y for c in bundled]
    node_ys = [lay.positions[n][1] for n in g.nodes]
    mapping = to_grid_points(xset, yset, node_ys)
    marks = place_on_grid(lay, segment_polylines(lay, bundled), mapping)
    grid = place_labels(marks, g.labels)
    return Drawing(g, lay, crossings, ctx, bundled, mapping, grid)


def render(g: PackageGraph) -> MarkGrid:
    return draw(g).grid


def render_text(g: PackageGraph) -> str:
    return render(g).to_text()
