"""Full-screen interactive viewer.

:class:`Viewer` holds all interaction logic and never touches the terminal,
so it can be driven headlessly. :func:`start_session` wraps it in a curses
event loop.

Keys: ``/`` search (Enter to run, Esc to cancel), ``n``/``p`` next/previous
node, arrows or ``w a s d`` to pan, ``t`` to toggle between direct and
reachable highlighting, ``q`` to quit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from termdag.graph import PackageGraph
from termdag.highlight import HighlightSet, compute_highlight, emit
from termdag.render import MarkGrid

PAN_ROWS = 1
PAN_COLS = 2
MIN_ROWS = 3
MIN_COLS = 10

DIRECTIONS = {
    "w": "up", "up": "up",
    "s": "down", "down": "down",
    "a": "left", "left": "left",
    "d": "right", "right": "right",
}


class TerminalTooSmall(RuntimeError):
    pass


@dataclass(frozen=True)
class ViewState:
    pan_row: int = 0
    pan_col: int = 0
    selected: str | None = None
    mode: str = "off"
    query: str | None = None
    matches: tuple[str, ...] = ()
    match_index: int | None = None


class Viewer:
    """Interaction state over one rendered graph.

    ``height`` and ``width`` describe the viewport available to the graph
    (the status line is not included).
    """

    def __init__(self, graph: PackageGraph, grid: MarkGrid, height: int = 23, width: int = 80):
        self.graph = graph
        self.grid = grid
        self.height = max(1, height)
        self.width = max(1, width)
        self.state = ViewState()
        self.message = ""
        self.grid_order = tuple(sorted(grid.node_cells, key=lambda n: (grid.node_cells[n], n)))

    # -- geometry -------------------------------------------------------

    def resize(self, height: int, width: int) -> None:
        self.height, self.width = max(1, height), max(1, width)
        self.state = self._clamp(self.state)

    @property
    def max_pan(self) -> tuple[int, int]:
        return (max(0, self.grid.height - self.height), max(0, self.grid.width - self.width))

    def _clamp(self, st: ViewState) -> ViewState:
        max_row, max_col = self.max_pan
        return replace(st, pan_row=min(max(st.pan_row, 0), max_row),
                       pan_col=min(max(st.pan_col, 0), max_col))

    def _reveal(self, st: ViewState) -> ViewState:
        if st.selected is None:
            return st
        r, c = self.grid.node_cells[st.selected]
        row, col = st.pan_row, st.pan_col
        if r < row:
            row = r
        elif r >= row + self.height:
            row = r - self.height + 1
        if c < col:
            col = c
        elif c >= col + self.width:
            col = c - self.width + 1
        return self._clamp(replace(st, pan_row=row, pan_col=col))

    def visible(self, cell: tuple[int, int]) -> bool:
        r, c = cell
        st = self.state
        return st.pan_row <= r < st.pan_row + self.height and st.pan_col <= c < st.pan_col + self.width

    # -- operations -----------------------------------------------------

    def _select(self, st: ViewState, node: str) -> ViewState:
        mode = st.mode if st.mode != "off" else "direct"
        return self._reveal(replace(st, selected=node, mode=mode))

    def search(self, query: str) -> ViewState:
        """Case-insensitive substring search over labels; empty query clears."""
        self.message = ""
        if not query:
            self.state = replace(self.state, selected=None, mode="off", query=None,
                                 matches=(), match_index=None)
            return self.state
        q = query.lower()
        matches = tuple(n for n in self.grid_order if q in self.graph.label(n).lower())
        if not matches:
            self.message = f"Pattern not found: {query}"
            return self.state
        # an exact label match wins the initial selection
        first = next((i for i, n in enumerate(matches) if self.graph.label(n).lower() == q), 0)
        st = replace(self.state, query=query, matches=matches, match_index=first)
        self.state = self._select(st, matches[first])
        return self.state

    def _step(self, delta: int) -> ViewState:
        self.message = ""
        st = self.state
        if st.query:
            i = (st.match_index + delta) % len(st.matches)
            self.state = self._select(replace(st, match_index=i), st.matches[i])
            return self.state
        if not self.grid_order:
            return st
        if st.selected is None:
            i = 0 if delta > 0 else len(self.grid_order) - 1
        else:
            i = (self.grid_order.index(st.selected) + delta) % len(self.grid_order)
        self.state = self._select(st, self.grid_order[i])
        return self.state

    def next_match(self) -> ViewState:
        return self._step(1)

    def prev_match(self) -> ViewState:
        return self._step(-1)

    def pan(self, direction: str) -> ViewState:
        dr, dc = {"up": (-PAN_ROWS, 0), "down": (PAN_ROWS, 0),
                  "left": (0, -PAN_COLS), "right": (0, PAN_COLS)}[direction]
        st = self.state
        self.state = self._clamp(replace(st, pan_row=st.pan_row + dr, pan_col=st.pan_col + dc))
        return self.state

    def toggle_mode(self) -> ViewState:
        st = self.state
        if st.selected is None:
            self.message = "No node selected"
            return st
        self.message = ""
        self.state = replace(st, mode="reachable" if st.mode == "direct" else "direct")
        return self.state

    def handle_key(self, key: str) -> bool:
        """Dispatch one normalized key name. Returns False on quit."""
        if key == "q":
            return False
        if key in DIRECTIONS:
            self.pan(DIRECTIONS[key])
        elif key == "n":
            self.next_match()
        elif key == "p":
            self.prev_match()
        elif key == "t":
            self.toggle_mode()
        return True

    # -- output ---------------------------------------------------------

    @property
    def highlight(self) -> HighlightSet | None:
        st = self.state
        if st.selected is None or st.mode == "off":
            return None
        return compute_highlight(self.graph, self.grid, st.selected, st.mode)

    def dump(self, style: str | None = None) -> str:
        """All rows of the grid in the current highlight state."""
        return emit(self.grid, self.highlight, style)

    def status(self) -> str:
        if self.message:
            return self.message
        st = self.state
        parts = ["/:search n/p:next/prev t:toggle q:quit"]
        if st.selected is not None:
            parts.append(f"[{st.mode}] {self.graph.label(st.selected)}")
        if st.query:
            parts.append(f"match {st.match_index + 1}/{len(st.matches)}")
        return "  ".join(parts)


def check_invariants(v: Viewer) -> list[str]:
    """Violated ViewState invariants, empty when the state is consistent."""
    st = v.state
    problems = []
    max_row, max_col = v.max_pan
    if not (0 <= st.pan_row <= max_row and 0 <= st.pan_col <= max_col):
        problems.append(f"pan out of bounds: {(st.pan_row, st.pan_col)} max {(max_row, max_col)}")
    if st.match_index is not None and not (st.matches and 0 <= st.match_index < len(st.matches)):
        problems.append("match_index without matches")
    if st.query and st.selected not in st.matches:
        problems.append("selection outside active matches")
    if st.mode not in ("off", "direct", "reachable"):
        problems.append(f"bad mode {st.mode!r}")
    if st.mode != "off" and st.selected is None:
        problems.append("highlight mode without selection")
    if st.selected is not None and st.selected not in v.graph:
        problems.append("unknown selection")
    return problems


# ---------------------------------------------------------------------------
# curses front end


def _key_name(ch) -> str | None:
    import curses

    names = {curses.KEY_UP: "up", curses.KEY_DOWN: "down",
             curses.KEY_LEFT: "left", curses.KEY_RIGHT: "right"}
    if isinstance(ch, str):
        return ch if len(ch) == 1 else None
    return names.get(ch)


def _paint(scr, viewer: Viewer, attrs: dict[str, int], prompt: str | None = None) -> None:
    import curses

    scr.erase()
    st = viewer.state
    hl = viewer.highlight
    cells = hl.cells if hl else frozenset()
    dim = hl is not None and hl.mode == "reachable"
    grid = viewer.grid
    for y in range(min(viewer.height, grid.height - st.pan_row)):
        r = st.pan_row + y
        row = grid.cells[r]
        for x in range(min(viewer.width, grid.width - st.pan_col)):
            c = st.pan_col + x
            ch = row[c]
            if ch == " ":
                continue
            attr = attrs["hi"] if (r, c) in cells else (attrs["dim"] if dim else curses.A_NORMAL)
            try:
                scr.addstr(y, x, ch, attr)
            except curses.error:
                pass
    line = prompt if prompt is not None else viewer.status()
    try:
        scr.addstr(viewer.height, 0, line[: viewer.width - 1], curses.A_REVERSE if prompt is None else 0)
    except curses.error:
        pass
    scr.refresh()


def _read_query(scr, viewer: Viewer, attrs) -> str | None:
    buf = ""
    while True:
        _paint(scr, viewer, attrs, "/" + buf)
        ch = scr.get_wch()
        if ch in ("\n", "\r") or ch == 343:  # KEY_ENTER
            return buf
        if ch == "\x1b":
            return None
        if ch in ("\b", "\x7f") or ch == 263:  # KEY_BACKSPACE
            buf = buf[:-1]
        elif isinstance(ch, str) and ch.isprintable():
            buf += ch


def start_session(graph: PackageGraph, grid: MarkGrid, focus: str | None = None,
                  color: bool = True) -> Viewer:
    """Run the interactive loop until ``q``; returns the final viewer.

    Raises :class:`TerminalTooSmall` before drawing anything if the terminal
    is under the minimum size.
    """
    import curses

    def loop(scr) -> Viewer:
        rows, cols = scr.getmaxyx()
        if rows < MIN_ROWS or cols < MIN_COLS:
            raise TerminalTooSmall(f"terminal too small ({cols}x{rows}), need {MIN_COLS}x{MIN_ROWS}")
        curses.curs_set(0)
        attrs = {"hi": curses.A_BOLD | curses.A_REVERSE, "dim": curses.A_DIM}
        if color and curses.has_colors() and "NO_COLOR" not in os.environ:
            curses.start_color()
            curses.use_default_colors()
            curses.init_pair(1, curses.COLOR_YELLOW, -1)
            attrs["hi"] = curses.A_BOLD | curses.color_pair(1)
        viewer = Viewer(graph, grid, rows - 1, cols)
        if focus:
            viewer.search(focus)
        while True:
            _paint(scr, viewer, attrs)
            ch = scr.get_wch()
            if ch == curses.KEY_RESIZE:
                rows, cols = scr.getmaxyx()
                viewer.resize(rows - 1, cols)
                continue
            key = _key_name(ch)
            if key == "/":
                query = _read_query(scr, viewer, attrs)
                if query is not None:
                    viewer.search(query)
                continue
            if key is not None and not viewer.handle_key(key):
                return viewer

    return curses.wrapper(loop)
