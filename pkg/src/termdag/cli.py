"""``termdag`` command line entry point.

Exit status: 0 on success, 1 on input or parse errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

from termdag.graph import GraphError
from termdag.parsers import parse
from termdag.render import Drawing, draw
from termdag.tui import TerminalTooSmall, Viewer, start_session

METRIC_KEYS = ("node_count", "edge_count", "layer_count", "grid_rows", "grid_cols",
               "crossing_count", "max_bracket_length", "bracket_lengths")


@dataclass
class RunConfig:
    input: str = "-"
    format: str = "auto"
    mode: str | None = None  # None: interactive on a terminal, static otherwise
    focus: str | None = None
    color: str = "auto"
    strict: bool = False
    metrics_format: str = "kv"


@dataclass
class MetricsReport:
    node_count: int
    edge_count: int
    layer_count: int
    grid_rows: int
    grid_cols: int
    crossing_count: int
    max_bracket_length: int
    bracket_lengths: list[int]

    @classmethod
    def from_drawing(cls, d: Drawing) -> "MetricsReport":
        grid = d.grid
        node_rows = sorted({r for r, _ in grid.node_cells.values()})
        lengths = [len(grid.brackets.get(r, ())) for r in node_rows]
        return cls(len(d.graph), len(d.graph.edges), d.layer_count, grid.height, grid.width,
                   len(d.bundled), max(lengths, default=0), lengths)

    def format(self, style: str = "kv") -> str:
        if style == "json":
            return json.dumps(asdict(self), separators=(",", ":"))
        fields = []
        for key, value in asdict(self).items():
            if isinstance(value, list):
                value = ",".join(map(str, value))
            fields.append(f"{key}={value}")
        return " ".join(fields)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="termdag", description="Draw a dependency DAG as ASCII in the terminal.")
    p.add_argument("input", nargs="?", default="-", help="graph file, or - for standard input")
    p.add_argument("-f", "--format", choices=("auto", "dot", "edges", "json"), default="auto")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--interactive", dest="mode", action="store_const", const="interactive")
    mode.add_argument("--static", dest="mode", action="store_const", const="static",
                      help="print the drawing and exit")
    mode.add_argument("--metrics", dest="mode", action="store_const", const="metrics",
                      help="print layout statistics as one record")
    p.add_argument("--metrics-format", choices=("kv", "json"), default="kv")
    p.add_argument("--focus", metavar="NODE", help="start with NODE searched and highlighted")
    p.add_argument("--color", choices=("auto", "always", "never"), default="auto")
    p.add_argument("--strict", action="store_true", help="JSON input: edges may only name declared nodes")
    return p


def color_style(setting: str, stream=None) -> str | None:
    stream = stream or sys.stdout
    if setting == "never":
        return None
    if setting == "auto" and not stream.isatty():
        return None
    return "reverse" if "NO_COLOR" in os.environ else "color"


def _read_input(path: str) -> tuple[str, str | None]:
    if path == "-":
        return sys.stdin.read(), None
    with open(path, encoding="utf-8") as fh:
        return fh.read(), path


def _attach_tty_stdin() -> bool:
    # keys must come from the terminal when the graph itself arrived on stdin
    try:
        fd = os.open("/dev/tty", os.O_RDONLY)
    except OSError:
        return False
    os.dup2(fd, 0)
    os.close(fd)
    return True


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(args.input, args.format, args.mode, args.focus, args.color,
                    args.strict, args.metrics_format)

    try:
        text, filename = _read_input(cfg.input)
        g = parse(text, cfg.format, filename=filename, strict=cfg.strict)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"termdag: {exc}", file=sys.stderr)
        return 1
    except GraphError as exc:
        print(f"termdag: {cfg.input}: {exc}", file=sys.stderr)
        return 1

    d = draw(g)
    if cfg.mode == "metrics":
        print(MetricsReport.from_drawing(d).format(cfg.metrics_format))
        return 0

    mode = cfg.mode or ("interactive" if sys.stdout.isatty() and sys.stdin.isatty() else "static")
    if mode == "interactive":
        if not sys.stdout.isatty() or (not sys.stdin.isatty() and not _attach_tty_stdin()):
            print("termdag: not a terminal, printing static output", file=sys.stderr)
            mode = "static"
    style = color_style(cfg.color)

    if mode == "interactive":
        try:
            viewer = start_session(g, d.grid, focus=cfg.focus, color=style == "color")
        except TerminalTooSmall as exc:
            print(f"termdag: {exc}", file=sys.stderr)
            viewer = _static_viewer(g, d, cfg.focus)
        _print(viewer.dump(style))
        return 0

    _print(_static_viewer(g, d, cfg.focus).dump(style))
    return 0


def _static_viewer(g, d: Drawing, focus: str | None) -> Viewer:
    viewer = Viewer(g, d.grid, d.grid.height or 1, d.grid.width or 1)
    if focus:
        viewer.search(focus)
        if viewer.message:
            print(f"termdag: {viewer.message}", file=sys.stderr)
    return viewer


def _print(text: str) -> None:
    if text:
        sys.stdout.write(text + "\n")
    sys.stdout.flush()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
