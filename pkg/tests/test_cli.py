import io
import json
import sys

import pytest

from conftest import DIAMOND_DOT
from termdag.cli import MetricsReport, build_parser, color_style, run
from termdag.generate import diamond
from termdag.render import draw, render_text


@pytest.fixture
def diamond_file(tmp_path):
    p = tmp_path / "diamond.dot"
    p.write_text(DIAMOND_DOT)
    return p


def test_static(diamond_file, capsys):
    assert run(["--static", str(diamond_file)]) == 0
    assert capsys.readouterr().out == render_text(diamond()) + "\n"


def test_default_mode_without_terminal_is_static(diamond_file, capsys):
    assert run([str(diamond_file)]) == 0
    assert capsys.readouterr().out == render_text(diamond()) + "\n"


def test_interactive_without_terminal_falls_back(diamond_file, capsys):
    assert run(["--interactive", str(diamond_file)]) == 0
    out = capsys.readouterr()
    assert out.out == render_text(diamond()) + "\n"
    assert "not a terminal" in out.err


def test_cycle_exit_1(tmp_path, capsys):
    p = tmp_path / "cyclic.dot"
    p.write_text('digraph G { "a" -> "b"; "b" -> "a"; }')
    assert run([str(p)]) == 1
    err = capsys.readouterr().err
    assert "cycle detected" in err and "a -> b -> a" in err


def test_missing_file_and_parse_error(tmp_path, capsys):
    assert run([str(tmp_path / "nope.dot")]) == 1
    bad = tmp_path / "bad.dot"
    bad.write_text("digraph { a -> }")
    assert run([str(bad)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_usage_errors_exit_2(diamond_file, capsys):
    assert run(["--bogus"]) == 2
    assert run(["--static", "--metrics", str(diamond_file)]) == 2
    assert run(["-f", "yaml", str(diamond_file)]) == 2


def test_help_exit_0(capsys):
    assert run(["--help"]) == 0
    assert "--metrics" in capsys.readouterr().out


def test_metrics_kv(diamond_file, capsys):
    assert run(["--metrics", str(diamond_file)]) == 0
    line = capsys.readouterr().out.strip()
    fields = dict(kv.split("=") for kv in line.split())
    assert fields["node_count"] == "4"
    assert fields["edge_count"] == "4"
    assert fields["layer_count"] == "3"
    assert fields["max_bracket_length"] == "0"
    assert list(fields) == ["node_count", "edge_count", "layer_count", "grid_rows", "grid_cols",
                            "crossing_count", "max_bracket_length", "bracket_lengths"]


def test_metrics_json(diamond_file, capsys):
    assert run(["--metrics", "--metrics-format", "json", str(diamond_file)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["node_count"] == 4 and report["bracket_lengths"] == [0, 0, 0]


def test_metrics_max_bracket_is_max_over_rows():
    d = draw(diamond())
    r = MetricsReport.from_drawing(d)
    assert r.max_bracket_length == max(r.bracket_lengths, default=0)


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("a b\nb c\n"))
    assert run(["--static", "-"]) == 0
    assert capsys.readouterr().out == "o a\n|\n|\n|\no b\n|\n|\n|\no c\n"


def test_strict_flag(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text('{"nodes":[],"edges":[["a","b"]]}')
    assert run(["--static", str(p)]) == 0
    assert run(["--static", "--strict", str(p)]) == 1


def test_focus_and_color(diamond_file, capsys):
    assert run(["--static", "--focus", "A", "--color", "never", str(diamond_file)]) == 0
    out = capsys.readouterr().out
    assert "\x1b" not in out and out == render_text(diamond()) + "\n"
    assert run(["--static", "--focus", "A", "--color", "always", str(diamond_file)]) == 0
    assert "\x1b[" in capsys.readouterr().out
    assert run(["--static", "--focus", "zz", str(diamond_file)]) == 0
    assert "Pattern not found" in capsys.readouterr().err


def test_color_style(monkeypatch):
    class Tty(io.StringIO):
        def isatty(self):
            return True

    monkeypatch.delenv("NO_COLOR", raising=False)
    assert color_style("never", Tty()) is None
    assert color_style("auto", io.StringIO()) is None
    assert color_style("auto", Tty()) == "color"
    monkeypatch.setenv("NO_COLOR", "1")
    assert color_style("always", io.StringIO()) == "reverse"


def test_parser_flags():
    args = build_parser().parse_args([])
    assert args.input == "-" and args.format == "auto" and args.color == "auto"


def test_static_output_is_byte_identical(diamond_file, capsys):
    outs = []
    for _ in range(3):
        run(["--static", str(diamond_file)])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] == outs[2]
