import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from termdag.generate import chain, diamond  # noqa: E402

DIAMOND_DOT = 'digraph G { "target" -> "A"; "target" -> "B"; "A" -> "C"; "B" -> "C"; }'

ACCEPTANCE_RESULTS = []


@pytest.fixture
def diamond_graph():
    return diamond()


@pytest.fixture
def chain_graph():
    return chain("a", "b", "c")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(line)
