import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planecycles.cycles import cycle_from_edges, cycle_from_vertices  # noqa: E402
from planecycles.graph import load_graph  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "planecycles" / "data"


def graph(name: str):
    return load_graph(DATA / f"{name}.txt")


def pool(g, sets, labels=None):
    """Cycles from 1-based edge sets, labelled 1..k unless labels are given."""
    labels = labels or range(1, len(sets) + 1)
    return [cycle_from_edges(g, [e - 1 for e in s], k) for k, s in zip(labels, sets)]


def faces(g, sequences):
    return [cycle_from_vertices(g, [v - 1 for v in s], i + 1) for i, s in enumerate(sequences)]


def edge_sets(cycles):
    return {frozenset(e + 1 for e in c.edge_list) for c in cycles}


@pytest.fixture
def data_dir():
    return DATA


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
