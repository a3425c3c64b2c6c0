import sys
from pathlib import Path

import pydot
import pytest

from mulambda import ir
from mulambda.rewrite import DagContext, reduce

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
SAMPLES = ROOT / "samples"

OMEGA = "((lambda (x) (x x)) (lambda (x) (x x)))"
OMEGA3 = "((lambda (x) (x x x)) (lambda (x) (x x x)))"
PARTIAL_APPLY = "((lambda (x y) x) 42)"

# Lines recorded by test_acceptance.py, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []

sys.setrecursionlimit(20_000)


def reduce_text(text, ctx=None):
    ctx = ctx or DagContext()
    return reduce(ctx, ir.compile_text(text))


def parse_dot(text):
    graphs = pydot.graph_from_dot_data(text)
    assert graphs, "DOT text did not parse"
    return graphs[0]


def dot_vertices(text):
    graph = parse_dot(text)
    return [n for n in graph.get_nodes() if n.get_name() not in ("node", "edge", "graph")]


def dot_edges(text):
    return parse_dot(text).get_edges()


@pytest.fixture
def ctx():
    return DagContext()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
