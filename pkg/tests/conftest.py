import sys

import pytest

from graphtoeplitz.graph import parse_graph

LOOP = "vertex v\nedge f v v\n"
EDGE = "vertex u\nvertex v\nedge f u v\n"
CYCLE2 = "vertex u\nvertex v\nedge f u v\nedge g v u\n"
# two vertices, three edges: a loop at u, u -> v and v -> u
THETA = "vertex u\nvertex v\nedge a u u\nedge b u v\nedge c v u\n"
BOUQUET3 = "vertex v\nedge a v v\nedge b v v\nedge c v v\n"

GRAPH_TEXTS = {"loop": LOOP, "edge": EDGE, "cycle2": CYCLE2, "theta": THETA, "bouquet3": BOUQUET3}


@pytest.fixture
def loop():
    return parse_graph(LOOP)


@pytest.fixture
def edge():
    return parse_graph(EDGE)


@pytest.fixture
def cycle2():
    return parse_graph(CYCLE2)


@pytest.fixture
def theta():
    return parse_graph(THETA)


@pytest.fixture(params=sorted(GRAPH_TEXTS))
def small_graph(request):
    return parse_graph(GRAPH_TEXTS[request.param])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
