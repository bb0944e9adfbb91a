import pytest

from psl.corpus import complete, cycle, path, star
from psl.graph import build_graph


@pytest.fixture
def k2():
    return build_graph(["a", "b"], [("a", "b")])


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def c3():
    return cycle(3)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def star3():
    return star(3)


# Hand-written C4 labeling of the strongly uniform like-geometric kind:
# ratios 2, 4, 2, 4 around the cycle v1-v2-v3-v4.
HAND_C4_GRAPH = build_graph(
    ["v1", "v2", "v3", "v4"], [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]
)
HAND_C4_LABELS = {"v1": [1, 2], "v2": [1, 4], "v3": [3, 6], "v4": [5, 20]}


# Lines recorded by the acceptance suite, echoed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
