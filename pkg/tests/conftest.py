import pytest

from rotorduality.oracle import corpus, enumerate_spanning_trees, planar_corpus
from rotorduality.ribbon import RibbonGraph

CORPUS = corpus()
PLANAR = planar_corpus()


@pytest.fixture(scope="session")
def graphs():
    return CORPUS


@pytest.fixture(scope="session")
def fig1():
    return CORPUS["fig1"]


@pytest.fixture(scope="session")
def digon():
    return CORPUS["digon"]


@pytest.fixture(scope="session")
def triangle():
    return CORPUS["triangle"]


@pytest.fixture(scope="session")
def path3():
    return RibbonGraph(
        ["u", "v", "w"],
        [("uv", "u", "v"), ("vw", "v", "w")],
        {"u": ["uv"], "v": ["uv", "vw"], "w": ["vw"]},
        name="path3",
    )


_TREES = {}


def trees_of(g):
    if g.name not in _TREES:
        _TREES[g.name] = enumerate_spanning_trees(g)
    return _TREES[g.name]


def small(names=None, limit=16):
    """Names of corpus graphs with at most ``limit`` spanning trees."""
    pool = CORPUS if names is None else {n: CORPUS[n] for n in names}
    return [n for n, g in pool.items() if len(trees_of(g)) <= limit]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("tests.test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
