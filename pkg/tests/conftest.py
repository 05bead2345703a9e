import networkx as nx
import pytest

from cimqig.graphs_dags import Pattern, UndirectedGraph, quartet_tree


def from_nx(g) -> UndirectedGraph:
    return UndirectedGraph.from_edges([(u + 1, v + 1) for u, v in g.edges()], g.number_of_nodes())


def trees_up_to(n_max: int):
    """One tree per isomorphism class on 3..n_max vertices."""
    for n in range(3, n_max + 1):
        for g in nx.nonisomorphic_trees(n):
            yield from_nx(g)


def pattern_from_insets(skeleton: UndirectedGraph, insets: dict) -> Pattern:
    return Pattern(skeleton, frozenset((a, c) for c, ins in insets.items() for a in ins))


# reference numbering of the 15 quartet patterns, by in-sets of the two inner vertices
QUARTET_INSETS = {
    1: {3: (1, 2), 4: (3, 5, 6)},
    2: {3: (1, 2), 4: (3, 6)},
    3: {3: (1, 2), 4: (3, 5)},
    4: {3: (1, 2)},
    5: {4: (3, 5, 6)},
    6: {4: (3, 6)},
    7: {4: (3, 5)},
    8: {},
    9: {4: (5, 6)},
    10: {3: (2, 4)},
    11: {3: (2, 4), 4: (5, 6)},
    12: {3: (1, 4)},
    13: {3: (1, 4), 4: (5, 6)},
    14: {3: (1, 2, 4)},
    15: {3: (1, 2, 4), 4: (5, 6)},
}

QUARTET_GENERATORS = [
    ((1, 6), (2, 5)), ((1, 7), (3, 5)), ((1, 8), (4, 5)),
    ((2, 7), (3, 6)), ((2, 8), (4, 6)), ((3, 8), (4, 7)),
    ((8, 11), (9, 10)), ((8, 13), (9, 12)), ((8, 15), (9, 14)),
    ((10, 13), (11, 12)), ((10, 15), (11, 14)), ((12, 15), (13, 14)),
]


@pytest.fixture
def quartet_numbering():
    t = quartet_tree()
    return {i: pattern_from_insets(t, ins) for i, ins in QUARTET_INSETS.items()}


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and (report.when == "call" or report.failed):
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = report


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda n: int(n.split("_")[2])):
        rep = _ACCEPTANCE[name]
        status = "PASS" if rep.passed else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {name.split('_')[2]:>2}  {name}  ({rep.duration:.2f} s)")
