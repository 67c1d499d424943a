from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest

from bisplit_dbe.graph import Graph, parse_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name: str) -> Graph:
    return parse_graph((FIXTURES / name).read_text())


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def oracle_lines(g: Graph) -> dict:
    """Lines straight from the definition, with networkx distances."""
    d = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    out = {}
    for a, b in combinations(range(g.n), 2):
        members = {a, b}
        for v in range(g.n):
            if v in (a, b):
                continue
            ab, av, bv = d[a][b], d[a][v], d[b][v]
            if ab + bv == av or ab + av == bv or av + bv == ab:
                members.add(v)
        out[(a, b)] = frozenset(members)
    return out


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, list(combinations(range(n), 2)))


@pytest.fixture
def full_graph() -> Graph:
    return load("exceptional-full.txt")


@pytest.fixture
def partial_graph() -> Graph:
    return load("exceptional-partial.txt")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
