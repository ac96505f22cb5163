"""Shared graphs, networkx bridges and hypothesis strategies."""

from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sepolytope.graph import Graph, is_connected, is_two_connected

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# five vertices, a 5-cycle with one chord
CHORDED_PENTAGON = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3)])
# eight vertices, cyclomatic number three
EIGHT_VERTEX = Graph.from_edges(
    8, [(1, 2), (1, 6), (1, 7), (2, 3), (3, 4), (3, 8), (4, 5), (5, 6), (6, 7), (7, 8)]
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: k + 1 for k, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges])


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 6) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 6) -> Graph:
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(2, n + 1):
        u = draw(st.integers(1, v - 1))
        edges.add((u, v))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in edges]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges |= {p for p, k in zip(pairs, keep) if k}
    perm = draw(st.permutations(range(1, n + 1)))
    g = Graph.from_edges(n, edges).relabel({v: perm[v - 1] for v in range(1, n + 1)})
    assert is_connected(g)
    return g


@st.composite
def two_connected_graphs(draw, min_n: int = 3, max_n: int = 6) -> Graph:
    """A Hamiltonian cycle plus chords, relabelled."""
    n = draw(st.integers(min_n, max_n))
    edges = {(v, v + 1) for v in range(1, n)} | {(1, n)}
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 2, n + 1) if (u, v) != (1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges |= {p for p, k in zip(pairs, keep) if k}
    perm = draw(st.permutations(range(1, n + 1)))
    g = Graph.from_edges(n, edges).relabel({v: perm[v - 1] for v in range(1, n + 1)})
    assert is_two_connected(g)
    return g


@pytest.fixture
def chorded_pentagon() -> Graph:
    return CHORDED_PENTAGON


@pytest.fixture
def eight_vertex() -> Graph:
    return EIGHT_VERTEX


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
