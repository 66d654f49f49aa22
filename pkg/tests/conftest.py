import pytest

from gnorm.graphs import BipartiteGraph, EdgeColouring, complete_bipartite, cycle


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def alt4():
    return EdgeColouring((1, 0, 1, 0))


@pytest.fixture
def mono4():
    return EdgeColouring((1, 1, 1, 1))


@pytest.fixture
def k23():
    return complete_bipartite(2, 3)


def small_bipartite(edge_mask: int, m: int = 3, n: int = 3) -> BipartiteGraph | None:
    """Subgraph of K_{m,n} given by an edge bitmask, or None if a chosen
    vertex would be isolated.  Shared generator for property tests."""
    pairs = [(f"a{i}", f"b{j}") for i in range(m) for j in range(n)]
    edges = [pairs[i] for i in range(len(pairs)) if edge_mask >> i & 1]
    if not edges:
        return None
    left = tuple(sorted({u for u, _ in edges}))
    right = tuple(sorted({v for _, v in edges}))
    return BipartiteGraph(left, right, tuple(edges))
