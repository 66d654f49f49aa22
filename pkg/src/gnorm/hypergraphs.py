"""Uniform hypergraphs: link construction, self-complementarity,
edge-transitivity, codegrees.

The permutation searches are exhaustive backtracking over vertex images with
degree-class pruning, exact at the supported scale (vertex cap 12).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Optional

from .config import DEFAULT, RunConfig
from .errors import CapExceeded, UnknownVertex
from .graphs import BipartiteGraph, EdgeColouring, check_aligned
from .constructions import parse_set_id


@dataclass(frozen=True)
class UniformHypergraph:
    """r-uniform hypergraph on an ordered vertex tuple."""

    vertices: tuple[int, ...]
    r: int
    edges: frozenset[frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges", frozenset(frozenset(e) for e in self.edges)
        )
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != self.r or not e <= vs:
                raise ValueError(f"edge {sorted(e)} is not an r-set of the vertices")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def complement(self) -> "UniformHypergraph":
        all_sets = {frozenset(c) for c in combinations(self.vertices, self.r)}
        return UniformHypergraph(self.vertices, self.r, frozenset(all_sets - self.edges))

    @cached_property
    def degree(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "r": self.r,
            "edges": sorted(sorted(e) for e in self.edges),
        }


def link_hypergraph(
    g: BipartiteGraph, a: EdgeColouring, left_vertex: str
) -> UniformHypergraph:
    """Colour-1 link of a left vertex in a set-inclusion graph.

    The vertex id must be a comma-joined sorted set (the construction
    convention); the link's edges are its colour-1 neighbours as subsets.
    """
    check_aligned(g, a)
    if left_vertex not in g.vertex_index or not g.is_left(left_vertex):
        raise UnknownVertex(f"{left_vertex!r} is not a left vertex")
    base = parse_set_id(left_vertex)
    edges = []
    r = None
    for i, (u, v) in enumerate(g.edges):
        if u != left_vertex:
            continue
        small = parse_set_id(v)
        if not set(small) <= set(base):
            raise ValueError(f"neighbour {v!r} is not a subset of {left_vertex!r}")
        r = len(small)
        if a[i] == 1:
            edges.append(frozenset(small))
    if r is None:
        raise ValueError(f"{left_vertex!r} has no neighbours")
    return UniformHypergraph(tuple(base), r, frozenset(edges))


# -- permutation searches --------------------------------------------------------


def _perm_search(
    h: UniformHypergraph,
    target_edges: frozenset[frozenset[int]],
    config: RunConfig,
    limit: Optional[int] = None,
) -> Iterator[dict[int, int]]:
    """Vertex bijections carrying h's edges onto target_edges.

    Prunes by degree class and, at each placement, checks every edge and
    non-edge of h that lies fully inside the mapped prefix.
    """
    if h.n > config.cap_hypergraph_vertices:
        raise CapExceeded("hypergraph permutation search", h.n,
                          config.cap_hypergraph_vertices)
    if len(h.edges) != len(target_edges):
        return
    tdeg = {v: 0 for v in h.vertices}
    for e in target_edges:
        for v in e:
            tdeg[v] += 1
    if sorted(h.degree.values()) != sorted(tdeg.values()):
        return
    verts = sorted(h.vertices)
    image: dict[int, int] = {}
    used: set[int] = set()
    found = 0

    def consistent(v: int) -> bool:
        mapped = set(image)
        for sub in combinations(sorted(mapped - {v}), h.r - 1):
            e = frozenset(sub) | {v}
            img = frozenset(image[x] for x in e)
            if (e in h.edges) != (img in target_edges):
                return False
        return True

    def rec(i: int) -> Iterator[dict[int, int]]:
        nonlocal found
        if limit is not None and found >= limit:
            return
        if i == len(verts):
            found += 1
            yield dict(image)
            return
        v = verts[i]
        for w in verts:
            if w in used or tdeg[w] != h.degree[v]:
                continue
            image[v] = w
            used.add(w)
            if consistent(v):
                yield from rec(i + 1)
            del image[v]
            used.remove(w)

    yield from rec(0)


def hypergraph_is_self_complementary(
    h: UniformHypergraph, config: RunConfig = DEFAULT
) -> bool:
    """Does some vertex permutation map the edge set onto its complement?"""
    from math import comb

    if h.n > config.cap_hypergraph_vertices:
        raise CapExceeded("hypergraph permutation search", h.n,
                          config.cap_hypergraph_vertices)
    if len(h.edges) * 2 != comb(h.n, h.r):
        return False
    return next(_perm_search(h, h.complement().edges, config, limit=1), None) is not None


def hypergraph_automorphisms(
    h: UniformHypergraph, config: RunConfig = DEFAULT
) -> list[dict[int, int]]:
    return list(_perm_search(h, h.edges, config))


def hypergraph_is_edge_transitive(
    h: UniformHypergraph, config: RunConfig = DEFAULT
) -> bool:
    """Single orbit on edges under the full automorphism group."""
    if not h.edges:
        return True
    autos = hypergraph_automorphisms(h, config)
    edges = sorted(h.edges, key=sorted)
    start = edges[0]
    seen = {start}
    stack = [start]
    while stack:
        e = stack.pop()
        for auto in autos:
            img = frozenset(auto[v] for v in e)
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return len(seen) == len(h.edges)


def codegree_profile(h: UniformHypergraph) -> dict[tuple[int, ...], int]:
    """Edge count through each (r-1)-subset of the vertices."""
    out: dict[tuple[int, ...], int] = {
        tuple(sorted(c)): 0 for c in combinations(h.vertices, h.r - 1)
    }
    for e in h.edges:
        for sub in combinations(sorted(e), h.r - 1):
            out[sub] += 1
    return out
