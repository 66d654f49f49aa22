"""Oriented bipartite graphs, 2-edge-colourings, and elementary structure.

A graph carries a fixed bipartition (``left``/``right``) and an ordered edge
list of oriented pairs ``(u, v)`` with ``u`` on the left.  The edge list is the
canonical index space: a colouring is a 0/1 vector aligned with it, and every
enumeration in the package reports results in this order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb, inf
from typing import Iterator, Sequence

from .errors import CapExceeded, ParseError
from .config import DEFAULT, RunConfig

Vertex = str
Edge = tuple[Vertex, Vertex]


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with fixed sides and an ordered, oriented edge list.

    Invariants enforced at construction: vertex ids unique across both sides,
    every edge runs left-to-right between declared vertices, no duplicate
    edges, and no isolated vertices.
    """

    left: tuple[Vertex, ...]
    right: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "edges", tuple((u, v) for u, v in self.edges))
        lset, rset = set(self.left), set(self.right)
        if len(lset) != len(self.left) or len(rset) != len(self.right) or (lset & rset):
            raise ValueError("vertex ids must be unique across both sides")
        seen = set()
        touched = set()
        for u, v in self.edges:
            if u not in lset or v not in rset:
                raise ValueError(f"edge ({u!r}, {v!r}) must run from left to right")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u!r}, {v!r})")
            seen.add((u, v))
            touched.add(u)
            touched.add(v)
        isolated = (lset | rset) - touched
        if isolated:
            raise ValueError(f"isolated vertices not allowed: {sorted(isolated)}")

    # -- basic accessors ---------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        """All vertices, left side first; defines the global vertex order."""
        return self.left + self.right

    @cached_property
    def vertex_index(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> dict[Vertex, tuple[Vertex, ...]]:
        nbr: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbr[u].append(v)
            nbr[v].append(u)
        return {v: tuple(ns) for v, ns in nbr.items()}

    @cached_property
    def incident_edges(self) -> dict[Vertex, tuple[int, ...]]:
        inc: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return {v: tuple(ix) for v, ix in inc.items()}

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    @property
    def n_vertices(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def is_left(self, v: Vertex) -> bool:
        return self.vertex_index[v] < len(self.left)

    @cached_property
    def components(self) -> tuple[frozenset[Vertex], ...]:
        seen: set[Vertex] = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)


@dataclass(frozen=True)
class EdgeColouring:
    """0/1 colour vector, index-aligned with a graph's edge list."""

    colours: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))
        if any(c not in (0, 1) for c in self.colours):
            raise ValueError("colours must be 0 or 1")

    def __len__(self) -> int:
        return len(self.colours)

    def __getitem__(self, i: int) -> int:
        return self.colours[i]

    def __iter__(self):
        return iter(self.colours)

    def conjugate(self) -> "EdgeColouring":
        return EdgeColouring(tuple(1 - c for c in self.colours))

    @property
    def weight(self) -> int:
        """Number of colour-1 edges."""
        return sum(self.colours)


def check_aligned(g: BipartiteGraph, a: EdgeColouring) -> None:
    if len(a) != g.n_edges:
        raise ValueError(f"colouring length {len(a)} != edge count {g.n_edges}")


# -- small canonical families used throughout tests and the CLI -------------


def cycle(length: int) -> BipartiteGraph:
    """Even cycle C_length with vertices a0,b0,a1,b1,... and edges in cyclic order."""
    if length < 4 or length % 2:
        raise ValueError("cycle length must be an even integer >= 4")
    half = length // 2
    left = tuple(f"a{i}" for i in range(half))
    right = tuple(f"b{i}" for i in range(half))
    edges = []
    for i in range(half):
        edges.append((f"a{i}", f"b{i}"))
        edges.append((f"a{(i + 1) % half}", f"b{i}"))
    return BipartiteGraph(left, right, tuple(edges))


def complete_bipartite(m: int, n: int) -> BipartiteGraph:
    left = tuple(f"a{i}" for i in range(m))
    right = tuple(f"b{j}" for j in range(n))
    edges = tuple((u, v) for u in left for v in right)
    return BipartiteGraph(left, right, edges)


def star(leaves: int, centre_left: bool = True) -> BipartiteGraph:
    """K_{1,leaves} with the centre on the chosen side."""
    if centre_left:
        return BipartiteGraph(("c",), tuple(f"b{j}" for j in range(leaves)),
                              tuple(("c", f"b{j}") for j in range(leaves)))
    return BipartiteGraph(tuple(f"a{j}" for j in range(leaves)), ("c",),
                          tuple((f"a{j}", "c") for j in range(leaves)))


def path(n_edges: int) -> BipartiteGraph:
    """Path with n_edges edges; vertices alternate sides starting on the left."""
    verts = [f"{'a' if i % 2 == 0 else 'b'}{i // 2}" for i in range(n_edges + 1)]
    left = tuple(v for i, v in enumerate(verts) if i % 2 == 0)
    right = tuple(v for i, v in enumerate(verts) if i % 2 == 1)
    edges = []
    for i in range(n_edges):
        u, v = verts[i], verts[i + 1]
        edges.append((u, v) if i % 2 == 0 else (v, u))
    return BipartiteGraph(left, right, tuple(edges))


# -- structural predicates ---------------------------------------------------


def is_eulerian(g: BipartiteGraph) -> bool:
    """True iff every vertex has even degree."""
    return all(g.degree(v) % 2 == 0 for v in g.vertices)


def is_biregular(g: BipartiteGraph) -> bool:
    """True iff all left degrees agree and all right degrees agree."""
    ldeg = {g.degree(v) for v in g.left}
    rdeg = {g.degree(v) for v in g.right}
    return len(ldeg) <= 1 and len(rdeg) <= 1


def girth(g: BipartiteGraph) -> int | float:
    """Length of a shortest cycle, or math.inf for forests.

    Computed per edge: delete the edge, measure the shortest remaining path
    between its endpoints.  Always even on bipartite input.
    """
    best: int | float = inf
    for i, (u, v) in enumerate(g.edges):
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if dist[x] + 1 >= best:
                continue
            for j in g.incident_edges[x]:
                if j == i:
                    continue
                a, b = g.edges[j]
                y = b if x == a else a
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def disjoint_union(
    parts: Sequence[tuple[BipartiteGraph, EdgeColouring]],
) -> tuple[BipartiteGraph, EdgeColouring]:
    """Side-respecting disjoint union; colour vectors concatenate in order.

    Vertex ids are prefixed with the component index to keep them unique.
    """
    if not parts:
        raise ValueError("need at least one coloured graph")
    left: list[Vertex] = []
    right: list[Vertex] = []
    edges: list[Edge] = []
    colours: list[int] = []
    for k, (g, a) in enumerate(parts):
        check_aligned(g, a)
        tag = f"{k}:"
        left.extend(tag + v for v in g.left)
        right.extend(tag + v for v in g.right)
        edges.extend((tag + u, tag + v) for u, v in g.edges)
        colours.extend(a.colours)
    return BipartiteGraph(tuple(left), tuple(right), tuple(edges)), EdgeColouring(tuple(colours))


@dataclass(frozen=True)
class DegreeStats:
    """Per-vertex in/out splits of a colouring viewed as an orientation.

    Colour 1 directs an edge from its left endpoint to its right endpoint, so
    on the left d_plus counts colour-1 incidences while on the right it counts
    colour-0 incidences (arcs leaving the vertex either way).  The aggregates
    c1, c2 sum d_plus*d_minus over the left and right side respectively, and
    d1, d2 sum C(d_minus, 2) over the left and C(d_plus, 2) over the right.
    """

    degree: dict[Vertex, int]
    d_plus: dict[Vertex, int]
    d_minus: dict[Vertex, int]
    c1: int
    c2: int
    d1: int
    d2: int


def degree_stats(g: BipartiteGraph, a: EdgeColouring) -> DegreeStats:
    check_aligned(g, a)
    d_plus: dict[Vertex, int] = {v: 0 for v in g.vertices}
    d_minus: dict[Vertex, int] = {v: 0 for v in g.vertices}
    for i, (u, v) in enumerate(g.edges):
        if a[i] == 1:
            d_plus[u] += 1
            d_minus[v] += 1
        else:
            d_minus[u] += 1
            d_plus[v] += 1
    deg = {v: g.degree(v) for v in g.vertices}
    c1 = sum(d_plus[v] * d_minus[v] for v in g.left)
    c2 = sum(d_plus[v] * d_minus[v] for v in g.right)
    d1 = sum(comb(d_minus[v], 2) for v in g.left)
    d2 = sum(comb(d_plus[v], 2) for v in g.right)
    return DegreeStats(deg, d_plus, d_minus, c1, c2, d1, d2)


def is_balanced(g: BipartiteGraph, a: EdgeColouring) -> bool:
    """True iff every vertex meets equally many edges of each colour."""
    check_aligned(g, a)
    count = {v: 0 for v in g.vertices}
    for i, (u, v) in enumerate(g.edges):
        d = 1 if a[i] == 1 else -1
        count[u] += d
        count[v] += d
    return all(x == 0 for x in count.values())


def iter_balanced_colourings(
    g: BipartiteGraph, config: RunConfig = DEFAULT
) -> Iterator[EdgeColouring]:
    """Yield all balanced colourings in lexicographic order (0 before 1).

    Backtracks edge by edge with residual per-vertex feasibility bounds, so
    the work is proportional to the search tree rather than 2^e.
    """
    if g.n_edges > config.cap_edges:
        raise CapExceeded("balanced-colouring enumeration", g.n_edges, config.cap_edges)
    if any(g.degree(v) % 2 for v in g.vertices):
        return
    n = g.n_vertices
    half = [g.degree(v) // 2 for v in g.vertices]
    vidx = g.vertex_index
    epairs = [(vidx[u], vidx[v]) for u, v in g.edges]
    remaining = [g.degree(v) for v in g.vertices]
    ones = [0] * n
    m = g.n_edges
    colours = [0] * m

    def feasible(x: int) -> bool:
        return ones[x] <= half[x] and ones[x] + remaining[x] >= half[x]

    def rec(i: int) -> Iterator[EdgeColouring]:
        if i == m:
            yield EdgeColouring(tuple(colours))
            return
        u, v = epairs[i]
        remaining[u] -= 1
        remaining[v] -= 1
        for c in (0, 1):
            ones[u] += c
            ones[v] += c
            colours[i] = c
            if feasible(u) and feasible(v):
                yield from rec(i + 1)
            ones[u] -= c
            ones[v] -= c
        remaining[u] += 1
        remaining[v] += 1

    yield from rec(0)


def enumerate_balanced_colourings(
    g: BipartiteGraph, config: RunConfig = DEFAULT
) -> list[EdgeColouring]:
    """All balanced colourings, deterministic lexicographic order."""
    return list(iter_balanced_colourings(g, config))


def count_two_edge_matchings(g: BipartiteGraph) -> int:
    """Number of unordered pairs of vertex-disjoint edges."""
    return sum(
        1
        for (u1, v1), (u2, v2) in combinations(g.edges, 2)
        if u1 != u2 and v1 != v2
    )


# -- JSON interchange --------------------------------------------------------


def graph_to_json(g: BipartiteGraph) -> dict:
    return {
        "left": list(g.left),
        "right": list(g.right),
        "edges": [[u, v] for u, v in g.edges],
    }


def graph_from_json(data) -> BipartiteGraph:
    try:
        left = tuple(str(v) for v in data["left"])
        right = tuple(str(v) for v in data["right"])
        edges = tuple((str(u), str(v)) for u, v in data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph object: {exc}") from exc
    try:
        return BipartiteGraph(left, right, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def colouring_to_json(a: EdgeColouring) -> dict:
    return {"colours": list(a.colours)}


def colouring_from_json(data) -> EdgeColouring:
    try:
        return EdgeColouring(tuple(int(c) for c in data["colours"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad colouring object: {exc}") from exc


def load_graph(path: str) -> BipartiteGraph:
    return graph_from_json(_load_json(path))


def load_colouring(path: str) -> EdgeColouring:
    return colouring_from_json(_load_json(path))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
