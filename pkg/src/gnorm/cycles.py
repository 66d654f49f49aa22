"""Cycle enumeration and colour-pattern analysis.

Simple cycles of a fixed even length are enumerated exactly, deduplicated up
to rotation and reflection by anchoring each cycle at its smallest vertex.
On top of that sit the alternating-cycle counts kappa_l, the four-pattern
classification of 4-cycles, the girth-cycle colour law, colour-scan
maximality checks, and the GF(2) cycle-space tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import inf
from typing import Optional

from .config import DEFAULT, RunConfig
from .errors import CapExceeded
from .graphs import (
    BipartiteGraph,
    EdgeColouring,
    check_aligned,
    girth,
)


@dataclass(frozen=True)
class CycleSet:
    """Simple cycles of one fixed length.

    ``edge_cycles`` lists each cycle's edge indices in cyclic order;
    ``vertex_cycles`` lists the vertices in matching order starting from the
    anchor (smallest vertex index, second vertex smaller than last).
    """

    length: int
    edge_cycles: tuple[tuple[int, ...], ...]
    vertex_cycles: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.edge_cycles)

    def to_json(self) -> dict:
        return {"length": self.length, "cycles": [list(c) for c in self.vertex_cycles]}


@dataclass(frozen=True)
class FourCycleProfile:
    """Counts of the four colour patterns a 4-cycle can show.

    c1 alternating, c2 monochromatic, c3 adjacent pair of each colour,
    c4 three edges of one colour and one of the other.
    """

    c1: int
    c2: int
    c3: int
    c4: int

    @property
    def total(self) -> int:
        return self.c1 + self.c2 + self.c3 + self.c4

    @property
    def pattern_score(self) -> int:
        return self.c1 + self.c3 - self.c2

    def to_json(self) -> dict:
        return {"c1": self.c1, "c2": self.c2, "c3": self.c3, "c4": self.c4}


def enumerate_cycles(
    g: BipartiteGraph, length: int, config: RunConfig = DEFAULT
) -> CycleSet:
    """All simple cycles of exactly the given even length, in canonical order.

    DFS from each anchor vertex visits only larger-indexed vertices, and the
    direction is fixed by requiring the second vertex to precede the last.
    """
    if length < 4 or length % 2:
        raise ValueError("cycle length must be an even integer >= 4")
    n = g.n_vertices
    vidx = g.vertex_index
    verts = g.vertices
    adj: list[list[int]] = [[] for _ in range(n)]
    edge_of: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(g.edges):
        iu, iv = vidx[u], vidx[v]
        adj[iu].append(iv)
        adj[iv].append(iu)
        edge_of[(iu, iv)] = i
        edge_of[(iv, iu)] = i
    for ns in adj:
        ns.sort()

    found: list[tuple[int, ...]] = []
    path = [0] * length
    on_path = [False] * n

    def extend(depth: int, anchor: int):
        cur = path[depth - 1]
        for w in adj[cur]:
            if depth == length:
                if w == anchor and path[1] < path[-1]:
                    found.append(tuple(path))
                    if len(found) > config.cap_cycles:
                        raise CapExceeded("cycle enumeration", len(found),
                                          config.cap_cycles)
                continue
            if w <= anchor or on_path[w]:
                continue
            path[depth] = w
            on_path[w] = True
            extend(depth + 1, anchor)
            on_path[w] = False

    for a in range(n):
        path[0] = a
        on_path[a] = True
        extend(1, a)
        on_path[a] = False

    edge_cycles = []
    vertex_cycles = []
    for cyc in found:
        edge_cycles.append(
            tuple(edge_of[(cyc[i], cyc[(i + 1) % length])] for i in range(length))
        )
        vertex_cycles.append(tuple(verts[i] for i in cyc))
    return CycleSet(length, tuple(edge_cycles), tuple(vertex_cycles))


def _is_alternating(colours: tuple[int, ...], cyc: tuple[int, ...]) -> bool:
    k = len(cyc)
    return all(colours[cyc[i]] != colours[cyc[(i + 1) % k]] for i in range(k))


def kappa_alternating(
    g: BipartiteGraph, a: EdgeColouring, length: int, config: RunConfig = DEFAULT
) -> int:
    """Number of colour-alternating cycles of the given length."""
    check_aligned(g, a)
    cs = enumerate_cycles(g, length, config)
    return sum(1 for cyc in cs.edge_cycles if _is_alternating(a.colours, cyc))


def _classify_cycle(colours, cyc) -> int:
    """Pattern of one 4-cycle: 1 alternating, 2 mono, 3 adjacent pairs, 4 three-one."""
    c = [colours[i] for i in cyc]
    s = sum(c)
    if s in (0, 4):
        return 2
    if s in (1, 3):
        return 4
    return 1 if c[0] == c[2] else 3


def classify_4cycles(
    g: BipartiteGraph, a: EdgeColouring, config: RunConfig = DEFAULT
) -> FourCycleProfile:
    check_aligned(g, a)
    cs = enumerate_cycles(g, 4, config)
    counts = [0, 0, 0, 0]
    for cyc in cs.edge_cycles:
        counts[_classify_cycle(a.colours, cyc) - 1] += 1
    return FourCycleProfile(*counts)


@dataclass(frozen=True)
class LawCheck:
    ok: bool
    witness: Optional[tuple[str, ...]]

    def __bool__(self) -> bool:
        return self.ok


def check_girth_cycle_law(
    g: BipartiteGraph, a: EdgeColouring, config: RunConfig = DEFAULT
) -> LawCheck:
    """Every girth cycle is monochromatic or carries g/2 edges of each colour."""
    check_aligned(g, a)
    gval = girth(g)
    if gval == inf:
        raise ValueError("girth-cycle law needs a graph with a cycle")
    cs = enumerate_cycles(g, int(gval), config)
    half = int(gval) // 2
    for ec, vc in zip(cs.edge_cycles, cs.vertex_cycles):
        ones = sum(a[i] for i in ec)
        if ones not in (0, half, int(gval)):
            return LawCheck(False, vc)
    return LawCheck(True, None)


def check_two_path_law(g: BipartiteGraph, a: EdgeColouring) -> LawCheck:
    """If some 2-edge path between v1 and v2 is monochromatic, all of them are.

    The witness is the violating 4-tuple (v1, u, v2, w): a same-colour cherry
    through u next to a bi-chromatic one through w.
    """
    check_aligned(g, a)
    colour_of = {}
    for i, (u, v) in enumerate(g.edges):
        colour_of[(u, v)] = a[i]
        colour_of[(v, u)] = a[i]
    for side in (g.left, g.right):
        # 2-edge paths join vertices on the same side through the other side
        common: dict[tuple[str, str], list[str]] = {}
        for mid in (g.right if side is g.left else g.left):
            nbrs = sorted(g.adjacency[mid], key=g.vertex_index.get)
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    common.setdefault((nbrs[i], nbrs[j]), []).append(mid)
        for (v1, v2), mids in common.items():
            mono = [m for m in mids if colour_of[(m, v1)] == colour_of[(m, v2)]]
            mixed = [m for m in mids if colour_of[(m, v1)] != colour_of[(m, v2)]]
            if mono and mixed:
                return LawCheck(False, (v1, mono[0], v2, mixed[0]))
    return LawCheck(True, None)


# -- colour-scan maximality ----------------------------------------------------


@dataclass(frozen=True)
class MaximalityCheck:
    is_max: bool
    value: int
    best_value: int
    best_colouring: EdgeColouring

    def __bool__(self) -> bool:
        return self.is_max


def _scan_colourings(g: BipartiteGraph, score, config: RunConfig):
    """Maximise a colouring score over all 2^e colourings.

    Only colourings with first edge colour 1 are generated; the score is
    assumed conjugation-invariant, so the other half is covered implicitly.
    Returns (best_value, lexicographically least maximiser).
    """
    m = g.n_edges
    if m > config.cap_colourings:
        raise CapExceeded("colouring scan", m, config.cap_colourings)
    if m == 0:
        empty = EdgeColouring(())
        return score(empty), empty
    best = None
    best_col = None
    for rest in product((0, 1), repeat=m - 1):
        col = EdgeColouring((1,) + rest)
        val = score(col)
        for cand in (col.conjugate(), col):
            # conjugate first: it starts with 0, keeping lexicographic ties right
            if best is None or val > best or (val == best and cand.colours < best_col.colours):
                best, best_col = val, cand
    return best, best_col


def maximizes_kappa_girth(
    g: BipartiteGraph, a: EdgeColouring, config: RunConfig = DEFAULT
) -> MaximalityCheck:
    """Does the colouring attain the maximal number of alternating girth cycles?"""
    check_aligned(g, a)
    gval = girth(g)
    if gval == inf:
        raise ValueError("needs a graph with a cycle")
    cs = enumerate_cycles(g, int(gval), config)

    def score(col: EdgeColouring) -> int:
        return sum(1 for cyc in cs.edge_cycles if _is_alternating(col.colours, cyc))

    best, best_col = _scan_colourings(g, score, config)
    mine = score(a)
    return MaximalityCheck(mine >= best, mine, best, best_col)


def maximizes_c1_plus_c3_minus_c2(
    g: BipartiteGraph, a: EdgeColouring, config: RunConfig = DEFAULT
) -> MaximalityCheck:
    """Does the colouring maximise c1 + c3 - c2 over all colourings?"""
    check_aligned(g, a)
    cs = enumerate_cycles(g, 4, config)

    def score(col: EdgeColouring) -> int:
        counts = [0, 0, 0, 0]
        for cyc in cs.edge_cycles:
            counts[_classify_cycle(col.colours, cyc) - 1] += 1
        return counts[0] + counts[2] - counts[1]

    best, best_col = _scan_colourings(g, score, config)
    mine = score(a)
    return MaximalityCheck(mine >= best, mine, best, best_col)


# -- cycle space ----------------------------------------------------------------


def four_cycles_generate_cycle_space(
    g: BipartiteGraph, config: RunConfig = DEFAULT
) -> bool:
    """GF(2) span of the 4-cycle edge vectors has full cycle-space rank."""
    cs = enumerate_cycles(g, 4, config)
    target = g.n_edges - g.n_vertices + len(g.components)
    if target == 0:
        return True
    rank = 0
    basis: list[int] = []
    for cyc in cs.edge_cycles:
        vec = 0
        for i in cyc:
            vec |= 1 << i
        for b in basis:
            vec = min(vec, vec ^ b)
        if vec:
            basis.append(vec)
            basis.sort(reverse=True)
            rank += 1
            if rank == target:
                return True
    return rank == target


def potential_colouring(
    g: BipartiteGraph, a: EdgeColouring
) -> Optional[dict[str, int]]:
    """Vertex 2-colouring beta with a(uv) = beta(u) + beta(v) mod 2, if any.

    Solved by propagation per component; among the two solutions per
    component the one assigning 0 to the component's smallest vertex is
    returned, which makes the overall answer lexicographically least.
    """
    check_aligned(g, a)
    colour_of = {}
    for i, (u, v) in enumerate(g.edges):
        colour_of[(u, v)] = a[i]
        colour_of[(v, u)] = a[i]
    beta: dict[str, int] = {}
    for comp in g.components:
        root = min(comp, key=g.vertex_index.get)
        beta[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                want = (beta[x] + colour_of[(x, y)]) % 2
                if y in beta:
                    if beta[y] != want:
                        return None
                else:
                    beta[y] = want
                    stack.append(y)
    return beta
