"""Graph and tournament families: hypercubes with their two canonical
balanced colourings, 1-subdivisions, set-inclusion and bipartite Kneser
graphs, and circulant / quadratic-residue tournaments.

Vertex id conventions: hypercube vertices are bitstrings (coordinate 0 is the
leftmost character), subdivision vertices are "u|v" for the original edge
{u, v}, k-sets are comma-joined sorted integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .config import DEFAULT, RunConfig
from .errors import (
    CapExceeded,
    DegenerateParameters,
    EvenOrder,
    NotBalanced,
    NotPrime,
    OddDimension,
    ParseError,
    WrongResidueClass,
)
from .graphs import BipartiteGraph, EdgeColouring, check_aligned


# -- hypercubes ----------------------------------------------------------------


def _bits(v: int, d: int) -> str:
    return format(v, f"0{d}b")[::-1]  # coordinate j = character j


def hypercube(d: int, config: RunConfig = DEFAULT) -> BipartiteGraph:
    """Q_d on bitstrings; even-weight vertices form the left side.

    Edges are ordered by (smaller endpoint value, flipped coordinate).
    """
    if d < 1:
        raise DegenerateParameters("hypercube dimension must be >= 1")
    if d > 10:
        raise CapExceeded("hypercube construction", d, 10)
    left = tuple(_bits(v, d) for v in range(1 << d) if bin(v).count("1") % 2 == 0)
    right = tuple(_bits(v, d) for v in range(1 << d) if bin(v).count("1") % 2 == 1)
    edges = []
    for v in range(1 << d):
        for j in range(d):
            w = v ^ (1 << j)
            if v < w:
                even, odd = (v, w) if bin(v).count("1") % 2 == 0 else (w, v)
                edges.append((_bits(even, d), _bits(odd, d)))
    return BipartiteGraph(left, right, tuple(edges))


def _edge_direction(u: str, v: str) -> int:
    """Coordinate in which two hypercube vertices differ."""
    diffs = [j for j, (x, y) in enumerate(zip(u, v)) if x != y]
    if len(diffs) != 1:
        raise ValueError("not a hypercube edge")
    return diffs[0]


def hypercube_alpha(d: int, config: RunConfig = DEFAULT) -> EdgeColouring:
    """Direction colouring of Q_d (d even): first d/2 axes get colour 1."""
    if d % 2:
        raise OddDimension("direction colouring needs an even dimension")
    g = hypercube(d, config)
    half = d // 2
    return EdgeColouring(
        tuple(1 if _edge_direction(u, v) < half else 0 for u, v in g.edges)
    )


def hypercube_beta(d: int, config: RunConfig = DEFAULT) -> EdgeColouring:
    """The F2-formula colouring of Q_d (d even): no monochromatic 4-cycle.

    For the edge {x, x + e_j} with m = d/2:
    weight(x) + x_j + x_{j+m} for j < m, weight(x) + x_j + x_{j-m} + 1 else,
    all mod 2; the expression is invariant under swapping the endpoints.
    """
    if d % 2:
        raise OddDimension("this colouring needs an even dimension")
    g = hypercube(d, config)
    m = d // 2
    colours = []
    for u, v in g.edges:
        j = _edge_direction(u, v)
        x = u
        w = x.count("1")
        if j < m:
            c = (w + int(x[j]) + int(x[j + m])) % 2
        else:
            c = (w + int(x[j]) + int(x[j - m]) + 1) % 2
        colours.append(c)
    return EdgeColouring(tuple(colours))


# -- subdivisions ---------------------------------------------------------------


def subdivide(
    vertices: Sequence[str], edges: Sequence[tuple[str, str]]
) -> BipartiteGraph:
    """1-subdivision of a simple graph: branch vertices on the left,
    subdivision vertices ("u|v", endpoints sorted) on the right."""
    vertices = tuple(str(v) for v in vertices)
    norm = []
    seen = set()
    for u, v in edges:
        u, v = str(u), str(v)
        if u == v:
            raise ValueError("loops not allowed")
        key = (u, v) if u <= v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        norm.append(key)
    mids = tuple(f"{u}|{v}" for u, v in norm)
    out = []
    for (u, v), mid in zip(norm, mids):
        out.append((u, mid))
        out.append((v, mid))
    return BipartiteGraph(vertices, mids, tuple(out))


def subdivided_complete(n: int) -> BipartiteGraph:
    if n < 2:
        raise DegenerateParameters("need n >= 2")
    verts = [str(i) for i in range(n)]
    edges = [(str(i), str(j)) for i in range(n) for j in range(i + 1, n)]
    return subdivide(verts, edges)


# -- tournaments ----------------------------------------------------------------


@dataclass(frozen=True)
class Tournament:
    """Orientation of K_n on vertices 0..n-1; exactly one arc per pair."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted((int(x), int(y)) for x, y in self.arcs)))
        seen = set()
        for x, y in self.arcs:
            if not (0 <= x < self.n and 0 <= y < self.n) or x == y:
                raise ValueError(f"bad arc ({x}, {y})")
            key = frozenset((x, y))
            if key in seen:
                raise ValueError(f"pair {{{x}, {y}}} oriented twice")
            seen.add(key)
        if len(self.arcs) != self.n * (self.n - 1) // 2:
            raise ValueError("every pair needs exactly one arc")

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    @cached_property
    def out_neighbours(self) -> tuple[frozenset[int], ...]:
        outs: list[set[int]] = [set() for _ in range(self.n)]
        for x, y in self.arcs:
            outs[x].add(y)
        return tuple(frozenset(s) for s in outs)

    def has_arc(self, x: int, y: int) -> bool:
        return (x, y) in self.arc_set

    def is_regular(self) -> bool:
        d = (self.n - 1) / 2
        return all(len(s) == d for s in self.out_neighbours)

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @staticmethod
    def from_json(data) -> "Tournament":
        try:
            return Tournament(int(data["n"]), tuple((int(x), int(y)) for x, y in data["arcs"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad tournament object: {exc}") from exc


def clockwise_tournament(n: int) -> Tournament:
    """Circulant tournament on Z_n (n odd): arc (x, x+k) for k = 1..(n-1)/2."""
    if n < 3 or n % 2 == 0:
        raise EvenOrder("clockwise tournament needs odd n >= 3")
    d = (n - 1) // 2
    arcs = [(x, (x + k) % n) for x in range(n) for k in range(1, d + 1)]
    return Tournament(n, tuple(arcs))


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def quadratic_residue_tournament(q: int) -> Tournament:
    """Paley tournament on GF(q): arc (x, y) iff y - x is a nonzero square.

    Only prime q is supported; q = 3 (mod 4) makes exactly one of +-r a
    square, so the arcs are well defined.
    """
    if not _is_prime(q):
        raise NotPrime(f"{q} is not prime (prime powers are not supported)")
    if q % 4 != 3:
        raise WrongResidueClass(f"need q = 3 (mod 4), got {q} = {q % 4} (mod 4)")
    residues = {(z * z) % q for z in range(1, q)}
    arcs = [(x, (x + r) % q) for x in range(q) for r in residues]
    return Tournament(q, tuple(arcs))


def count_directed_cycles(t: Tournament, m: int, config: RunConfig = DEFAULT) -> int:
    """Exact count of unlabelled directed m-cycles, m in {3, 4}.

    Straight enumeration over vertex subsets; each 4-subset is checked in its
    three cyclic orders and both directions (at most one direction of a cycle
    can be present).
    """
    if m not in (3, 4):
        raise ValueError("only directed 3- and 4-cycles are supported")
    if t.n > 64:
        raise CapExceeded("directed cycle count", t.n, 64)
    has = t.has_arc
    count = 0
    if m == 3:
        for a, b, c in combinations(range(t.n), 3):
            if has(a, b) and has(b, c) and has(c, a):
                count += 1
            elif has(b, a) and has(c, b) and has(a, c):
                count += 1
        return count
    for quad in combinations(range(t.n), 4):
        a = quad[0]
        for x, y, z in ((quad[1], quad[2], quad[3]),
                        (quad[1], quad[3], quad[2]),
                        (quad[2], quad[1], quad[3])):
            if has(a, x) and has(x, y) and has(y, z) and has(z, a):
                count += 1
            elif has(x, a) and has(y, x) and has(z, y) and has(a, z):
                count += 1
    return count


def regular_tournaments(n: int) -> "Iterator[Tournament]":
    """All labelled regular tournaments on n vertices (n odd), by backtracking
    over the pair list with out-degree feasibility pruning."""
    if n % 2 == 0:
        raise EvenOrder("regular tournaments need odd n")
    d = (n - 1) // 2
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = [0] * n
    slack = [n - 1] * n  # unassigned pairs at each vertex
    bits: list[int] = [0] * len(pairs)

    def feasible(v: int) -> bool:
        return out[v] <= d and out[v] + slack[v] >= d

    def rec(i: int):
        if i == len(pairs):
            arcs = tuple(
                (x, y) if b else (y, x) for (x, y), b in zip(pairs, bits)
            )
            yield Tournament(n, arcs)
            return
        x, y = pairs[i]
        slack[x] -= 1
        slack[y] -= 1
        for b, winner in ((0, y), (1, x)):
            out[winner] += 1
            bits[i] = b
            if feasible(x) and feasible(y):
                yield from rec(i + 1)
            out[winner] -= 1
        slack[x] += 1
        slack[y] += 1

    yield from rec(0)


def random_regular_tournament(n: int, rng) -> Tournament:
    """One seeded regular tournament: randomized orientation choices with
    backtracking, so a sample always exists for odd n."""
    if n % 2 == 0:
        raise EvenOrder("regular tournaments need odd n")
    d = (n - 1) // 2
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    out = [0] * n
    slack = [n - 1] * n
    choice: list[tuple[int, int]] = []

    def feasible(v: int) -> bool:
        return out[v] <= d and out[v] + slack[v] >= d

    def rec(i: int) -> bool:
        if i == len(pairs):
            return True
        x, y = pairs[i]
        slack[x] -= 1
        slack[y] -= 1
        order = [(x, y), (y, x)]
        if rng.random() < 0.5:
            order.reverse()
        for tail, head in order:
            out[tail] += 1
            choice.append((tail, head))
            if feasible(x) and feasible(y) and rec(i + 1):
                return True
            choice.pop()
            out[tail] -= 1
        slack[x] += 1
        slack[y] += 1
        return False

    if not rec(0):
        raise RuntimeError("sampler failed; should be impossible for odd n")
    return Tournament(n, tuple(choice))


def directed_four_cycles_by_diagonals(t: Tournament) -> int:
    """Independent 4-cycle count: pair up opposite vertices across diagonals."""
    total = 0
    outs = t.out_neighbours
    ins = [set() for _ in range(t.n)]
    for x, y in t.arcs:
        ins[y].add(x)
    for x in range(t.n):
        for y in range(x + 1, t.n):
            a = len(outs[x] & ins[y]) * len(outs[y] & ins[x])
            total += a
    return total // 2


# -- the subdivision bridge ------------------------------------------------------


def colouring_from_tournament(t: Tournament) -> tuple[BipartiteGraph, EdgeColouring]:
    """Subdivided K_n coloured from a tournament: the arc (x, y) puts colour 1
    on the edge from x to the subdivision vertex and colour 0 on the edge
    from y.  The result is balanced, and its alternating 2m-cycles correspond
    to the tournament's directed m-cycles."""
    g = subdivided_complete(t.n)
    colours = []
    for u, mid in g.edges:
        x, y = mid.split("|")
        a, b = int(x), int(y)
        forward = t.has_arc(a, b)
        if int(u) == (a if forward else b):
            colours.append(1)
        else:
            colours.append(0)
    return g, EdgeColouring(tuple(colours))


def tournament_from_colouring(g: BipartiteGraph, a: EdgeColouring) -> Tournament:
    """Recover the tournament from a balanced colouring of a subdivided K_n.

    Each right-side vertex must have degree 2 with oppositely coloured edges;
    the colour-1 endpoint becomes the arc's tail.
    """
    check_aligned(g, a)
    colour_of = {}
    for i, (u, v) in enumerate(g.edges):
        colour_of[(u, v)] = a[i]
    arcs = []
    pairs = set()
    for mid in g.right:
        nbrs = g.adjacency[mid]
        if len(nbrs) != 2:
            raise ValueError(f"vertex {mid!r} is not a subdivision vertex")
        u, v = nbrs
        cu, cv = colour_of[(u, mid)], colour_of[(v, mid)]
        if cu == cv:
            raise NotBalanced(f"edges at {mid!r} share colour {cu}")
        tail, head = (u, v) if cu == 1 else (v, u)
        arcs.append((int(tail), int(head)))
        pairs.add(frozenset((u, v)))
    n = len(g.left)
    if len(pairs) != n * (n - 1) // 2:
        raise ValueError("underlying graph is not a complete graph subdivision")
    return Tournament(n, tuple(arcs))


# -- set-inclusion and bipartite Kneser graphs -----------------------------------


def set_id(s: Sequence[int]) -> str:
    return ",".join(str(x) for x in sorted(s))


def parse_set_id(vid: str) -> tuple[int, ...]:
    return tuple(int(x) for x in vid.split(","))


def set_inclusion_graph(
    n: int, k: int, r: int, config: RunConfig = DEFAULT
) -> BipartiteGraph:
    """I(n, k, r): k-sets of {1..n} on the left, r-sets on the right, edges
    given by inclusion.  Requires n > k > r > 0."""
    if not (n > k > r > 0):
        raise DegenerateParameters(f"need n > k > r > 0, got ({n}, {k}, {r})")
    from math import comb

    n_edges = comb(n, k) * comb(k, r)
    if n_edges > 200_000:
        raise CapExceeded("set-inclusion construction", n_edges, 200_000)
    left = tuple(set_id(c) for c in combinations(range(1, n + 1), k))
    right = tuple(set_id(c) for c in combinations(range(1, n + 1), r))
    edges = []
    for big in combinations(range(1, n + 1), k):
        bid = set_id(big)
        for small in combinations(big, r):
            edges.append((bid, set_id(small)))
    return BipartiteGraph(left, right, tuple(edges))


def bipartite_kneser(n: int, r: int, config: RunConfig = DEFAULT) -> BipartiteGraph:
    """H(n, r) = I(n, n-r, r); needs n - r > r."""
    if not (0 < r and n - r > r):
        raise DegenerateParameters(f"need n - r > r > 0, got ({n}, {r})")
    return set_inclusion_graph(n, n - r, r, config)
