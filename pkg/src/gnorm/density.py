"""Exact evaluation of the density functionals on step kernels.

Everything here is a finite sum over grid assignments.  Two independent
evaluation routes are provided: ``direct`` materialises the product over all
assignments, ``eliminate`` contracts vertices one at a time along a greedy
minimum-fill order.  Both are exact up to floating point and must agree; the
verification suite pins their relative deviation.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from itertools import product
from math import comb, inf, pi
from typing import Iterable, Iterator

import numpy as np

from .config import DEFAULT, RunConfig
from .errors import CapExceeded, ShapeMismatch, UnsupportedOrder
from .graphs import (
    BipartiteGraph,
    EdgeColouring,
    check_aligned,
    count_two_edge_matchings,
    degree_stats,
    enumerate_balanced_colourings,
    girth,
    is_balanced,
)
from .cycles import enumerate_cycles, kappa_alternating
from .kernels import Decoration, OnePlusEps, StepKernel, TrigKernel

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"

MODES = ("conjugate", "transpose")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _edge_factors(
    g: BipartiteGraph, a: EdgeColouring, dec: Decoration, mode: str
) -> list[np.ndarray]:
    """Per-edge complex tables; axis 0 is the left variable, axis 1 the right.

    Colour 1 keeps the kernel; colour 0 conjugates it (conjugate mode) or
    swaps its arguments (transpose mode).
    """
    p, q = dec.shape
    if mode == "transpose" and p != q:
        raise ShapeMismatch(f"transpose mode needs a square kernel, got {p}x{q}")
    factors = []
    for i in range(g.n_edges):
        arr = dec[i].array()
        if a[i] == 1:
            factors.append(arr)
        elif mode == "conjugate":
            factors.append(arr.conj())
        else:
            factors.append(arr.T)
    return factors


def _dims(g: BipartiteGraph, dec: Decoration, mode: str) -> list[int]:
    p, q = dec.shape
    nl = len(g.left)
    if mode == "transpose":
        return [p] * g.n_vertices
    return [p] * nl + [q] * (g.n_vertices - nl)


def _assignment_count(dims: Iterable[int]) -> int:
    total = 1
    for d in dims:
        total *= d
    return total


def _evaluate_direct(g, factors, dims, config: RunConfig) -> complex:
    """Sum the full product tensor over every grid assignment."""
    total_assignments = _assignment_count(dims)
    if total_assignments > config.cap_assignments:
        raise CapExceeded("direct density evaluation", total_assignments,
                          config.cap_assignments)
    n = g.n_vertices
    vidx = g.vertex_index
    arr = np.ones(tuple(dims), dtype=np.complex128)
    for i, (u, v) in enumerate(g.edges):
        iu, iv = vidx[u], vidx[v]
        shape = [1] * n
        shape[iu] = dims[iu]
        shape[iv] = dims[iv]
        if iu < iv:
            fac = factors[i]
        else:
            fac = factors[i].T
        arr *= fac.reshape(shape)
    return complex(arr.sum()) / total_assignments


def _elimination_order(scopes: list[frozenset[int]], n: int) -> list[int]:
    """Greedy minimum-fill order over the variable interaction graph."""
    nbr: dict[int, set[int]] = {v: set() for v in range(n)}
    for sc in scopes:
        for x in sc:
            nbr[x] |= sc - {x}
    alive = set(range(n))
    order = []
    while alive:
        best_v, best_fill = None, None
        for v in sorted(alive):
            ns = nbr[v] & alive
            fill = sum(
                1
                for x in ns
                for y in ns
                if x < y and y not in nbr[x]
            )
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        v = best_v
        ns = nbr[v] & alive
        for x in ns:
            nbr[x] |= ns - {x}
        alive.remove(v)
        order.append(v)
    return order


def _evaluate_eliminate(g, factors, dims, config: RunConfig) -> complex:
    """Contract vertices sequentially along a greedy minimum-fill order."""
    vidx = g.vertex_index
    n = g.n_vertices
    work: list[tuple[tuple[int, ...], np.ndarray]] = []
    for i, (u, v) in enumerate(g.edges):
        work.append(((vidx[u], vidx[v]), factors[i]))
    order = _elimination_order([frozenset(sc) for sc, _ in work], n)

    scalar = complex(1.0)
    for v in order:
        group = [f for f in work if v in f[0]]
        work = [f for f in work if v not in f[0]]
        if not group:
            scalar *= dims[v]  # free variable: plain sum of ones
            continue
        union = sorted({x for sc, _ in group for x in sc})
        width = _assignment_count(dims[x] for x in union)
        if width > config.cap_assignments:
            raise CapExceeded("elimination width", width, config.cap_assignments)
        if len(union) > len(_LETTERS):
            raise CapExceeded("elimination scope", len(union), len(_LETTERS))
        letter = {x: _LETTERS[k] for k, x in enumerate(union)}
        inputs = ",".join("".join(letter[x] for x in sc) for sc, _ in group)
        out = "".join(letter[x] for x in union if x != v)
        new = np.einsum(f"{inputs}->{out}", *[arr for _, arr in group])
        new_scope = tuple(x for x in union if x != v)
        if new_scope:
            work.append((new_scope, new))
        else:
            scalar *= complex(new)
    for sc, arr in work:
        scalar *= complex(arr)
    return scalar / _assignment_count(dims)


def t_decoration(
    g: BipartiteGraph,
    a: EdgeColouring,
    dec: Decoration,
    mode: str = "conjugate",
    method: str = "auto",
    config: RunConfig = DEFAULT,
) -> complex:
    """Decorated density: each edge carries its own kernel.

    In conjugate mode colour-0 edges contribute the conjugated kernel; in
    transpose mode they contribute the argument-swapped kernel (kernels must
    be square).  The value is the mean of the edge-factor product over all
    grid assignments.
    """
    _check_mode(mode)
    check_aligned(g, a)
    if len(dec) != g.n_edges:
        raise ValueError(f"decoration size {len(dec)} != edge count {g.n_edges}")
    if g.n_edges == 0:
        return complex(1.0)
    factors = _edge_factors(g, a, dec, mode)
    dims = _dims(g, dec, mode)
    if method == "auto":
        method = "direct" if _assignment_count(dims) <= 4096 else "eliminate"
    if method == "direct":
        return _evaluate_direct(g, factors, dims, config)
    if method == "eliminate":
        return _evaluate_eliminate(g, factors, dims, config)
    raise ValueError(f"unknown method {method!r}")


def t_density(
    g: BipartiteGraph,
    a: EdgeColouring,
    f: StepKernel,
    mode: str = "conjugate",
    method: str = "auto",
    config: RunConfig = DEFAULT,
) -> complex:
    """Homomorphism density of a single kernel under the given colouring."""
    return t_decoration(g, a, Decoration.uniform(f, max(g.n_edges, 1)), mode,
                        method, config)


def _all_colourings(m: int) -> Iterator[EdgeColouring]:
    for bits in product((0, 1), repeat=m):
        yield EdgeColouring(bits)


@dataclass(frozen=True)
class ColouringMax:
    value: float
    argmax: EdgeColouring


def s_max(
    g: BipartiteGraph,
    f: StepKernel,
    mode: str = "conjugate",
    method: str = "auto",
    config: RunConfig = DEFAULT,
) -> ColouringMax:
    """max over all colourings of |t(f)|, with the lexicographically least
    maximiser.  Conjugate mode realises the complex-side envelope, transpose
    mode the orientation envelope."""
    _check_mode(mode)
    m = g.n_edges
    if m > config.cap_colourings:
        raise CapExceeded("colouring maximisation", m, config.cap_colourings)
    best: float | None = None
    best_col = None
    for col in _all_colourings(m):
        val = abs(t_density(g, col, f, mode, method, config))
        if best is None or val > best:
            best, best_col = val, col
    return ColouringMax(best, best_col)


def rho_2m(
    g: BipartiteGraph,
    f: StepKernel,
    m: int,
    mode: str = "transpose",
    method: str = "auto",
    config: RunConfig = DEFAULT,
) -> float:
    """The 2m-power mean over colourings: (sum_a t_a(f)^(2m))^(1/2m).

    The sum is real: conjugate colourings contribute conjugate values in the
    conjugate mode, and transpose mode is meant for real kernels.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    _check_mode(mode)
    if g.n_edges > config.cap_colourings:
        raise CapExceeded("colouring power sum", g.n_edges, config.cap_colourings)
    total = complex(0.0)
    scale = 0.0
    for col in _all_colourings(g.n_edges):
        val = t_density(g, col, f, mode, method, config)
        total += val ** (2 * m)
        scale = max(scale, abs(val) ** (2 * m))
    if abs(total.imag) > 1e-9 * max(1.0, scale):
        raise ValueError("power sum is not real; use a real kernel in transpose mode")
    re = max(total.real, 0.0)
    return re ** (1.0 / (2 * m))


# -- closed-form trigonometric kernels ----------------------------------------


def trig_density(
    g: BipartiteGraph,
    a: EdgeColouring,
    tk: TrigKernel,
    method: str = "auto",
    config: RunConfig = DEFAULT,
) -> complex:
    """Exact density of a trigonometric kernel.

    h0 gives 1 on balanced colourings and 0 otherwise.  For hk the edge
    product integrates to the number of balanced colourings times the phase
    exp(2*pi*i*(2*w - e)/k) where w counts colour-1 edges: method "cycle"
    uses the closed form 2^components * phase on disjoint unions of cycles,
    method "orientation-sum" sums the phase over the enumerated balanced
    colourings, and "auto" picks whichever applies.
    """
    check_aligned(g, a)
    if tk.kind == "h0":
        return complex(1.0) if is_balanced(g, a) else complex(0.0)
    if tk.kind == "const":
        c = tk.c
        w = a.weight
        return (c ** w) * (c.conjugate() ** (g.n_edges - w))
    # hk
    phase = cmath.exp(2j * pi * (2 * a.weight - g.n_edges) / tk.k)
    is_cycle_union = all(g.degree(v) == 2 for v in g.vertices)
    if method == "auto":
        method = "cycle" if is_cycle_union else "orientation-sum"
    if method == "cycle":
        if not is_cycle_union:
            raise ValueError("cycle closed form needs a disjoint union of cycles")
        return (2 ** len(g.components)) * phase
    if method == "orientation-sum":
        if any(g.degree(v) % 2 for v in g.vertices):
            return complex(0.0)
        total = complex(0.0)
        for _orientation in enumerate_balanced_colourings(g, config):
            total += phase
        return total
    raise ValueError(f"unknown method {method!r}")


def perturbation_coefficients(
    g: BipartiteGraph,
    a: EdgeColouring,
    h: TrigKernel | OnePlusEps,
    orders: Iterable[int],
    config: RunConfig = DEFAULT,
) -> dict[int, complex]:
    """Leading coefficients of eps -> t(1 + eps*h) at the requested orders.

    For h0 the coefficient at order l counts balanced l-edge subgraphs; below
    order 2*girth every such subgraph is a single colour-alternating cycle,
    which covers both supported orders g and g+2.  For hk only order g is
    defined, as the phase-weighted sum over girth cycles.
    """
    if isinstance(h, OnePlusEps):
        h = h.inner
    check_aligned(g, a)
    gval = girth(g)
    if gval == inf:
        raise ValueError("perturbation expansion needs a graph with a cycle")
    gval = int(gval)
    orders = sorted(set(int(x) for x in orders))
    if h.kind == "h0":
        allowed = {gval, gval + 2}
    elif h.kind == "hk":
        allowed = {gval}
    else:
        raise UnsupportedOrder("perturbation expansion supports h0 and hk kernels")
    bad = [x for x in orders if x not in allowed]
    if bad:
        raise UnsupportedOrder(f"orders {bad} outside supported {sorted(allowed)}")
    out: dict[int, complex] = {}
    if h.kind == "h0":
        for ell in orders:
            out[ell] = complex(kappa_alternating(g, a, ell, config))
        return out
    cs = enumerate_cycles(g, gval, config)
    acc = complex(0.0)
    for cyc in cs.edge_cycles:
        w = sum(a[i] for i in cyc)
        acc += 2 * cmath.exp(4j * pi * (w - gval / 2) / h.k)
    out[gval] = acc
    return out


# -- second-order expansion of the orientation functional ----------------------


@dataclass(frozen=True)
class QuadraticExpansion:
    """Coefficients of t(1 + eps*h) in transpose mode through order eps^2.

    i1, i2, i3 are the three 2-edge-path integrals of h (out-out, in-in,
    in-out at the centre); matchings is the 2-edge-matching count.
    """

    c0: float
    c1: float
    c2: float
    i1: float
    i2: float
    i3: float
    mean: float
    matchings: int

    def predict(self, eps: float) -> float:
        return self.c0 + self.c1 * eps + self.c2 * eps * eps


def two_path_integrals(h: StepKernel) -> tuple[float, float, float]:
    """(I1, I2, I3) for a real square kernel.

    I1 = mean_x (row mean)^2, I2 = mean_x (column mean)^2,
    I3 = mean_x (row mean * column mean).
    """
    if not h.is_square:
        raise ShapeMismatch("two-path integrals need a square kernel")
    if not h.is_real:
        raise ValueError("two-path integrals are defined for real kernels")
    arr = h.array().real
    rows = arr.mean(axis=1)
    cols = arr.mean(axis=0)
    return (
        float((rows ** 2).mean()),
        float((cols ** 2).mean()),
        float((rows * cols).mean()),
    )


def second_order_expansion(
    g: BipartiteGraph, a: EdgeColouring, h: StepKernel
) -> QuadraticExpansion:
    """Predicted quadratic of eps -> t(1+eps*h) in transpose mode.

    The linear term is e(H) times the mean of h; the quadratic term combines
    the per-vertex in/out splits of the colouring with the two-path integrals
    plus the matching count times the squared mean.
    """
    check_aligned(g, a)
    i1, i2, i3 = two_path_integrals(h)
    mean = h.mean().real
    stats = degree_stats(g, a)
    quad = 0.0
    for v in g.vertices:
        dp, dm = stats.d_plus[v], stats.d_minus[v]
        quad += comb(dp, 2) * i1 + comb(dm, 2) * i2 + dp * dm * i3
    m2 = count_two_edge_matchings(g)
    quad += m2 * mean * mean
    return QuadraticExpansion(
        c0=1.0,
        c1=g.n_edges * mean,
        c2=quad,
        i1=i1,
        i2=i2,
        i3=i3,
        mean=mean,
        matchings=m2,
    )


def expansion_tail_bound(g: BipartiteGraph, h: StepKernel, eps: float) -> float:
    """Rigorous bound on |t(1+eps*h) - quadratic prediction|.

    The exact value is a polynomial whose order-j coefficient is a sum over
    C(e, j) edge subsets, each bounded by max|h|^j, so the tail beyond eps^2
    is at most sum_{j>=3} C(e, j) (B*|eps|)^j.
    """
    b = h.max_abs()
    e = g.n_edges
    x = b * abs(eps)
    return sum(comb(e, j) * x ** j for j in range(3, e + 1))


def perturbed_kernel(h: StepKernel, eps: float) -> StepKernel:
    """The step kernel 1 + eps*h on the same grid."""
    return StepKernel(
        tuple(tuple(1.0 + eps * x for x in row) for row in h.values)
    )
