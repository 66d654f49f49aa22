"""Core graph type, structural predicates, balanced-colouring enumeration."""

from itertools import product
from math import comb, inf

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gnorm.errors import CapExceeded, ParseError
from gnorm.config import RunConfig
from gnorm.graphs import (
    BipartiteGraph,
    EdgeColouring,
    check_aligned,
    colouring_from_json,
    colouring_to_json,
    complete_bipartite,
    count_two_edge_matchings,
    degree_stats,
    disjoint_union,
    enumerate_balanced_colourings,
    girth,
    graph_from_json,
    graph_to_json,
    is_balanced,
    is_biregular,
    is_eulerian,
    path,
    star,
)
from gnorm.constructions import hypercube, hypercube_beta, set_inclusion_graph

from conftest import small_bipartite


class TestValidation:
    def test_rejects_duplicate_edges(self):
        with pytest.raises(ValueError, match="duplicate"):
            BipartiteGraph(("a",), ("b",), (("a", "b"), ("a", "b")))

    def test_rejects_isolated_vertices(self):
        with pytest.raises(ValueError, match="isolated"):
            BipartiteGraph(("a", "a2"), ("b",), (("a", "b"),))

    def test_rejects_shared_ids(self):
        with pytest.raises(ValueError, match="unique"):
            BipartiteGraph(("x",), ("x",), (("x", "x"),))

    def test_rejects_wrong_side(self):
        with pytest.raises(ValueError, match="left to right"):
            BipartiteGraph(("a",), ("b",), (("b", "a"),))

    def test_colouring_range(self):
        with pytest.raises(ValueError):
            EdgeColouring((0, 2))


class TestPredicates:
    def test_eulerian(self, c4):
        assert is_eulerian(c4)
        assert not is_eulerian(hypercube(3))  # 3-regular
        # complete bipartite minus a perfect matching, 4-regular
        assert is_eulerian(set_inclusion_graph(5, 4, 1))

    def test_biregular(self, k23):
        assert is_biregular(k23)
        assert is_biregular(set_inclusion_graph(4, 2, 1))
        # a star with a pendant path hanging off one leaf
        g = BipartiteGraph(
            ("c", "a1"), ("b0", "b1", "b2"),
            (("c", "b0"), ("c", "b1"), ("c", "b2"), ("a1", "b2")),
        )
        assert not is_biregular(g)

    def test_girth(self, c6):
        assert girth(c6) == 6
        assert girth(hypercube(4)) == 4
        assert girth(star(3)) == inf

    def test_girth_even_on_bipartite_samples(self):
        for mask in range(1, 2 ** 9, 7):
            g = small_bipartite(mask)
            if g is None:
                continue
            gv = girth(g)
            assert gv == inf or gv % 2 == 0


class TestDegreeStats:
    def test_alternating_cycle(self, c4, alt4):
        stats = degree_stats(c4, alt4)
        assert all(stats.d_plus[v] == 1 and stats.d_minus[v] == 1 for v in c4.vertices)
        assert (stats.c1, stats.c2, stats.d1, stats.d2) == (2, 2, 0, 0)

    def test_monochromatic_cycle(self, c4, mono4):
        stats = degree_stats(c4, mono4)
        for v in c4.left:
            assert stats.d_plus[v] == 2 and stats.d_minus[v] == 0
        assert stats.c1 == stats.c2 == 0

    def test_single_edge(self):
        g = BipartiteGraph(("a",), ("b",), (("a", "b"),))
        stats = degree_stats(g, EdgeColouring((1,)))
        assert (stats.c1, stats.c2, stats.d1, stats.d2) == (0, 0, 0, 0)

    @given(mask=st.integers(1, 2 ** 9 - 1), bits=st.integers(0, 2 ** 9 - 1))
    def test_split_identity(self, mask, bits):
        # C(deg, 2) decomposes into the three oriented-pair counts at each vertex
        g = small_bipartite(mask)
        if g is None:
            return
        colours = EdgeColouring(tuple(bits >> i & 1 for i in range(g.n_edges)))
        stats = degree_stats(g, colours)
        for v in g.vertices:
            dp, dm = stats.d_plus[v], stats.d_minus[v]
            assert comb(g.degree(v), 2) == comb(dp, 2) + comb(dm, 2) + dp * dm

    @given(mask=st.integers(1, 2 ** 9 - 1), bits=st.integers(0, 2 ** 9 - 1))
    def test_mixed_vertex_detection(self, mask, bits):
        g = small_bipartite(mask)
        if g is None:
            return
        colours = EdgeColouring(tuple(bits >> i & 1 for i in range(g.n_edges)))
        stats = degree_stats(g, colours)
        mixed = any(
            {colours[i] for i in g.incident_edges[v]} == {0, 1} for v in g.vertices
        )
        assert (stats.c1 + stats.c2 > 0) == mixed


class TestBalanced:
    def test_examples(self, c4, alt4, mono4):
        assert is_balanced(c4, alt4)
        assert not is_balanced(c4, mono4)
        q4 = hypercube(4)
        assert is_balanced(q4, hypercube_beta(4))

    def test_enumeration_c4(self, c4):
        cols = enumerate_balanced_colourings(c4)
        assert [c.colours for c in cols] == [(0, 1, 0, 1), (1, 0, 1, 0)]

    def test_enumeration_odd_degree_empty(self):
        assert enumerate_balanced_colourings(star(3)) == []

    def test_enumeration_matches_brute_force_k44(self):
        g = complete_bipartite(4, 4)
        smart = {c.colours for c in enumerate_balanced_colourings(g)}
        brute = {
            bits
            for bits in product((0, 1), repeat=16)
            if is_balanced(g, EdgeColouring(bits))
        }
        assert smart == brute
        assert len(smart) == 90  # 4x4 0/1 matrices with all line sums 2

    def test_cap(self, c4):
        with pytest.raises(CapExceeded):
            enumerate_balanced_colourings(c4, RunConfig(cap_edges=2))

    @given(mask=st.integers(1, 2 ** 9 - 1))
    @settings(max_examples=40, deadline=None)
    def test_closed_under_conjugation_and_even(self, mask):
        g = small_bipartite(mask)
        if g is None:
            return
        cols = {c.colours for c in enumerate_balanced_colourings(g)}
        assert {tuple(1 - x for x in c) for c in cols} == cols
        assert len(cols) % 2 == 0

    @given(mask=st.integers(1, 2 ** 9 - 1), bits=st.integers(0, 2 ** 9 - 1))
    def test_conjugation_preserves_balance(self, mask, bits):
        g = small_bipartite(mask)
        if g is None:
            return
        colours = EdgeColouring(tuple(bits >> i & 1 for i in range(g.n_edges)))
        assert is_balanced(g, colours) == is_balanced(g, colours.conjugate())


class TestDisjointUnion:
    def test_two_alternating_squares(self, c4, alt4):
        g, a = disjoint_union([(c4, alt4), (c4, alt4)])
        assert g.n_vertices == 8 and len(a) == 8
        assert is_balanced(g, a)

    def test_colour_concatenation(self):
        k12 = star(2)
        g, a = disjoint_union([(k12, EdgeColouring((1, 0))), (k12, EdgeColouring((0, 1)))])
        assert a.colours == (1, 0, 0, 1)

    def test_copy_count(self, c6):
        a = EdgeColouring((1, 0, 1, 0, 1, 0))
        g, _ = disjoint_union([(c6, a)] * 5)
        assert g.n_edges == 5 * 6

    def test_preserves_balancedness_componentwise(self, c4, c6, alt4):
        alt6 = EdgeColouring((1, 0, 1, 0, 1, 0))
        g, a = disjoint_union([(c4, alt4), (c6, alt6)])
        assert is_balanced(g, a)
        g, a = disjoint_union([(c4, alt4), (c6, EdgeColouring((1,) * 6))])
        assert not is_balanced(g, a)


class TestMatchings:
    def test_counts(self, c4, c6):
        assert count_two_edge_matchings(c4) == 2
        assert count_two_edge_matchings(star(3)) == 0
        assert count_two_edge_matchings(c6) == comb(6, 2) - 6


class TestJson:
    def test_graph_round_trip(self, c6):
        assert graph_from_json(graph_to_json(c6)) == c6

    def test_colouring_round_trip(self):
        a = EdgeColouring((1, 0, 0, 1))
        assert colouring_from_json(colouring_to_json(a)) == a

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            graph_from_json({"left": ["a"]})
        with pytest.raises(ParseError):
            colouring_from_json({"colours": ["x"]})

    def test_path_and_alignment(self):
        g = path(3)
        assert g.n_edges == 3
        with pytest.raises(ValueError):
            check_aligned(g, EdgeColouring((1, 0)))
