"""Graph and tournament families against their closed-form counts."""

from itertools import combinations
from math import comb

import pytest

from gnorm.errors import (
    DegenerateParameters,
    EvenOrder,
    NotBalanced,
    NotPrime,
    OddDimension,
    ParseError,
    WrongResidueClass,
)
from gnorm.graphs import EdgeColouring, cycle, girth, is_balanced, is_biregular, is_eulerian
from gnorm.cycles import classify_4cycles, kappa_alternating
from gnorm.symmetry import coloured_isomorphic, isomorphic
from gnorm.constructions import (
    Tournament,
    bipartite_kneser,
    clockwise_tournament,
    colouring_from_tournament,
    count_directed_cycles,
    directed_four_cycles_by_diagonals,
    hypercube,
    hypercube_alpha,
    hypercube_beta,
    quadratic_residue_tournament,
    random_regular_tournament,
    regular_tournaments,
    set_inclusion_graph,
    subdivide,
    subdivided_complete,
    tournament_from_colouring,
)


class TestHypercube:
    def test_small_dimensions(self):
        assert isomorphic(hypercube(2), cycle(4))
        q3 = hypercube(3)
        assert q3.n_edges == 12 and all(q3.degree(v) == 3 for v in q3.vertices)
        q4 = hypercube(4)
        assert q4.n_edges == 32 and girth(q4) == 4

    def test_even_weight_left(self):
        q3 = hypercube(3)
        assert all(v.count("1") % 2 == 0 for v in q3.left)

    def test_alpha(self):
        assert coloured_isomorphic(
            hypercube(2), hypercube_alpha(2), cycle(4), EdgeColouring((1, 0, 1, 0))
        )
        for d in (2, 4, 6):
            assert is_balanced(hypercube(d), hypercube_alpha(d))
        with pytest.raises(OddDimension):
            hypercube_alpha(3)

    def test_beta(self):
        for d in (2, 4):
            assert is_balanced(hypercube(d), hypercube_beta(d))
        assert classify_4cycles(hypercube(4), hypercube_beta(4)).c2 == 0
        assert coloured_isomorphic(
            hypercube(2), hypercube_beta(2), cycle(4), EdgeColouring((1, 0, 1, 0))
        )

    def test_beta_c2_zero_dimension_6(self):
        assert classify_4cycles(hypercube(6), hypercube_beta(6)).c2 == 0


class TestSubdivide:
    def test_triangle_gives_hexagon(self):
        g = subdivide(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])
        assert isomorphic(g, cycle(6))

    def test_k4(self):
        g = subdivided_complete(4)
        assert g.n_edges == 12 and len(g.right) == 6

    def test_octahedron(self):
        verts = [f"v{i}" for i in range(6)]
        # K_{2,2,2}: all pairs except the three antipodal ones
        anti = {frozenset(("v0", "v1")), frozenset(("v2", "v3")),
                frozenset(("v4", "v5"))}
        edges = [
            (a, b) for a, b in combinations(verts, 2)
            if frozenset((a, b)) not in anti
        ]
        g = subdivide(verts, edges)
        assert g.n_edges == 24 and is_eulerian(g)

    def test_rejects_loops_and_duplicates(self):
        with pytest.raises(ValueError):
            subdivide(["a"], [("a", "a")])
        with pytest.raises(ValueError):
            subdivide(["a", "b"], [("a", "b"), ("b", "a")])


class TestTournaments:
    def test_clockwise_small(self):
        t3 = clockwise_tournament(3)
        assert count_directed_cycles(t3, 3) == 1
        assert count_directed_cycles(clockwise_tournament(5), 3) == 5
        with pytest.raises(EvenOrder):
            clockwise_tournament(4)

    def test_clockwise_four_cycles(self):
        assert count_directed_cycles(clockwise_tournament(7), 4) == 28

    def test_quadratic_residue(self):
        qr7 = quadratic_residue_tournament(7)
        assert qr7.out_neighbours[0] == frozenset({1, 2, 4})
        assert count_directed_cycles(qr7, 3) == 14
        assert count_directed_cycles(qr7, 4) == 21
        assert isomorphic_arcs(quadratic_residue_tournament(3),
                               clockwise_tournament(3))
        with pytest.raises(NotPrime):
            quadratic_residue_tournament(9)
        with pytest.raises(WrongResidueClass):
            quadratic_residue_tournament(5)

    def test_diagonal_method_agrees(self):
        for t in (clockwise_tournament(5), clockwise_tournament(7),
                  quadratic_residue_tournament(7), clockwise_tournament(9)):
            assert directed_four_cycles_by_diagonals(t) == \
                count_directed_cycles(t, 4)

    def test_three_cycle_formula_all_regular_n7(self):
        count = 0
        for t in regular_tournaments(7):
            count += 1
            assert count_directed_cycles(t, 3) == 7 * 3 * 4 // 6
        assert count == 2640

    def test_regular_counts(self):
        assert sum(1 for _ in regular_tournaments(3)) == 2
        assert sum(1 for _ in regular_tournaments(5)) == 24

    def test_sampler_regular(self):
        import random
        rng = random.Random(0)
        for _ in range(20):
            assert random_regular_tournament(9, rng).is_regular()

    def test_json_round_trip(self):
        t = clockwise_tournament(5)
        assert Tournament.from_json(t.to_json()).arcs == t.arcs
        with pytest.raises(ParseError):
            Tournament.from_json({"n": 3})

    def test_validation(self):
        with pytest.raises(ValueError):
            Tournament(3, ((0, 1), (1, 0), (1, 2)))


def isomorphic_arcs(t1: Tournament, t2: Tournament) -> bool:
    from itertools import permutations
    return any(
        {(p[x], p[y]) for x, y in t1.arcs} == set(t2.arcs)
        for p in permutations(range(t1.n))
    )


class TestSubdivisionBridge:
    def test_triangle_round_trip(self):
        t3 = clockwise_tournament(3)
        g, col = colouring_from_tournament(t3)
        assert isomorphic(g, cycle(6))
        assert kappa_alternating(g, col, 6) == 1
        assert tournament_from_colouring(g, col).arcs == t3.arcs

    def test_counts_match_formulas(self):
        t5 = clockwise_tournament(5)
        g, col = colouring_from_tournament(t5)
        assert kappa_alternating(g, col, 6) == 5
        t7 = clockwise_tournament(7)
        g, col = colouring_from_tournament(t7)
        assert kappa_alternating(g, col, 8) == 28

    def test_balanced_iff_regular(self):
        t5 = clockwise_tournament(5)
        g, col = colouring_from_tournament(t5)
        assert is_balanced(g, col)
        lopsided = Tournament(3, ((0, 1), (0, 2), (1, 2)))
        g, col = colouring_from_tournament(lopsided)
        assert not is_balanced(g, col)

    def test_unbalanced_mid_rejected(self):
        g = subdivided_complete(3)
        with pytest.raises(NotBalanced):
            tournament_from_colouring(g, EdgeColouring((1, 1, 1, 0, 1, 0)))


class TestSetInclusion:
    def test_hexagon(self):
        assert isomorphic(set_inclusion_graph(3, 2, 1), cycle(6))

    def test_degrees(self):
        g = set_inclusion_graph(4, 3, 1)
        assert is_biregular(g)
        assert g.degree(g.left[0]) == 3 and g.degree(g.right[0]) == 3
        g = set_inclusion_graph(6, 3, 2)
        assert g.degree(g.left[0]) == comb(3, 2)
        assert g.degree(g.right[0]) == comb(4, 1)

    def test_complete_minus_matching(self):
        g = set_inclusion_graph(4, 3, 1)
        # each 3-set misses exactly one point: K_{4,4} minus a matching
        missing = {(u, v) for u in g.left for v in g.right
                   if (u, v) not in g.edge_index}
        assert len(missing) == 4

    def test_kneser(self):
        assert isomorphic(bipartite_kneser(3, 1), cycle(6))
        h52 = bipartite_kneser(5, 2)
        assert len(h52.left) == len(h52.right) == 10
        assert all(h52.degree(v) == 3 for v in h52.vertices)
        with pytest.raises(DegenerateParameters):
            bipartite_kneser(4, 2)

    def test_guards(self):
        with pytest.raises(DegenerateParameters):
            set_inclusion_graph(3, 3, 1)


class TestBridgeOnArbitraryTournaments:
    def test_kappa_matches_directed_cycles_without_regularity(self):
        # the alternating-cycle correspondence needs no balance at branch
        # vertices, so it holds for arbitrary tournaments
        import random
        rng = random.Random(6)
        for n in (4, 6, 7):
            for _ in range(5):
                pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
                arcs = tuple((i, j) if rng.random() < 0.5 else (j, i)
                             for i, j in pairs)
                t = Tournament(n, arcs)
                g, col = colouring_from_tournament(t)
                assert kappa_alternating(g, col, 6) == count_directed_cycles(t, 3)
                assert kappa_alternating(g, col, 8) == count_directed_cycles(t, 4)


class TestBetaBalanceHigherDimensions:
    def test_dimension_six(self):
        q6 = hypercube(6)
        assert is_balanced(q6, hypercube_beta(6))
        assert is_balanced(q6, hypercube_alpha(6))


class TestTransitivityTournamentEquivalence:
    def test_colouring_transitive_iff_arc_transitive(self):
        # the colouring of a subdivided complete graph is transitive exactly
        # when the defining tournament is arc-transitive
        from gnorm.symmetry import is_transitive_colouring
        from gnorm.certify import tournament_is_arc_transitive
        cases = [clockwise_tournament(3), clockwise_tournament(5),
                 clockwise_tournament(7), quadratic_residue_tournament(7)]
        for t in cases:
            g, col = colouring_from_tournament(t)
            assert is_transitive_colouring(g, col) == \
                tournament_is_arc_transitive(t)
