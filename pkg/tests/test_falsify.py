"""Falsifier behaviour: soundness on norming colourings, sensitivity on
broken ones, witness replay, determinism."""

import random

import pytest

from gnorm.graphs import EdgeColouring, star
from gnorm.kernels import Decoration, StepKernel
from gnorm.falsify import (
    hatami_check,
    hatami_random_scan,
    hatami_violation_search,
    p1_check,
    random_kernel,
    triangle_falsifier,
)
from gnorm.kernels import phase_kernel
from gnorm.density import t_density


class TestHatamiCheck:
    def test_equality_when_uniform(self, c4, alt4):
        f = random_kernel(random.Random(0), 2, 2)
        res = hatami_check(c4, alt4, Decoration.uniform(f, 4))
        assert res.holds and res.log_margin == 0.0

    def test_zero_mixed_side_holds(self, c4, alt4):
        zero = StepKernel.constant(0.0, 2, 2)
        f = random_kernel(random.Random(1), 2, 2)
        dec = Decoration((f, zero, f, f))
        assert hatami_check(c4, alt4, dec).holds

    def test_violation_detected(self, c4):
        bad = EdgeColouring((1, 1, 1, 0))
        witness = hatami_violation_search(c4, bad, seed=5, trials=50)
        assert witness is not None
        replay = witness.replay(c4)
        assert not replay.holds and replay.log_margin < 0

    def test_witness_json_is_replayable(self, c4):
        bad = EdgeColouring((1, 1, 1, 0))
        witness = hatami_violation_search(c4, bad, seed=5, trials=50)
        blob = witness.to_json()
        assert blob["kind"] == "decoration-inequality"
        assert blob["seed"] == 5 and len(blob["kernels"]) == 4

    def test_no_violation_on_alternating_scan(self, c4, alt4):
        scan = hatami_random_scan(c4, alt4, seed=9, trials=300)
        assert not scan.violated
        assert scan.worst_margin >= 0

    def test_directed_search_misses_norming(self, c4, alt4):
        assert hatami_violation_search(c4, alt4, seed=9, trials=30) is None


class TestTriangleFalsifier:
    def test_monochromatic_square_fails_fast(self, c4, mono4):
        res = triangle_falsifier(c4, mono4, seed=42, trials=1000)
        assert res.violated and res.trials <= 1000
        assert res.witness.replay(c4)

    def test_unbalanced_star_scaling(self):
        k12 = star(2)
        res = triangle_falsifier(k12, EdgeColouring((1, 1)), seed=42, trials=100)
        assert res.violated

    def test_half_half_star_is_clean(self):
        # the mixed orientation realises an L2 norm of row sums: a seminorm
        k12 = star(2)
        res = triangle_falsifier(k12, EdgeColouring((1, 0)), seed=7, trials=500)
        assert not res.violated

    def test_alternating_square_is_clean(self, c4, alt4):
        res = triangle_falsifier(c4, alt4, seed=11, trials=500)
        assert not res.violated

    def test_deterministic_given_seed(self, c4, mono4):
        r1 = triangle_falsifier(c4, mono4, seed=3, trials=50)
        r2 = triangle_falsifier(c4, mono4, seed=3, trials=50)
        assert r1.witness.to_json() == r2.witness.to_json()

    def test_structured_pair_separates_balance(self, c4, mono4, alt4):
        # the phase kernel and its conjugate annihilate unbalanced densities
        pk = phase_kernel(3)
        assert abs(t_density(c4, mono4, pk)) < 1e-12
        assert abs(t_density(c4, mono4, pk.conj())) < 1e-12
        assert abs(t_density(c4, mono4, pk.add(pk.conj()))) > 1


class TestP1Check:
    def test_alternating_square_dominates(self, c4, alt4):
        rng = random.Random(21)
        betas = [EdgeColouring(tuple(b >> i & 1 for i in range(4)))
                 for b in range(16)]
        for _ in range(10):
            f = random_kernel(rng, 2, 2)
            res = p1_check(c4, alt4, betas, f)
            assert res.holds, (res.worst_beta, res.worst_gap)

    def test_hexagon_vs_monochromatic_phase(self, c6):
        alt = EdgeColouring((1, 0, 1, 0, 1, 0))
        res = p1_check(c6, alt, [EdgeColouring((1,) * 6)], phase_kernel(3))
        assert res.holds and res.value_alpha == pytest.approx(1.0)

    def test_real_kernel_trivial(self, c6):
        f = StepKernel.from_real([[0.4, -0.2], [0.9, 0.1]])
        alt = EdgeColouring((1, 0, 1, 0, 1, 0))
        betas = [EdgeColouring(tuple(random.Random(5).randint(0, 1)
                                     for _ in range(6)))]
        assert p1_check(c6, alt, betas, f).holds

    def test_detects_dominated_candidate(self, c4, mono4, alt4):
        # against the phase kernel the unbalanced candidate loses to balanced
        res = p1_check(c4, mono4, [alt4], phase_kernel(3))
        assert not res.holds
