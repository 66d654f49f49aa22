"""Density engine: pinned values, functional axioms, dual-path agreement,
closed trigonometric forms, perturbation coefficients, quadratic expansion."""

import cmath
import math
import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gnorm.config import RunConfig
from gnorm.errors import CapExceeded, ShapeMismatch, UnsupportedOrder
from gnorm.graphs import (
    EdgeColouring,
    complete_bipartite,
    cycle,
    is_balanced,
    star,
)
from gnorm.kernels import Decoration, OnePlusEps, StepKernel, TrigKernel, phase_kernel
from gnorm.density import (
    expansion_tail_bound,
    perturbation_coefficients,
    rho_2m,
    s_max,
    second_order_expansion,
    t_decoration,
    t_density,
    trig_density,
    two_path_integrals,
)
from gnorm.constructions import hypercube, hypercube_beta


def oracle_density(g, colours, kernel, mode):
    """Independent evaluation: explicit loops over every grid assignment."""
    p, q = kernel.shape
    if mode == "transpose":
        q = p
    nl = len(g.left)
    vidx = g.vertex_index
    total = 0j
    count = 0
    for assign in product(*([range(p)] * nl + [range(q)] * (g.n_vertices - nl))):
        term = 1 + 0j
        for i, (u, v) in enumerate(g.edges):
            x, y = assign[vidx[u]], assign[vidx[v]]
            val = kernel.values[x][y]
            if colours[i] == 0:
                val = val.conjugate() if mode == "conjugate" else kernel.values[y][x]
            term *= val
        total += term
        count += 1
    return total / count


def rand_kernel(rng, p, q):
    return StepKernel(tuple(
        tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(q))
        for _ in range(p)
    ))


class TestPinnedValues:
    def test_constant_one(self, c4, alt4):
        assert t_density(c4, alt4, StepKernel.constant(1.0)) == 1

    def test_sign_kernel_half(self, c4, alt4):
        f = StepKernel.from_real([[1, 1], [1, -1]])
        val = t_density(c4, alt4, f)
        assert val == pytest.approx(0.5)
        assert oracle_density(c4, alt4, f, "conjugate") == pytest.approx(0.5)

    def test_imaginary_constants(self, c4, alt4, mono4):
        ci = StepKernel.constant(1j)
        assert t_density(c4, mono4, ci) == pytest.approx(1)   # i^4
        assert t_density(c4, alt4, ci) == pytest.approx(1)    # |i|^4
        # one conjugated edge: i^3 * (-i) = -1
        assert t_density(c4, EdgeColouring((1, 1, 1, 0)), ci) == pytest.approx(-1)

    def test_transpose_needs_square(self, c4, alt4):
        with pytest.raises(ShapeMismatch):
            t_density(c4, alt4, StepKernel(((1, 2),)), "transpose")

    def test_against_oracle(self):
        rng = random.Random(4)
        for g in (cycle(4), cycle(6), complete_bipartite(2, 3)):
            for mode in ("conjugate", "transpose"):
                f = rand_kernel(rng, 3, 3)
                col = EdgeColouring(tuple(rng.randint(0, 1) for _ in range(g.n_edges)))
                want = oracle_density(g, col, f, mode)
                for method in ("direct", "eliminate"):
                    got = t_density(g, col, f, mode, method)
                    assert got == pytest.approx(want, rel=1e-12)


class TestDecorations:
    def test_uniform_matches_density_bit_exactly(self, c6):
        rng = random.Random(8)
        f = rand_kernel(rng, 2, 3)
        col = EdgeColouring((1, 0, 0, 1, 1, 0))
        assert t_decoration(c6, col, Decoration.uniform(f, 6)) == \
            t_density(c6, col, f)

    def test_all_ones_edge_reduces_to_path(self, c4, alt4):
        # decorating one edge with the constant 1 integrates it out
        rng = random.Random(9)
        f = rand_kernel(rng, 2, 2)
        kernels = [f, f, f, StepKernel.constant(1.0, 2, 2)]
        val = t_decoration(c4, alt4, Decoration(tuple(kernels)))
        from gnorm.graphs import path
        p3 = path(3)
        # the remaining three edges of the square form a 3-edge path whose
        # colouring inherits 1, 0, 1
        want = t_density(p3, EdgeColouring((1, 0, 1)), f)
        assert val == pytest.approx(want, rel=1e-10)

    def test_zero_kernel_wipes_out(self, c4, alt4):
        rng = random.Random(10)
        f = rand_kernel(rng, 2, 2)
        kernels = [f, f, StepKernel.constant(0.0, 2, 2), f]
        assert t_decoration(c4, alt4, Decoration(tuple(kernels))) == 0

    def test_real_multilinearity(self, c4, alt4):
        rng = random.Random(11)
        f, g2, h = (rand_kernel(rng, 2, 2) for _ in range(3))
        a = 0.375
        combined = [f, g2.add(h.scale(a)), f, f]
        base = [f, g2, f, f]
        bump = [f, h, f, f]
        lhs = t_decoration(c4, alt4, Decoration(tuple(combined)))
        rhs = t_decoration(c4, alt4, Decoration(tuple(base))) + \
            a * t_decoration(c4, alt4, Decoration(tuple(bump)))
        assert lhs == pytest.approx(rhs, rel=1e-10)


class TestAxioms:
    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=20, deadline=None)
    def test_conjugation(self, seed):
        rng = random.Random(seed)
        g = cycle(6)
        f = rand_kernel(rng, 2, 2)
        a = EdgeColouring(tuple(rng.randint(0, 1) for _ in range(6)))
        lhs = t_density(g, a.conjugate(), f)
        rhs = t_density(g, a, f).conjugate()
        assert lhs == pytest.approx(rhs, abs=1e-12)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=15, deadline=None)
    def test_tensor_multiplicativity(self, seed):
        rng = random.Random(seed)
        g = cycle(4)
        f1, f2 = rand_kernel(rng, 2, 2), rand_kernel(rng, 2, 2)
        a = EdgeColouring(tuple(rng.randint(0, 1) for _ in range(4)))
        lhs = t_density(g, a, f1.tensor(f2))
        rhs = t_density(g, a, f1) * t_density(g, a, f2)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)

    def test_real_kernel_colouring_independent(self):
        rng = random.Random(12)
        for g in (cycle(4), cycle(6)):
            f = StepKernel.from_real(
                [[rng.uniform(-1, 1) for _ in range(3)] for _ in range(2)]
            )
            vals = {
                t_density(g, EdgeColouring(bits), f)
                for bits in product((0, 1), repeat=g.n_edges)
            }
            base = vals.pop()
            assert all(v == pytest.approx(base, rel=1e-12) for v in vals)


class TestDualPath:
    def test_q3_agreement(self):
        rng = random.Random(13)
        q3 = hypercube(3)
        f = rand_kernel(rng, 4, 4)
        col = EdgeColouring(tuple(rng.randint(0, 1) for _ in range(12)))
        d = t_density(q3, col, f, "conjugate", "direct")
        e = t_density(q3, col, f, "conjugate", "eliminate")
        assert d == pytest.approx(e, rel=1e-12)

    def test_direct_cap(self):
        q3 = hypercube(3)
        f = StepKernel.constant(1.0, 4, 4)
        with pytest.raises(CapExceeded):
            t_density(q3, EdgeColouring((1,) * 12), f, "conjugate", "direct",
                      RunConfig(cap_assignments=1000))


class TestColouringScans:
    def test_smax_real_kernel(self, c4):
        f = StepKernel.from_real([[0.3, 0.9], [0.7, 0.2]])
        res = s_max(c4, f)
        want = abs(t_density(c4, EdgeColouring((1,) * 4), f))
        assert res.value == pytest.approx(want)
        assert res.argmax.colours == (0, 0, 0, 0)  # ties resolve to lex-least

    def test_smax_complex_balanced_attains(self, c4, alt4):
        # the max ties between the monochromatic and alternating colourings,
        # so the lex-least argmax is unbalanced; a balanced one still attains
        f = StepKernel(((1, 1j), (1j, 1)))
        res = s_max(c4, f)
        brute = max(
            abs(t_density(c4, EdgeColouring(bits), f))
            for bits in product((0, 1), repeat=4)
        )
        assert res.value == pytest.approx(brute)
        assert abs(t_density(c4, alt4, f)) == pytest.approx(res.value)
        assert res.argmax.colours == (0, 0, 0, 0)

    def test_smax_constant(self, c6):
        res = s_max(c6, StepKernel.constant(0.5 + 0.5j))
        assert res.value == pytest.approx(abs(0.5 + 0.5j) ** 6)

    def test_rho_symmetric_real(self, c4):
        f = StepKernel.from_real([[0.3, 0.9], [0.9, 0.2]])
        t = abs(t_density(c4, EdgeColouring((1,) * 4), f, "transpose"))
        for m in (1, 2, 3):
            assert rho_2m(c4, f, m, "transpose") == \
                pytest.approx(16 ** (1 / (2 * m)) * t)

    def test_rho_single_edge(self):
        g = star(1)
        f = StepKernel.from_real([[0.25, 0.5], [0.75, 1.0]])
        t1 = t_density(g, EdgeColouring((1,)), f, "transpose").real
        t0 = t_density(g, EdgeColouring((0,)), f, "transpose").real
        assert rho_2m(g, f, 1, "transpose") == pytest.approx(
            math.sqrt(t1 ** 2 + t0 ** 2))

    def test_rho_dominates_envelope(self, c4):
        rng = random.Random(14)
        for _ in range(5):
            f = StepKernel.from_real(
                [[rng.uniform(-1, 1) for _ in range(2)] for _ in range(2)]
            )
            q = s_max(c4, f, "transpose").value
            prev = None
            for m in (1, 2, 4, 8):
                val = rho_2m(c4, f, m, "transpose")
                assert val >= q - 1e-9
                if prev is not None:
                    assert val <= prev + 1e-9  # decreasing towards the max
                prev = val
            assert rho_2m(c4, f, 16, "transpose") == pytest.approx(q, rel=0.2)


class TestTrigDensity:
    def test_h0_balance_indicator(self):
        h0 = TrigKernel.h0()
        for g in (cycle(4), cycle(6), hypercube(4)):
            for _ in range(3):
                pass
        g = cycle(4)
        assert trig_density(g, EdgeColouring((1, 0, 1, 0)), h0) == 1
        assert trig_density(g, EdgeColouring((1, 1, 1, 1)), h0) == 0
        q4 = hypercube(4)
        assert trig_density(q4, hypercube_beta(4), h0) == 1

    def test_hk_cycle_value(self, c4, alt4):
        assert trig_density(c4, alt4, TrigKernel.hk(8)) == pytest.approx(2)

    def test_hk_orientation_sum_on_hypercube(self):
        # 2970 balanced colourings of the 4-cube, all contributing one phase
        q4 = hypercube(4)
        val = trig_density(q4, hypercube_beta(4), TrigKernel.hk(3),
                           "orientation-sum")
        want = 2970 * cmath.exp(2j * math.pi * (2 * 16 - 32) / 3)
        assert val == pytest.approx(want)

    def test_constant_kernel(self, c4):
        c = 0.5 + 0.25j
        got = trig_density(c4, EdgeColouring((1, 1, 0, 1)), TrigKernel.constant(c))
        assert got == pytest.approx(c ** 3 * c.conjugate())

    def test_discretised_phase_kernel_matches_h0(self):
        # the roots-of-unity step kernel reproduces the balance indicator
        # once the grid is finer than every vertex degree
        g = cycle(6)
        pk = phase_kernel(3)
        for bits in product((0, 1), repeat=6):
            col = EdgeColouring(bits)
            want = 1.0 if is_balanced(g, col) else 0.0
            assert abs(t_density(g, col, pk) - want) < 1e-12


class TestPerturbation:
    def test_h0_orders(self, c6):
        alt = EdgeColouring((1, 0, 1, 0, 1, 0))
        coeffs = perturbation_coefficients(c6, alt, TrigKernel.h0(), {6})
        assert coeffs == {6: 1}

    def test_beta_counts_alternating_squares(self):
        q4 = hypercube(4)
        coeffs = perturbation_coefficients(q4, hypercube_beta(4),
                                           TrigKernel.h0(), {4})
        assert coeffs[4] == 8

    def test_hk_girth_coefficient(self, c4):
        # adjacent-pair square: phase exp(4*pi*i*(2-2)/8) doubled
        coeffs = perturbation_coefficients(c4, EdgeColouring((1, 1, 0, 0)),
                                           TrigKernel.hk(8), {4})
        assert coeffs[4] == pytest.approx(2)
        # three-one square: phase exp(4*pi*i*(3-2)/8) = i/sqrt... gives Re 0
        coeffs = perturbation_coefficients(c4, EdgeColouring((1, 1, 1, 0)),
                                           TrigKernel.hk(8), {4})
        assert coeffs[4].real == pytest.approx(0, abs=1e-12)
        assert abs(coeffs[4]) == pytest.approx(2)

    def test_wrapper_and_bad_orders(self, c6):
        alt = EdgeColouring((1, 0, 1, 0, 1, 0))
        wrapped = OnePlusEps(TrigKernel.h0())
        assert perturbation_coefficients(c6, alt, wrapped, {6}) == {6: 1}
        with pytest.raises(UnsupportedOrder):
            perturbation_coefficients(c6, alt, TrigKernel.h0(), {10})
        with pytest.raises(UnsupportedOrder):
            perturbation_coefficients(c6, alt, TrigKernel.hk(2), {8})

    def test_expansion_matches_series(self):
        # t(1 + eps*h0-discretised) should shadow 1 + eps^g*kappa_g up to g+2
        g = cycle(4)
        alt = EdgeColouring((1, 0, 1, 0))
        pk = phase_kernel(5)
        eps = 1 / 64
        direct = t_density(g, alt, perturbed_step(pk, eps))
        assert direct == pytest.approx(1 + eps ** 4, rel=1e-9)


def perturbed_step(h, eps):
    return StepKernel(tuple(tuple(1 + eps * x for x in row) for row in h.values))


class TestSecondOrder:
    def test_two_path_integrals_oriented_star(self):
        rng = random.Random(15)
        h = StepKernel.from_real(
            [[rng.uniform(-1, 1) for _ in range(3)] for _ in range(3)]
        )
        i1, i2, i3 = two_path_integrals(h)
        k12 = star(2)
        # out-out orientation: quadratic coefficient is exactly I1
        exp = second_order_expansion(k12, EdgeColouring((1, 1)), h)
        assert exp.c2 == pytest.approx(i1)
        # in-in gives I2, mixed gives I3
        assert second_order_expansion(k12, EdgeColouring((0, 0)), h).c2 == \
            pytest.approx(i2)
        assert second_order_expansion(k12, EdgeColouring((1, 0)), h).c2 == \
            pytest.approx(i3)

    def test_centre_inequality_strict_for_asymmetric(self):
        h = StepKernel.from_real([[0, 1], [-1, 0]])  # antisymmetric
        i1, i2, i3 = two_path_integrals(h)
        assert i1 + i2 - 2 * i3 > 0

    def test_zero_kernel(self, c4, alt4):
        exp = second_order_expansion(c4, alt4, StepKernel.constant(0.0, 2, 2))
        assert (exp.c0, exp.c1, exp.c2) == (1.0, 0.0, 0.0)

    def test_prediction_has_cubic_residual(self):
        rng = random.Random(16)
        h = StepKernel.from_real(
            [[rng.uniform(-1, 1) for _ in range(3)] for _ in range(3)]
        )
        for g, col in ((cycle(4), EdgeColouring((1, 0, 1, 0))),
                       (cycle(6), EdgeColouring((1, 0, 1, 0, 1, 0))),
                       (star(2), EdgeColouring((1, 0)))):
            exp = second_order_expansion(g, col, h)
            for eps in (0.125, -0.125, 0.0625, -0.0625):
                direct = t_density(g, col, perturbed_step(h, eps), "transpose").real
                assert abs(direct - exp.predict(eps)) <= \
                    expansion_tail_bound(g, h, eps) + 1e-12

    def test_requires_real_square(self, c4, alt4):
        with pytest.raises(ShapeMismatch):
            second_order_expansion(c4, alt4, StepKernel.constant(1.0, 2, 3))
        with pytest.raises(ValueError):
            second_order_expansion(c4, alt4, StepKernel.constant(1j, 2, 2))


class TestRhoConjugateMode:
    def test_power_sum_is_real_for_complex_kernels(self, c4):
        # conjugate colourings contribute conjugate values, so the power sum
        # is real even for complex kernels
        rng = random.Random(77)
        f = rand_kernel(rng, 2, 2)
        val = rho_2m(c4, f, 2, "conjugate")
        assert val >= 0
        brute = sum(
            t_density(c4, EdgeColouring(bits), f) ** 4
            for bits in product((0, 1), repeat=4)
        )
        assert abs(brute.imag) < 1e-12
        assert val == pytest.approx(max(brute.real, 0) ** 0.25)
