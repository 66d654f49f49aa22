"""Exact arithmetic predicates: class membership, admissibility, primes,
integrality."""

from fractions import Fraction
from math import comb

import pytest

from gnorm.errors import DegenerateParameters, OutOfScopeParameters
from gnorm.arithmetic import (
    class_A_membership,
    is_prime,
    is_prime_power,
    kneser_admissible,
    kneser_integrality_test,
    prime_divisor_pt,
    prime_in_range,
)


class TestPrimePowers:
    def test_values(self):
        assert is_prime_power(2) and is_prime_power(27) and is_prime_power(49)
        assert not is_prime_power(1) and not is_prime_power(12)
        assert is_prime(2) and not is_prime(1) and is_prime(97)


class TestClassMembership:
    def test_examples(self):
        assert class_A_membership(4, 1).case == 1
        assert class_A_membership(5, 2).case == 2
        assert class_A_membership(6, 3).case == 3
        assert class_A_membership(4, 3).case == 4
        assert class_A_membership(9, 7).case == 5
        assert not class_A_membership(7, 2)

    def test_duality_closure_fills_gaps(self):
        # the 3-graph of cyclic consecutive triples on 5 points exists, so
        # (5, 3) is a member even though no direct clause covers it
        res = class_A_membership(5, 3)
        assert res and res.via_dual

    def test_duality_exhaustive(self):
        for k in range(2, 17):
            for r in range(1, k):
                assert bool(class_A_membership(k, r)) == \
                    bool(class_A_membership(k, k - r))

    def test_guards(self):
        with pytest.raises(DegenerateParameters):
            class_A_membership(3, 3)
        with pytest.raises(DegenerateParameters):
            class_A_membership(3, 0)


class TestKneserAdmissible:
    def test_examples(self):
        assert kneser_admissible(3, 1).case == 1
        assert not kneser_admissible(4, 1)
        assert kneser_admissible(9, 3).case == 3
        assert kneser_admissible(7, 3).case == 4
        assert kneser_admissible(16, 7).case == 5
        assert not kneser_admissible(8, 3)

    def test_guards(self):
        with pytest.raises(DegenerateParameters):
            kneser_admissible(4, 2)


class TestPrimes:
    def test_prime_in_range(self):
        assert prime_in_range(2).prime == 3
        assert prime_in_range(3).prime == 5
        assert prime_in_range(4).prime == 7
        res = prime_in_range(5)
        assert res.prime is None and res.special_case
        assert prime_in_range(6).prime == 11

    def test_prime_divisor_values(self):
        assert prime_divisor_pt(2) == 3
        assert prime_divisor_pt(4) == 7
        assert prime_divisor_pt(5) == 3

    def test_prime_divisor_divisibility(self):
        for t in range(2, 30):
            p = prime_divisor_pt(t)
            assert comb(2 * t - 1, t) % p == 0
            assert comb(3 * t - 1, t - 1) % p != 0
            assert comb(3 * t - 1, t) % p != 0
            if t >= 4 and t % 2 == 0:
                assert all(m % p for m in range(2 * t, 3 * t + 2))


class TestIntegrality:
    def test_pinned_7_3(self):
        res = kneser_integrality_test(7, 3)
        assert res.d == Fraction(100, 3)
        assert not res.is_integer and res.case == "i"
        assert (res.t, res.k, res.s) == (2, 4, 1)

    def test_11_5(self):
        res = kneser_integrality_test(11, 5)
        assert not res.is_integer

    def test_case_ii(self):
        # r = 7 gives t = 4: both n = 16 and n = 17 fall under case ii
        for n in (16, 17):
            res = kneser_integrality_test(n, 7)
            assert res.case == "ii" and not res.is_integer

    def test_guards(self):
        with pytest.raises(OutOfScopeParameters):
            kneser_integrality_test(9, 3)  # n != 2r+1 and t = 2 odd-case only
        with pytest.raises(OutOfScopeParameters):
            kneser_integrality_test(7, 2)  # even r

    def test_non_integrality_grid(self):
        # every in-scope pair must come out non-integer; a transitive
        # colouring would make the count an integer, so this is the
        # obstruction doing its job across the board
        for r in range(3, 16, 2):
            res = kneser_integrality_test(2 * r + 1, r)
            assert not res.is_integer

    def test_formula_reconstruction(self):
        # recompute d from scratch for one case as an independent check
        n, r = 7, 3
        t, k = 2, 4
        s = k - r
        want = Fraction(2 * comb(n - t, t - 1) * comb(k, s - 1) * comb(3 * t - 1, t),
                        comb(2 * t - 1, t))
        assert kneser_integrality_test(n, r).d == want
