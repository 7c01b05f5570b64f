import math

import pytest
from hypothesis import given, strategies as st

from knotsquares import numtheory as nt
from knotsquares.numtheory import Verdict

from oracles import coprime_pairs, lattice_r2, roots_minus_one, trial_factor


class TestFactorize:
    def test_small(self):
        assert list(nt.factorize(1)) == []
        assert list(nt.factorize(77)) == [(7, 1), (11, 1)]
        assert list(nt.factorize(985)) == [(5, 1), (197, 1)]

    @given(st.integers(1, 10**6))
    def test_matches_trial_division(self, n):
        f = nt.factorize(n)
        assert list(f) == trial_factor(n)
        assert f.value == n

    def test_rho_path(self):
        # both factors above the trial-division limit
        n = 1000003 * 1000033
        assert list(nt.factorize(n)) == [(1000003, 1), (1000033, 1)]
        assert nt.factorize(2**5 * 1000003**2).value == 2**5 * 1000003**2

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            nt.factorize(0)


class TestTwoSquares:
    def test_examples(self):
        assert nt.r2(1) == 1
        assert nt.r2(77) == 0
        assert nt.r2(325) == 6
        assert nt.r2_0(5) == 2
        assert nt.r2_0(49) == 0
        assert nt.r2_0(325) == 4
        assert [tuple(d[:2]) for d in nt.two_square_decompositions(325)] == [(1, 18), (6, 17), (10, 15)]
        assert nt.two_square_decompositions(5) == [(1, 2, 5)]
        assert nt.two_square_decompositions(77) == []

    def test_closed_forms_against_lattice_count(self):
        for n in range(1, 10**4 + 1):
            assert nt.r2(n) == lattice_r2(n), n
            if n > 1:
                assert nt.r2_0(n) == coprime_pairs(n), n

    def test_decompositions_agree_with_tests(self):
        for n in range(1, 5001, 2):
            has = bool(nt.two_square_decompositions(n))
            assert has == bool(nt.is_sum_two_squares(n)) == (nt.r2(n) > 0), n

    def test_decomposition_count_symmetry(self):
        # each (a, b) with 0 < a < b contributes 2 ordered pairs, a == b or a == 0 one
        for n in range(1, 3000):
            decs = nt.two_square_decompositions(n)
            ordered = sum(1 if (d.a == 0 or d.a == d.b) else 2 for d in decs)
            assert ordered == nt.r2(n), n

    def test_witness(self):
        t = nt.is_sum_two_squares(77)
        assert not t and t.witness == 7
        assert nt.is_sum_two_squares(9)
        big = nt.is_sum_two_squares(1000001)
        assert big and big.witness is None
        assert list(nt.factorize(1000001)) == [(101, 1), (9901, 1)]
        assert nt.two_square_decompositions(1000001)

    def test_totient_omega(self):
        assert (nt.totient(15), nt.omega(15)) == (8, 2)
        assert (nt.totient(1), nt.omega(1)) == (1, 0)
        assert (nt.totient(985), nt.omega(985)) == (784, 2)
        for n in range(1, 400):
            assert nt.totient(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class TestRootsOfMinusOne:
    def test_examples(self):
        assert nt.sqrt_minus_one_roots(5) == [2, 3]
        assert nt.sqrt_minus_one_roots(9) == []
        assert nt.sqrt_minus_one_roots(25) == [7, 18]

    def test_against_scan(self):
        for n in range(3, 2002, 2):
            roots = nt.sqrt_minus_one_roots(n)
            assert roots == roots_minus_one(n), n
            assert len(roots) == nt.r2_0(n), n

    @pytest.mark.parametrize("bad", [0, 1, 4, 10])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            nt.sqrt_minus_one_roots(bad)


class TestChirality:
    def test_examples(self):
        v = nt.chirality_filter(21)
        assert v.verdict is Verdict.CHIRAL_CERTIFIED and v.reason.startswith("nine")
        v = nt.chirality_filter(signed_det=-7)
        assert v.chiral and v.reason.startswith("sign")
        v = nt.chirality_filter(77)
        assert 77 % 36 in nt.ACHIRAL_RESIDUES_MOD_36
        assert v.chiral and v.reason.startswith("two-squares") and "witness 7" in v.reason

    def test_inconclusive(self):
        for d in (1, 5, 13, 25, 65):
            assert nt.chirality_filter(d).verdict is Verdict.INCONCLUSIVE

    def test_mod36_rule(self):
        v = nt.chirality_filter(7)
        assert v.chiral and v.reason.startswith("mod36")

    def test_rejects_even(self):
        with pytest.raises(ValueError):
            nt.chirality_filter(10)
        with pytest.raises(ValueError):
            nt.chirality_filter(5, signed_det=7)

    def test_sums_of_two_squares_hit_achiral_residues(self):
        residues = set()
        for n in range(1, 5001, 2):
            if nt.r2(n) > 0:
                assert n % 36 in nt.ACHIRAL_RESIDUES_MOD_36, n
                if n <= 200:
                    residues.add(n % 36)
        assert residues == set(nt.ACHIRAL_RESIDUES_MOD_36)

    def test_never_certifies_a_sum_of_two_squares(self):
        for n in range(1, 3001, 2):
            if nt.r2(n) > 0:
                assert not nt.chirality_filter(n).chiral, n


class TestFibonacciLucas:
    def test_seeds(self):
        assert [nt.fibonacci(i) for i in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
        assert [nt.lucas(i) for i in range(8)] == [2, 1, 3, 4, 7, 11, 18, 29]

    def test_examples(self):
        assert nt.fibonacci(7) == 13 == 2**2 + 3**2
        assert nt.lucas(7) + 2 * nt.lucas(6) == 65 == 4**2 + 7**2
        assert nt.fibonacci(3) == 2
        assert nt.fib_lucas_identities(3) == (True, True)
        assert nt.fib_lucas_identities(1) == (True, True)

    def test_shifted_lucas_seeds_break_identity(self):
        # with L1 = 2, L2 = 1 (an index shift) the identity fails at n = 3
        shifted = lambda i: nt.lucas(i - 1)  # noqa: E731
        lhs = shifted(7) + 2 * shifted(6)
        rhs = shifted(3) ** 2 + shifted(4) ** 2
        assert (lhs, rhs) == (40, 25)

    def test_identities_range(self):
        for n in range(41):
            assert nt.fib_lucas_identities(n) == (True, True), n
