import math

import pytest
from hypothesis import given, settings, strategies as st

from vmvt.errors import InvariantViolation, ResourceExceeded
from vmvt.mean_values import (SystemParams, check_newton_identity, count_diagonal,
                              count_in_progression, count_mean_value, count_over_values,
                              fit_empirical_exponent, lower_bound, lower_bound_certificate)

from oracles import J_naive, J_over, T_naive

# Pinned from the pure-Python oracle in tests/oracles.py (10^6 tuples).
J_3_2_10 = 5788


class TestExamples:
    def test_s1_k2(self):
        assert count_mean_value(SystemParams(1, 2, 7)) == 7

    @pytest.mark.parametrize("strategy", ["brute_force", "meet_in_middle"])
    def test_s2_k2_X4(self, strategy):
        assert count_mean_value(SystemParams(2, 2, 4), strategy) == 28

    @pytest.mark.parametrize("strategy", ["brute_force", "meet_in_middle"])
    def test_s3_k2_X10_regression(self, strategy):
        assert count_mean_value(SystemParams(3, 2, 10), strategy) == J_3_2_10

    @pytest.mark.slow
    def test_s3_k2_X10_oracle(self):
        assert J_naive(3, 2, 10) == J_3_2_10

    @pytest.mark.parametrize("s,X,T", [(1, 5, 5), (2, 4, 28), (3, 2, 20)])
    def test_diagonal(self, s, X, T):
        assert count_diagonal(s, X) == T

    def test_lower_bound_examples(self):
        assert lower_bound_certificate(SystemParams(3, 2, 4)) == (2, 256)
        assert lower_bound_certificate(SystemParams(1, 1, 1)) == (1, 1)
        L, J = lower_bound_certificate(SystemParams(2, 2, 4))
        assert (L, J) == (1, 28)

    @pytest.mark.parametrize("k,X", [(2, 4), (3, 6), (4, 4)])
    def test_newton_examples(self, k, X):
        assert check_newton_identity(k, X)

    def test_progression_examples(self):
        assert count_in_progression(SystemParams(2, 2, 9), 3, 1) == J_over([1, 4, 7], 2, 2)
        assert count_in_progression(SystemParams(2, 2, 9), 3, 1) == J_over([0, 1, 2], 2, 2)
        assert count_in_progression(SystemParams(3, 2, 12), 1, 0) == count_mean_value(
            SystemParams(3, 2, 12))
        assert count_in_progression(SystemParams(1, 1, 10), 2, 1) == 5

    def test_slope_examples(self):
        assert fit_empirical_exponent(1, 1, [10, 100, 1000]) == pytest.approx(1.0, abs=1e-12)
        assert 1.9 <= fit_empirical_exponent(2, 2, [50, 100, 200]) <= 2.1


class TestOracle:
    @pytest.mark.parametrize("s", [1, 2, 3])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_against_naive(self, s, k):
        for X in (1, 2, 5, 9):
            assert count_mean_value(SystemParams(s, k, X)) == J_naive(s, k, X)

    @pytest.mark.parametrize("s,X", [(1, 7), (2, 6), (3, 4)])
    def test_diagonal_against_naive(self, s, X):
        assert count_diagonal(s, X) == T_naive(s, X)

    @given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 20))
    @settings(max_examples=60, deadline=None)
    def test_strategies_agree(self, s, k, X):
        p = SystemParams(s, k, X)
        assert count_mean_value(p, "meet_in_middle") == count_mean_value(p, "brute_force")

    def test_s4_against_naive(self):
        assert count_mean_value(SystemParams(4, 2, 5)) == J_naive(4, 2, 5)


class TestInvariants:
    @given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 15))
    @settings(max_examples=40, deadline=None)
    def test_monotone_and_above_diagonal(self, s, k, X):
        J = count_mean_value(SystemParams(s, k, X))
        assert J <= count_mean_value(SystemParams(s, k, X + 1))
        assert J >= count_diagonal(s, X)

    @given(st.integers(2, 3), st.integers(1, 3), st.integers(1, 12))
    @settings(max_examples=30, deadline=None)
    def test_log_convexity(self, s, k, X):
        J = [count_mean_value(SystemParams(t, k, X)) for t in (s - 1, s, s + 1)]
        assert J[1] ** 2 <= J[0] * J[2]

    @given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 20))
    @settings(max_examples=40, deadline=None)
    def test_exact_lower_bound(self, s, k, X):
        J = count_mean_value(SystemParams(s, k, X))
        assert X ** (2 * s) <= J * math.prod(2 * s * X**j + 1 for j in range(1, k + 1))

    @given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 30), st.integers(1, 5),
           st.integers(-5, 5))
    @settings(max_examples=60, deadline=None)
    def test_translation_dilation(self, s, k, X, q, xi):
        if abs(xi) > q:
            xi = xi % q
        direct = [x for x in range(1, X + 1) if (x - xi) % q == 0]
        assert count_in_progression(SystemParams(s, k, X), q, xi) == J_over(direct, s, k)

    @pytest.mark.parametrize("X", [1, 2, 3])
    def test_newton_small(self, X):
        assert check_newton_identity(4, X)

    def test_real_height_is_floored(self):
        assert SystemParams(2, 2, 4.9).X == 4

    def test_count_over_arbitrary_values(self):
        vals = [-3, 0, 2, 7, 11]
        assert count_over_values(vals, 3, 2) == J_over(vals, 3, 2)
        assert count_over_values(vals, 3, 2, "brute_force") == J_over(vals, 3, 2)


class TestDeterminismAndErrors:
    @pytest.mark.parametrize("s,k,X", [(3, 2, 60), (3, 3, 20), (4, 2, 15)])
    def test_workers_do_not_change_result(self, s, k, X):
        p = SystemParams(s, k, X)
        ref = count_mean_value(p, workers=1)
        for w in (2, 4, 8):
            assert count_mean_value(p, workers=w) == ref
        assert count_mean_value(SystemParams(2, 2, 12), "brute_force", workers=4) == \
            count_mean_value(SystemParams(2, 2, 12), "brute_force", workers=1)

    def test_budget_exceeded(self):
        with pytest.raises(ResourceExceeded):
            count_mean_value(SystemParams(3, 2, 200), memory_budget=10_000)
        with pytest.raises(ResourceExceeded):
            count_mean_value(SystemParams(3, 2, 200), "brute_force", memory_budget=10_000)

    @pytest.mark.parametrize("args", [(0, 1, 1), (1, 0, 1), (1, 1, 0)])
    def test_invalid_params(self, args):
        with pytest.raises(ValueError):
            SystemParams(*args)

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            count_mean_value(SystemParams(1, 1, 3), "hashing")

    def test_slope_needs_three_heights(self):
        with pytest.raises(ValueError):
            fit_empirical_exponent(1, 1, [2, 3])

    def test_lower_bound_certificate_raises_on_bad_count(self, monkeypatch):
        import vmvt.mean_values as mv
        monkeypatch.setattr(mv, "count_mean_value", lambda *a, **kw: 0)
        with pytest.raises(InvariantViolation):
            mv.lower_bound_certificate(SystemParams(2, 2, 3))

    def test_large_counts_exact(self):
        # k = 1: J is the sum of squared coefficients of (t + ... + t^X)^s, far beyond 2^63
        s, X = 8, 200
        coeffs = [1]
        for _ in range(s):
            nxt = [0] * (len(coeffs) + X)
            for i, c in enumerate(coeffs):
                for d in range(1, X + 1):
                    nxt[i + d] += c
            coeffs = nxt
        expected = sum(c * c for c in coeffs)
        assert expected > 2**63
        assert count_mean_value(SystemParams(s, 1, X)) == expected
