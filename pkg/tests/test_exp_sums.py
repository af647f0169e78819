import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vmvt.errors import InvalidDegree
from vmvt.exp_sums import (PhaseVector, dirichlet_approx, equidistribution_min, eval_f, eval_g,
                           is_minor_arc, vinogradov_envelope, vinogradov_sigma, weyl_envelope)

PHI = (1 + math.sqrt(5)) / 2
TWO_PI_LD = np.longdouble("6.28318530717958647692528676655900577")


def extended_reference(m, X):
    """``sum e(sum_j m_j x^j / 2^53)`` from exact integer phases and long-double trig.

    ``x^j`` and the products wrap mod ``2^64`` in uint64, which is exact mod
    ``2^53``; the 53-bit numerator fits the long-double mantissa.
    """
    x = np.arange(1, X + 1, dtype=np.uint64)
    num = np.zeros(X, dtype=np.uint64)
    xp = np.ones(X, dtype=np.uint64)
    for mj in m:
        xp = xp * x
        num = num + np.uint64(mj) * xp
    num &= np.uint64((1 << 53) - 1)
    theta = num.astype(np.longdouble) / np.longdouble(2**53)
    ang = TWO_PI_LD * theta
    return complex(np.sum(np.cos(ang), dtype=np.longdouble), np.sum(np.sin(ang), dtype=np.longdouble))


def mp_reference(alpha, X):
    with mpmath.workdps(40):
        tot = mpmath.mpc(0)
        coeffs = [mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator for a in alpha]
        for x in range(1, X + 1):
            tot += mpmath.expjpi(2 * mpmath.fsum(c * x ** (j + 1) for j, c in enumerate(coeffs)))
        return complex(tot)


class TestEvalF:
    def test_zero_phase(self):
        assert eval_f([0, 0, 0], 13) == 13 + 0j

    def test_alternating(self):
        assert abs(eval_f([Fraction(1, 2)], 4)) < 1e-15

    def test_rational_against_exact_phases(self):
        a = [Fraction(1, 3), Fraction(1, 7)]
        ref = sum(cmath.exp(2j * math.pi * float((a[0] * x + a[1] * x * x) % 1))
                  for x in range(1, 101))
        assert abs(eval_f(a, 100) - ref) < 1e-10

    def test_mpmath_spot_checks(self):
        rng = np.random.default_rng(7)
        for k, X in [(2, 1500), (3, 1000), (5, 800)]:
            alpha = [float(v) for v in rng.random(k)]
            assert abs(eval_f(alpha, X) - mp_reference(alpha, X)) < 1e-11

    def test_extended_reference_agrees_with_mpmath(self):
        m = [123456789012345, 987654321098765, 5555555555555]
        alpha = [Fraction(v, 2**53) for v in m]
        assert abs(extended_reference(m, 700) - mp_reference(alpha, 700)) < 1e-12

    def test_extended_reference(self):
        rng = np.random.default_rng(2024)
        for _ in range(20):
            k = int(rng.integers(1, 6))
            X = int(rng.integers(1, 10**5))
            m = [int(v) for v in rng.integers(0, 2**53, size=k)]
            alpha = [Fraction(v, 2**53) for v in m]
            assert abs(eval_f(alpha, X) - extended_reference(m, X)) < 1e-9

    def test_large_degree_stays_exact(self):
        # x^8 for x near 10^6 is far beyond 2^53; rational mode reduces exactly
        a = [0] * 7 + [Fraction(1, 3)]
        z = eval_f(a, 10**6)
        # x^8 mod 3 is 0 when 3 | x, else 1
        n0 = 10**6 // 3
        expected = n0 + (10**6 - n0) * cmath.exp(2j * math.pi / 3)
        assert abs(z - expected) < 1e-6

    @given(st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=4),
           st.integers(1, 3000))
    @settings(max_examples=40, deadline=None)
    def test_conjugate_symmetry(self, alpha, X):
        neg = PhaseVector.of(alpha).negated()
        assert abs(eval_f(neg, X) - eval_f(alpha, X).conjugate()) < 1e-12

    @given(st.lists(st.floats(-5, 5), min_size=1, max_size=4), st.integers(1, 3000))
    @settings(max_examples=40, deadline=None)
    def test_triangle_bound(self, alpha, X):
        assert abs(eval_f(alpha, X)) <= X + 1e-6

    @given(st.lists(st.fractions(0, 1, max_denominator=10**6), min_size=1, max_size=4),
           st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(1, 2000))
    @settings(max_examples=40, deadline=None)
    def test_periodicity(self, alpha, shifts, X):
        moved = [a + s for a, s in zip(alpha, shifts)]
        assert eval_f(moved, X) == eval_f(alpha, X)

    @pytest.mark.parametrize("q", range(3, 100, 2))
    def test_quadratic_gauss_sums(self, q):
        for a in range(1, q):
            if math.gcd(a, q) == 1:
                assert abs(abs(eval_f([0, Fraction(a, q)], q)) - math.sqrt(q)) < 1e-8

    def test_workers_bit_identical(self):
        alpha = [math.sqrt(2) % 1, math.sqrt(3) % 1, math.pi % 1]
        ref = eval_f(alpha, 300_000, workers=1)
        for w in (2, 4, 8):
            assert eval_f(alpha, 300_000, workers=w) == ref


class TestEvalG:
    def test_examples(self):
        assert eval_g(0, 3, 9) == 9 + 0j
        assert abs(eval_g(Fraction(1, 2), 2, 2)) < 1e-15
        assert abs(eval_g(Fraction(1, 5), 3, 50) - eval_f([0, 0, Fraction(1, 5)], 50)) < 1e-12

    def test_invalid_degree(self):
        with pytest.raises(InvalidDegree):
            eval_g(0.1, 0, 5)


class TestDirichlet:
    def test_pi(self):
        r = dirichlet_approx(math.pi, 10)
        assert (r.a, r.q) == (22, 7)
        assert r.err == pytest.approx(abs(7 * math.pi - 22), abs=1e-12)
        r = dirichlet_approx(math.pi % 1, 10)
        assert (r.a, r.q) == (1, 7)
        assert r.err == pytest.approx(0.00885, abs=1e-5)

    def test_trivial(self):
        r = dirichlet_approx(0, 5)
        assert (r.a, r.q, r.err) == (0, 1, 0.0)
        r = dirichlet_approx(Fraction(1, 3), 10)
        assert (r.a, r.q, r.err) == (1, 3, 0.0)

    @pytest.mark.parametrize("Q", [10, 100, 1000])
    def test_postconditions_random(self, Q):
        rng = np.random.default_rng(Q)
        for alpha in rng.random(10_000):
            r = dirichlet_approx(float(alpha), Q)
            exact = abs(r.q * Fraction(float(alpha)) - r.a)
            assert 1 <= r.q <= Q
            assert math.gcd(r.a, r.q) == 1
            assert exact < Fraction(1, Q)

    def test_invalid_Q(self):
        with pytest.raises(ValueError):
            dirichlet_approx(0.3, 0)


def minor_arc_scan(beta: Fraction, k, X):
    bound = Fraction(1, X ** (k - 1))
    for q in range(1, X + 1):
        for a in (math.floor(q * beta), math.ceil(q * beta)):
            if math.gcd(a, q) == 1 and abs(q * beta - a) <= bound:
                return False
    return True


class TestMinorArc:
    def test_examples(self):
        assert is_minor_arc(Fraction(1, 2), 3, 10) is False
        assert is_minor_arc(PHI % 1, 3, 100) is True
        assert is_minor_arc(Fraction(1, 11), 2, 10) is minor_arc_scan(Fraction(1, 11), 2, 10)
        assert is_minor_arc(Fraction(1, 11), 2, 10) is False

    def test_against_scan(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            X = int(rng.integers(1, 201))
            k = int(rng.integers(2, 4))
            beta = Fraction(float(rng.random()))
            assert is_minor_arc(beta, k, X) is minor_arc_scan(beta, k, X)

    @given(st.fractions(0, 1, max_denominator=500), st.integers(2, 3), st.integers(1, 60))
    @settings(max_examples=100, deadline=None)
    def test_against_scan_rationals(self, beta, k, X):
        assert is_minor_arc(beta, k, X) is minor_arc_scan(beta, k, X)

    def test_degree_guard(self):
        with pytest.raises(InvalidDegree):
            is_minor_arc(0.3, 1, 10)


class TestEnvelopes:
    def test_weyl_q1(self):
        env = weyl_envelope(1, 2, 100)
        assert env.value == pytest.approx(100 * math.sqrt(1 + 0.01 + 1e-4), rel=1e-12)
        assert env.value >= 100

    def test_weyl_q100(self):
        assert weyl_envelope(100, 2, 100).value == pytest.approx(100 * math.sqrt(0.03), rel=1e-12)

    @pytest.mark.parametrize("X", [100.0, 10**4, 10**6])
    def test_weyl_minimizing_regime_k2(self, X):
        # q = X: base = 3/X, so the envelope is sqrt(3 X)
        assert weyl_envelope(int(X), 2, X).value == pytest.approx(math.sqrt(3 * X), rel=1e-12)

    @pytest.mark.parametrize("k,X", [(4, 100.0), (6, 10.0)])
    def test_weyl_minimizing_regime_even_k(self, k, X):
        q = round(X ** (k / 2))
        base = 2 * X ** (-k / 2) + 1 / X
        expected = X * base ** (2.0 ** (1 - k))
        assert weyl_envelope(q, k, X).value == pytest.approx(expected, rel=1e-12)

    def test_vinogradov_sigma(self):
        assert vinogradov_sigma(3) == 0.25
        assert 1 / vinogradov_sigma(7) == pytest.approx(60)
        assert 1 / vinogradov_sigma(7) < 2 ** (7 - 1)
        with pytest.raises(InvalidDegree):
            vinogradov_sigma(2)

    def test_vinogradov_envelope(self):
        for k in (3, 5, 7):
            assert vinogradov_envelope(1, k, k, 1000.0).value >= 1000
        with pytest.raises(ValueError):
            vinogradov_envelope(1, 1, 3, 10.0)

    def test_vinogradov_sharper_than_weyl_for_k7(self):
        X = 10.0**6
        q = int(X**3.5)
        assert vinogradov_envelope(q, 7, 7, X).value < weyl_envelope(q, 7, X).value

    def test_epsilon_scales(self):
        assert weyl_envelope(3, 2, 100, 0.5).value == pytest.approx(
            weyl_envelope(3, 2, 100).value * 10, rel=1e-12)


class TestEquidistribution:
    def test_examples(self):
        assert equidistribution_min([0, 0, 0], 10) == (1, 0.0)
        assert equidistribution_min([Fraction(1, 2), 0, 0], 10) == (2, 0.0)

    def test_irrational_triple(self):
        alpha = [math.sqrt(2) % 1, math.sqrt(3) % 1, math.sqrt(5) % 1]
        n, v = equidistribution_min(alpha, 10**6)
        assert v < (10**6) ** (0.05 - 1 / 8)
        # the reported minimiser reproduces the value exactly
        th = sum(Fraction(a) * n ** (j + 1) for j, a in enumerate(alpha)) % 1
        assert v == pytest.approx(float(min(th, 1 - th)), abs=1e-15)

    def test_against_naive_scan(self):
        alpha = [Fraction(3, 17), Fraction(5, 19)]
        vals = []
        for n in range(1, 201):
            th = (alpha[0] * n + alpha[1] * n * n) % 1
            vals.append(min(th, 1 - th))
        best = min(vals)
        assert equidistribution_min(alpha, 200) == (vals.index(best) + 1, float(best))

    def test_cap(self):
        with pytest.raises(ValueError):
            equidistribution_min([0.1], 10**8 + 1)
