"""Multiplier formulas against independent oracles (mpmath, direct quadrature)."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from coslab import multipliers as m
from coslab.errors import (
    ExcludedParameterError,
    GammaPoleError,
    UnknownConstantError,
)

SQRT_PI = math.sqrt(math.pi)


def mp_gamma_ratio(numerators, denominators):
    """Independent high-precision gamma-ratio oracle."""
    with mpmath.workdps(50):
        value = mpmath.mpf(1)
        for a in numerators:
            value *= mpmath.gamma(a)
        for b in denominators:
            value /= mpmath.gamma(b)
        return float(value)


def legendre_at_zero(j):
    """P_j(0) by the plain three-term recurrence at x = 0."""
    values = [1.0, 0.0]
    for k in range(2, j + 1):
        values.append(-(k - 1) * values[k - 2] / k)
    return values[j]


class TestSigma:
    def test_circle(self):
        assert m.sigma(2) == pytest.approx(2 * math.pi, abs=1e-12)

    def test_sphere(self):
        assert m.sigma(3) == pytest.approx(4 * math.pi, abs=1e-12)

    def test_glome(self):
        assert m.sigma(4) == pytest.approx(2 * math.pi ** 2, abs=1e-12)


class TestExcluded:
    @pytest.mark.parametrize("n,alpha,family,expected", [
        (3, 1.0, "M", True),
        (3, 0.5, "M", False),
        (5, -2.0, "K_class", True),
        (3, 3.0, "Q", True),
        (3, 2.0, "Q", False),
        (4, 7.0, "M", True),
        (3, -1.0, "M", False),
        (5, 5.0, "K_class", True),
    ])
    def test_lattices(self, n, alpha, family, expected):
        assert m.excluded(n, alpha, family) is expected

    def test_r_family_lattice(self):
        assert m.excluded(3, 2.0, "R_i", i=1)
        assert not m.excluded(3, 1.5, "R_i", i=1)
        assert m.excluded(3, 1.0, "R_i", i=2)

    def test_pole_guard_width(self):
        assert m.excluded(3, 1.0 + 5e-9, "M")
        assert not m.excluded(3, 1.0 + 1e-6, "M")


class TestCosineMultiplier:
    def test_constant_value(self):
        # Gamma(1/4) / Gamma(5/4) = 4
        assert m.m_mult(3, 0, 0.5) == pytest.approx(4.0, rel=1e-13)

    def test_odd_degree_annihilated(self):
        assert m.m_mult(3, 1, 0.5) == 0.0
        assert m.m_mult(5, 7, -0.3) == 0.0

    def test_degree_two_at_zero_order(self):
        assert m.m_mult(3, 2, 0.0) == pytest.approx(-SQRT_PI / 2, rel=1e-13)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
    @pytest.mark.parametrize("alpha", [-3.3, -0.7, 0.25, 0.8, 2.6])
    def test_against_mpmath(self, n, alpha):
        for j in (0, 2, 6, 40, 200):
            sign = -1.0 if (j // 2) % 2 else 1.0
            want = sign * mp_gamma_ratio([(j + 1 - alpha) / 2],
                                         [(j + n - 1 + alpha) / 2])
            assert m.m_mult(n, j, alpha) == pytest.approx(want, rel=1e-12)

    def test_excluded_raises(self):
        with pytest.raises(ExcludedParameterError):
            m.m_mult(3, 2, 1.0)
        with pytest.raises(ExcludedParameterError):
            m.m_mult(4, 0, 5.0)

    def test_sign_alternation_in_safe_band(self):
        # for 1-n < alpha < 1 the gamma ratio is positive
        for n in (2, 3, 5):
            for alpha in np.linspace(1.0 - n + 0.05, 0.95, 7):
                for j in range(0, 21, 2):
                    value = m.m_mult(n, j, float(alpha))
                    assert math.copysign(1, value) == (-1.0) ** (j // 2)


class TestSineMultiplier:
    def test_order_one_constant(self):
        assert m.q_mult(3, 0, 1.0) == pytest.approx(math.pi, rel=1e-13)

    def test_order_one_degree_two(self):
        assert m.q_mult(3, 2, 1.0) == pytest.approx(math.pi / 4, rel=1e-13)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_identity_at_zero(self, n):
        for j in range(0, 40, 2):
            assert m.q_mult(n, j, 0.0) == 1.0

    def test_odd_degree_annihilated(self):
        assert m.q_mult(3, 3, 1.0) == 0.0

    def test_against_mpmath(self):
        for n, j, alpha in [(3, 4, 1.7), (5, 10, -2.3), (4, 0, 0.6), (8, 20, 2.2)]:
            want = mp_gamma_ratio([(j + n - 1 - alpha) / 2, (j + 1) / 2],
                                  [(j + alpha + 1) / 2, (j + n - 1) / 2])
            assert m.q_mult(n, j, alpha) == pytest.approx(want, rel=1e-12)

    def test_degree_specific_pole_raises(self):
        # alpha = n - 1 puts Gamma(0) in the numerator at degree 0
        with pytest.raises(GammaPoleError):
            m.q_mult(3, 0, 2.0)

    def test_excluded_raises(self):
        with pytest.raises(ExcludedParameterError):
            m.q_mult(3, 0, 3.0)


class TestPoissonAverages:
    def test_plus_example(self):
        assert m.qpm_mult(3, 0, 1.0, 2.0, "plus") == pytest.approx(2 / SQRT_PI,
                                                                   rel=1e-13)

    def test_minus_example(self):
        assert m.qpm_mult(3, 0, 1.0, 2.0, "minus") == pytest.approx(SQRT_PI,
                                                                    rel=1e-13)

    @pytest.mark.parametrize("j", [0, 1, 2, 5, 8])
    def test_plus_against_beta_integral(self, j):
        # multiplier of (2/Gamma(mu/2)) int_0^1 (1-t^2)^(mu/2-1) t^(j+n-nu) dt
        n, mu, nu = 3, 0.9, 1.7
        want, _ = quad(lambda t: 2 / math.gamma(mu / 2)
                       * (1 - t * t) ** (mu / 2 - 1) * t ** (j + n - nu), 0, 1)
        assert m.qpm_mult(n, j, mu, nu, "plus") == pytest.approx(want, rel=1e-9)

    @pytest.mark.parametrize("j", [0, 1, 2, 5, 8])
    def test_minus_against_beta_integral(self, j):
        # multiplier of (2/Gamma(mu/2)) int_1^inf (t^2-1)^(mu/2-1) t^(1-nu) t^(-j) dt
        n, mu, nu = 3, 0.9, 1.7
        want, _ = quad(lambda t: 2 / math.gamma(mu / 2)
                       * (t * t - 1) ** (mu / 2 - 1) * t ** (1 - nu - j), 1, np.inf)
        assert m.qpm_mult(n, j, mu, nu, "minus") == pytest.approx(want, rel=1e-9)


class TestBridgeMultiplier:
    def test_equal_orders_is_identity(self):
        for j in range(0, 9):
            assert m.a_mult(3, j, 0.7, 0.7) == 1.0

    def test_ratio_of_cosine_multipliers(self):
        # independent-oracle ratio at (alpha, beta) = (0.5, -0.5), degree 0
        want = mp_gamma_ratio([0.25], [1.25]) / mp_gamma_ratio([0.75], [0.75])
        assert m.a_mult(3, 0, 0.5, -0.5) == pytest.approx(want, rel=1e-12)
        assert want == pytest.approx(4.0, rel=1e-12)

    @pytest.mark.parametrize("n,j,alpha,beta", [
        (3, 4, 1.2, 0.3), (3, 0, 0.5, -0.5), (5, 10, 2.3, -1.1), (2, 6, 0.4, -2.6),
    ])
    def test_factorization(self, n, j, alpha, beta):
        # the plus factor carries nu = 2 - beta (nu = 1 - beta leaves a
        # half-step mismatch in the gamma arguments)
        mu = alpha - beta
        prod = (m.qpm_mult(n, j, mu, 2.0 - beta, "plus")
                * m.qpm_mult(n, j, mu, 1.0 - beta, "minus"))
        assert prod == pytest.approx(m.a_mult(n, j, alpha, beta), rel=1e-12)

    def test_cosine_chain(self):
        for n in (2, 3, 5):
            for j in range(0, 30, 2):
                lhs = m.m_mult(n, j, 1.1)
                rhs = m.m_mult(n, j, -0.8) * m.a_mult(n, j, 1.1, -0.8)
                assert lhs == pytest.approx(rhs, rel=1e-11)


class TestFunkMultiplier:
    def test_constants_fixed(self):
        assert m.funk_mult(3, 0) == pytest.approx(1.0, rel=1e-13)

    @pytest.mark.parametrize("j", [0, 2, 4, 6, 8, 12, 20])
    def test_equals_legendre_at_zero(self, j):
        assert m.funk_mult(3, j) == pytest.approx(legendre_at_zero(j), rel=1e-12)

    def test_odd_degrees(self):
        assert m.funk_mult(3, 5) == 0.0
        assert m.funk_mult(7, 3) == 0.0

    def test_low_values(self):
        assert m.funk_mult(3, 2) == pytest.approx(-0.5, rel=1e-12)
        assert m.funk_mult(3, 4) == pytest.approx(0.375, rel=1e-12)


class TestPoissonMultiplier:
    def test_examples(self):
        assert m.poisson_mult(0, 0.5) == 1.0
        assert m.poisson_mult(3, 0.5) == 0.125
        assert m.poisson_mult(2, 0.0) == 0.0

    def test_domain(self):
        with pytest.raises(ValueError):
            m.poisson_mult(2, 1.0)


class TestConstants:
    def test_limit_constant(self):
        assert m.constant("c_limit", 3, i=2) == pytest.approx(SQRT_PI, rel=1e-13)

    def test_lambda_composition(self):
        # lambda / c_limit must invert the sine multiplier at degree 0
        for n in (3, 4, 5):
            for i in range(1, n):
                c = m.constant("c_radon_composite", n, i=i)
                assert c * m.q_mult(n, 0, float(i - 1)) == pytest.approx(1.0,
                                                                         rel=1e-12)

    def test_perp_swap_value(self):
        assert m.constant("c_perp_swap", 3, i=2) == pytest.approx(1 / SQRT_PI,
                                                                  rel=1e-13)

    def test_lambda_equals_gamma_ratio(self):
        assert m.constant("lambda1", 3, i=2) == pytest.approx(1 / SQRT_PI, rel=1e-13)
        assert m.constant("lambda2", 3, i=2) == m.constant("lambda1", 3, i=2)

    def test_ib_map(self):
        assert m.constant("ib_map", 3) == pytest.approx(math.pi, rel=1e-13)

    def test_gamma_alpha_matches_cosine_normalization(self):
        # gamma_alpha / alpha is the transform of the constant function
        alpha = 0.7
        got = m.constant("gamma_alpha", 3, alpha=alpha) / alpha
        assert got == pytest.approx(m.m_mult(3, 0, alpha), rel=1e-12)

    def test_unknown_name(self):
        with pytest.raises(UnknownConstantError):
            m.constant("nope", 3)


class TestInversionProperty:
    @given(st.integers(min_value=2, max_value=8),
           st.integers(min_value=0, max_value=100),
           st.floats(min_value=-6.0, max_value=6.0, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_product_with_reflected_order_is_one(self, n, half_j, alpha):
        j = 2 * half_j
        partner = 2.0 - n - alpha
        if m.excluded(n, alpha, "M") or m.excluded(n, partner, "M"):
            return
        assert m.m_mult(n, j, alpha) * m.m_mult(n, j, partner) == pytest.approx(
            1.0, abs=1e-10)

    @given(st.integers(min_value=2, max_value=6),
           st.integers(min_value=0, max_value=40),
           st.floats(min_value=-4.0, max_value=4.0, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_odd_degrees_always_vanish(self, n, half_j, alpha):
        j = 2 * half_j + 1
        if not m.excluded(n, alpha, "M"):
            assert m.m_mult(n, j, alpha) == 0.0
        if not m.excluded(n, alpha, "Q"):
            try:
                assert m.q_mult(n, j, alpha) == 0.0
            except m.GammaPoleError:
                pass


class TestIdentitySuite:
    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_all_pass(self, n):
        grid = [-5.85 + 0.3 * k for k in range(40)]
        reports = m.check_identities(n, 100, grid, tol=1e-10)
        for r in reports:
            assert r.passed, (r.identity, r.max_abs_err, r.max_rel_err)

    def test_reports_serializable(self):
        reports = m.check_identities(3, 20, [0.35, -1.15], tol=1e-10)
        for r in reports:
            d = r.to_dict()
            assert set(d) >= {"identity", "params", "max_abs_err", "max_rel_err",
                              "pass"}
