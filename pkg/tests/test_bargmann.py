"""Tests for the Segal-Bargmann side."""

import math

import numpy as np
import pytest

from kacbaker.errors import DomainError, UnsupportedDomainError
from kacbaker.operators import (
    FockCoefficients,
    HermiteCoefficients,
    apply_ruelle_pointwise,
    bargmann_transform,
    c_s_apply,
    connection_forward,
    connection_inverse,
    cs_m_lambda_composite,
    fock_norm_sq,
    m_lambda_apply,
    verify_operator_identities,
)
from kacbaker.operators.bargmann import (
    bargmann_transform_quadrature,
    divide_by_weight,
    integrate_line,
    m_lambda_coefficients,
    rescaled_composite,
)
from kacbaker.operators.kacg import sqrt_cosh
from kacbaker.special import gaussian_rule, hermite_table

Z_POINTS = (0.3 + 0j, -0.5 + 0.4j, 1.2 - 0.3j, 0.7j)


def _weighted_coefficients(f: HermiteCoefficients, beta: float, K: int = 60) -> np.ndarray:
    rule = gaussian_rule(240)
    h = hermite_table(K, rule.nodes)
    s = sqrt_cosh(2.0 * math.sqrt(math.pi * beta) * rule.nodes)
    return (h * rule.weights) @ (s * f(rule.nodes))


class TestTransform:
    @pytest.mark.parametrize("k", [0, 1, 2, 5, 10])
    def test_basis_transport(self, k):
        f = HermiteCoefficients(np.eye(k + 1)[k])
        F = FockCoefficients.basis(k)
        for z in Z_POINTS:
            assert bargmann_transform_quadrature(f, z) == pytest.approx(F(z), rel=1e-9, abs=1e-12)

    def test_coefficient_route_is_exact(self):
        f = HermiteCoefficients([0.5, -1.0, 0.25j])
        z = 0.4 - 0.2j
        expected = 0.5 - 1.0 * math.sqrt(math.pi) * z + 0.25j * math.pi / math.sqrt(2.0) * z * z
        assert bargmann_transform(f, z) == pytest.approx(expected)

    def test_callable_route(self):
        f = HermiteCoefficients([1.0, 0.0, 0.3])
        z = -0.6 + 0.5j
        assert bargmann_transform(lambda x: f(x), z) == pytest.approx(bargmann_transform(f, z), rel=1e-10)

    def test_rejects_growing_input(self):
        with pytest.raises(DomainError):
            integrate_line(lambda x: np.exp(4.0 * x * x), what="test integrand")

    def test_rejects_non_finite_coefficients(self):
        with pytest.raises(DomainError):
            HermiteCoefficients([1.0, float("nan")])
        with pytest.raises(DomainError):
            FockCoefficients([])


class TestFockNorm:
    def test_routes_agree(self):
        F = FockCoefficients([0.5, -0.25 + 0.5j, 0.75, 0.1j])
        assert fock_norm_sq(F, route="quadrature") == pytest.approx(fock_norm_sq(F), rel=1e-10)

    def test_basis_is_normalized(self):
        for k in (0, 3, 7):
            assert fock_norm_sq(FockCoefficients.basis(k), route="quadrature") == pytest.approx(1.0, rel=1e-10)

    def test_unknown_route(self):
        with pytest.raises(DomainError):
            fock_norm_sq(FockCoefficients([1.0]), route="monte-carlo")


class TestFockOperators:
    def test_m_lambda_diagonal(self, half):
        F = FockCoefficients([1.0, 0.5, -0.2, 0.1])
        G = m_lambda_coefficients(F, half)
        for z in Z_POINTS:
            assert G(z) == pytest.approx(m_lambda_apply(F, z, half))

    def test_c_s_at_zero_is_identity(self):
        F = FockCoefficients([0.3, 1.0, -0.5])
        for z in Z_POINTS:
            assert c_s_apply(F, z, 0.0) == pytest.approx(F(z))

    def test_composite_is_c_s_after_m_lambda(self, third):
        F = FockCoefficients([0.3, 1.0, -0.5, 0.2])
        s = 0.9
        for z in Z_POINTS:
            lhs = cs_m_lambda_composite(F, z, s, third)
            rhs = c_s_apply(lambda w: m_lambda_apply(F, w, third), z, s)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    @pytest.mark.parametrize("beta", [0.7, 2.0, 1.3 + 0.4j])
    def test_conjugacy_with_ruelle(self, params, beta):
        F = FockCoefficients([1.0, 1.0, -0.5, 0.25])
        for z in Z_POINTS:
            lhs = rescaled_composite(F, z, beta, params)
            rhs = math.sqrt(params.lam) * np.exp(0.5 * beta) * apply_ruelle_pointwise(beta, F, z, params)
            assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_rescaling_needs_nonzero_beta(self, half):
        with pytest.raises(DomainError):
            rescaled_composite(FockCoefficients([1.0]), 0.1, 0.0, half)


def test_operator_identities_pass(half):
    report = verify_operator_identities(seeds=(0, 1), tol=1e-8, params=half)
    assert report.passed, [c.check_name for c in report.failures]
    names = set(report.max_deviation())
    assert {"basis_transport", "translation", "exponential", "m_lambda_diagonal", "ruelle_conjugacy"} <= names


def test_operator_identities_apply_tolerance_as_given(half):
    report = verify_operator_identities(seeds=(0,), tol=1e-30, params=half)
    failing = {c.check_name.split("[")[0] for c in report.failures}
    assert {"exponential", "translation"} <= failing


class TestConnection:
    def test_forward_is_bargmann_of_weighted_function(self, half):
        beta = 0.5
        f = HermiteCoefficients([0.8, 0.0, -0.3, 0.0, 0.1])
        weighted = FockCoefficients(_weighted_coefficients(f, beta))
        alpha = math.sqrt(beta / math.pi)
        for z in Z_POINTS:
            assert connection_forward(f, beta, z, half) == pytest.approx(weighted(alpha * z), rel=1e-8)

    def test_forward_at_zero_beta_is_constant_for_h0(self, half):
        f = HermiteCoefficients([1.0])
        values = [connection_forward(f, 0.0, z, half) for z in Z_POINTS]
        assert abs(values[0]) > 0.1
        for value in values[1:]:
            assert value == pytest.approx(values[0], rel=1e-12)

    def test_forward_at_zero_beta_vanishes_for_h1(self, half):
        f = HermiteCoefficients([0.0, 1.0])
        for z in Z_POINTS:
            assert abs(connection_forward(f, 0.0, z, half)) < 1e-12

    def test_inverse_recovers_weighted_coefficients(self):
        beta = 0.5
        c = np.array([0.8, 0.1, -0.3, 0.05, 0.1])
        k = np.arange(c.size)
        taylor = c * beta ** (k / 2.0) / np.sqrt([math.factorial(int(j)) for j in k])
        assert np.allclose(connection_inverse(taylor, beta).coeffs, c, rtol=1e-12)

    def test_divide_by_weight_undoes_the_weight(self):
        beta = 0.5
        f = HermiteCoefficients([0.8, 0.0, -0.3, 0.0, 0.1])
        weighted = HermiteCoefficients(_weighted_coefficients(f, beta))
        recovered = divide_by_weight(weighted, beta, 8)
        assert np.allclose(recovered.coeffs[:5], f.coeffs, atol=1e-8)
        assert np.allclose(recovered.coeffs[5:], 0.0, atol=1e-8)

    def test_domain(self, half):
        f = HermiteCoefficients([1.0])
        with pytest.raises(UnsupportedDomainError):
            connection_forward(f, -1.0, 0.1, half)
        with pytest.raises(UnsupportedDomainError):
            connection_forward(f, 1.0 + 1.0j, 0.1, half)
        with pytest.raises(DomainError):
            connection_inverse([1.0, 0.5], 0.0)
