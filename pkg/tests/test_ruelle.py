"""Tests for the Ruelle operator sections."""

import math
from fractions import Fraction

import numpy as np
import pytest

from kacbaker.errors import DomainError
from kacbaker.model import exact_trace_ruelle_power
from kacbaker.operators import (
    apply_parity_pointwise,
    apply_ruelle_pointwise,
    parity_matrices,
    ruelle_matrix,
    sinh_eigenvector,
    taylor_coefficients,
    truncated_trace_power,
)
from kacbaker.operators.matrix import Basis


def _poly(coeffs):
    coeffs = np.asarray(coeffs)

    def f(w):
        return complex(np.polyval(coeffs[::-1], w))

    return f


class TestRuelleMatrix:
    def test_golden_spectrum_is_diagonal(self, params):
        a = ruelle_matrix(0.0, 30, params).entries
        assert np.allclose(np.tril(a, -1), 0.0)
        assert np.allclose(np.diag(a), 2.0 * params.lam ** np.arange(30))

    def test_parity_zero_pattern(self, half):
        a = ruelle_matrix(1.1, 20, half).entries
        odd = np.add.outer(np.arange(20), np.arange(20)) % 2 == 1
        assert np.all(a[odd] == 0.0)

    def test_basis_and_shape(self, half):
        m = ruelle_matrix(0.5, 12, half)
        assert m.basis is Basis.MONOMIAL
        assert m.dim == 12
        assert not m.entries.flags.writeable

    @pytest.mark.parametrize("beta", [0.4, -0.9, 0.7 + 1.5j])
    def test_matches_pointwise_application(self, half, beta):
        coeffs = np.array([0.3, -1.0, 0.5, 0.0, 0.25])
        padded = np.zeros(60, dtype=complex)
        padded[: coeffs.size] = coeffs
        image = ruelle_matrix(beta, 60, half).entries @ padded
        for z in (0.2, -0.35 + 0.1j, 0.4j):
            lhs = complex(np.polyval(image[::-1], z))
            rhs = apply_ruelle_pointwise(beta, _poly(coeffs), z, half)
            assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-13)

    def test_conjugate_symmetry(self, third):
        a = ruelle_matrix(0.6 + 0.8j, 25, third).entries
        b = ruelle_matrix(0.6 - 0.8j, 25, third).entries
        assert np.allclose(b, a.conj(), rtol=1e-13, atol=0.0)

    def test_alternating_entries_against_exact_rationals(self, half):
        beta, N = Fraction(-3), 18
        lam = Fraction(1, 2)
        a = ruelle_matrix(float(beta), N, half).entries
        for m in range(N):
            for k in range(N):
                if (m + k) % 2:
                    assert a[m, k] == 0.0
                    continue
                terms = [Fraction(math.comb(k, i)) * beta ** (m - i) / math.factorial(m - i)
                         for i in range(min(k, m) + 1)]
                exact = 2 * lam**k * sum(terms)
                bound = 1e-13 * float(2 * lam**k * sum(abs(t) for t in terms))
                assert abs(a[m, k] - float(exact)) <= bound

    def test_large_beta_stays_finite(self, third):
        a = ruelle_matrix(40.0, 120, third).entries
        assert np.all(np.isfinite(a))

    def test_rejects_empty(self, half):
        with pytest.raises(DomainError):
            ruelle_matrix(1.0, 0, half)


@pytest.mark.parametrize("beta", [0.0, 0.8, -1.5, 0.3 + 0.9j])
def test_trace_powers_match_lattice(params, beta):
    L = ruelle_matrix(beta, 80, params)
    for n in (1, 2, 3):
        exact = exact_trace_ruelle_power(n, beta, params)
        assert truncated_trace_power(L, n) == pytest.approx(exact, rel=1e-9)


def test_trace_power_through_eigenvalues(third):
    L = ruelle_matrix(0.5, 60, third)
    exact = exact_trace_ruelle_power(6, 0.5, third)
    assert truncated_trace_power(L, 6) == pytest.approx(exact, rel=1e-8)


def test_trace_power_rejects_zero(half):
    with pytest.raises(DomainError):
        truncated_trace_power(ruelle_matrix(0.5, 5, half), 0)


class TestParity:
    def test_blocks_partition_the_spectrum(self, half):
        full = np.sort_complex(np.linalg.eigvals(ruelle_matrix(0.9, 20, half).entries))
        pair = parity_matrices(0.9, 20, half)
        blocks = np.sort_complex(np.concatenate([np.linalg.eigvals(pair.even.entries),
                                                 np.linalg.eigvals(pair.odd.entries)]))
        assert np.allclose(full, blocks, rtol=1e-8, atol=1e-10)
        assert pair.even.parity == "even"
        assert pair.odd.parity == "odd"

    def test_pointwise_parity_operators(self, half):
        even = _poly([1.0, 0.0, -0.5, 0.0, 0.2])
        odd = _poly([0.0, 1.0, 0.0, 0.3])
        for z in (0.1, -0.3 + 0.2j):
            assert apply_parity_pointwise(0.7, even, z, half, 1) == pytest.approx(
                apply_ruelle_pointwise(0.7, even, z, half))
            assert apply_parity_pointwise(0.7, odd, z, half, -1) == pytest.approx(
                apply_ruelle_pointwise(0.7, odd, z, half))

    def test_bad_sign(self, half):
        with pytest.raises(DomainError):
            apply_parity_pointwise(0.7, _poly([1.0]), 0.1, half, 0)


def test_sinh_eigenfunction_at_half(half):
    beta = 0.8
    v = sinh_eigenvector(beta, 60)
    image = ruelle_matrix(beta, 60, half).entries @ v
    assert np.allclose(image[:30], math.exp(beta) * v[:30], rtol=1e-10, atol=1e-14)


def test_taylor_coefficients_of_exponential():
    coeffs = taylor_coefficients(lambda w: np.exp(w), 12)
    expected = np.array([1.0 / math.factorial(k) for k in range(12)])
    assert np.allclose(coeffs, expected, rtol=1e-10, atol=1e-14)
