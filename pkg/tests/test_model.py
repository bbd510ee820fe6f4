"""Tests for parameters and exact enumeration."""

import itertools
import math

import numpy as np
import pytest

from kacbaker.errors import DomainError, ResourceLimitError
from kacbaker.model import (
    ModelParams,
    SpinConfig,
    exact_trace_gutzwiller_power,
    exact_trace_kac_power,
    exact_trace_ruelle_power,
    free_energy_estimate,
    log_partition_function,
    partition_function_exact,
    site_interaction_sum,
)


class TestModelParams:
    @pytest.mark.parametrize("lam", [0.0, 1.0, -0.2, 1.5, float("nan")])
    def test_rejects_lambda_outside_unit_interval(self, lam):
        with pytest.raises(DomainError):
            ModelParams(lam)

    def test_gamma_roundtrip(self):
        params = ModelParams.from_gamma(0.8)
        assert params.gamma == pytest.approx(0.8)
        assert params.lam == pytest.approx(math.exp(-0.8))

    def test_disc_radius_floor(self, half):
        assert half.disc_radius_floor == pytest.approx(1.0)


class TestSpinConfig:
    def test_rejects_bad_spins(self):
        with pytest.raises(DomainError):
            SpinConfig((1, 0, -1))
        with pytest.raises(DomainError):
            SpinConfig(())

    def test_from_index(self):
        assert SpinConfig.from_index(0b101, 3).spins == (1, -1, 1)
        assert SpinConfig.from_index(5, 3).flipped().spins == (-1, 1, -1)


class TestSiteInteraction:
    def test_matches_direct_sum(self, params):
        word = SpinConfig((1, -1, -1, 1, 1))
        n = word.n
        for k in range(n):
            direct = math.fsum(params.lam**j * word.spins[k] * word.spins[(k + j) % n] for j in range(1, 400))
            assert site_interaction_sum(word, k, params) == pytest.approx(direct, abs=1e-13)

    def test_index_out_of_range(self, half):
        with pytest.raises(IndexError):
            site_interaction_sum(SpinConfig((1, 1)), 2, half)


class TestPartitionFunction:
    def test_period_one(self, params):
        beta = 0.9
        expected = 2.0 * math.exp(beta * params.lam / (1.0 - params.lam))
        assert partition_function_exact(1, beta, params).real == pytest.approx(expected, rel=1e-14)

    def test_period_two(self, params):
        beta, lam = 1.1, params.lam
        expected = 2.0 * math.exp(2.0 * beta * lam / (1.0 - lam)) + 2.0 * math.exp(-2.0 * beta * lam / (1.0 + lam))
        assert partition_function_exact(2, beta, params).real == pytest.approx(expected, rel=1e-13)

    def test_infinite_temperature_counts_words(self, half):
        for n in range(1, 8):
            assert partition_function_exact(n, 0.0, half) == pytest.approx(2.0**n)

    def test_agrees_with_site_sums(self, params):
        n, beta = 4, 0.7
        total = math.fsum(
            math.exp(beta * sum(site_interaction_sum(SpinConfig(w), k, params) for k in range(n)))
            for w in itertools.product((1, -1), repeat=n)
        )
        assert partition_function_exact(n, beta, params).real == pytest.approx(total, rel=1e-12)

    @pytest.mark.parametrize("beta", [0.7, -1.2, 0.4 + 2.0j])
    def test_spin_flip_symmetry(self, half, beta):
        full = partition_function_exact(6, beta, half)
        halved = partition_function_exact(6, beta, half, use_symmetry=True)
        assert halved == pytest.approx(full, rel=1e-12)

    def test_chunked_parallel_matches_serial(self, half, monkeypatch):
        from kacbaker.config import config

        monkeypatch.setattr(config, "ENUM_CHUNK_BITS", 3)
        serial = partition_function_exact(9, 0.5, half)
        parallel = partition_function_exact(9, 0.5, half, jobs=4)
        assert parallel == pytest.approx(serial, rel=1e-14)

    def test_conjugate_beta(self, third):
        z = partition_function_exact(5, 0.3 + 1.1j, third)
        zc = partition_function_exact(5, 0.3 - 1.1j, third)
        assert zc == pytest.approx(z.conjugate(), rel=1e-13)

    def test_period_limits(self, half):
        with pytest.raises(DomainError):
            partition_function_exact(0, 1.0, half)
        with pytest.raises(ResourceLimitError):
            partition_function_exact(10, 1.0, half, n_max=8)


class TestTraces:
    def test_ruelle_and_gutzwiller_traces_coincide(self, half):
        for n in (1, 2, 3):
            assert exact_trace_ruelle_power(n, 1.0, half) == exact_trace_gutzwiller_power(n, 1.0, half)

    def test_ruelle_trace_normalization(self, third):
        z = partition_function_exact(3, 0.8, third)
        assert exact_trace_ruelle_power(3, 0.8, third) == pytest.approx(z / (1.0 - 0.3**3))

    def test_kac_trace(self, half):
        n, beta = 2, 0.6
        z = partition_function_exact(n, beta, half)
        expected = z / (2.0 * math.sinh(n * half.gamma / 2.0) * math.exp(-n * beta / 2.0))
        assert exact_trace_kac_power(n, beta, half) == pytest.approx(expected)


def test_free_energy_prefactor(half):
    beta, n = 1.3, 5
    z = partition_function_exact(n, beta, half).real
    assert free_energy_estimate(beta, n, half) == pytest.approx(-beta * math.log(z) / n)


def test_free_energy_requires_real_beta(half):
    with pytest.raises(DomainError):
        free_energy_estimate(1.0 + 0.5j, 3, half)


def test_free_energy_converges_with_period(half):
    values = np.array([free_energy_estimate(1.0, n, half) for n in (8, 10, 12)])
    assert abs(values[2] - values[1]) < abs(values[1] - values[0])


def test_log_partition_matches_direct_log(params):
    for n in (3, 6):
        z = partition_function_exact(n, 1.7, params).real
        assert log_partition_function(n, 1.7, params) == pytest.approx(math.log(z), rel=1e-13)
        assert log_partition_function(n, 1.7, params, use_symmetry=True) == pytest.approx(math.log(z), rel=1e-13)


def test_free_energy_finite_where_partition_function_overflows(half):
    # Z_2 = 2 e^{2 beta} + 2 e^{-2 beta / 3} at lam = 1/2
    beta = 800.0
    assert not math.isfinite(partition_function_exact(2, beta, half).real)
    expected = -beta * (math.log(2.0) + 2.0 * beta) / 2.0
    assert free_energy_estimate(beta, 2, half) == pytest.approx(expected, rel=1e-12)


def test_log_partition_function_requires_real_beta(half):
    with pytest.raises(DomainError):
        log_partition_function(3, 0.5j, half)
