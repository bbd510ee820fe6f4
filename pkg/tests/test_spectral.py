"""Tests for spectra, determinants, zeta values and zeros."""

import math

import numpy as np
import pytest

from kacbaker.errors import ConvergenceError, DomainError, UnsupportedDomainError
from kacbaker.model import ModelParams
from kacbaker.operators import g_matrix_quadrature, ruelle_matrix
from kacbaker.spectral import (
    ZeroKind,
    ZeroRecord,
    ZetaFlag,
    asymptotic_ratios,
    cancellation_candidates,
    eigenfunction_connection_check,
    eigenvalues,
    find_line_zeros,
    find_real_zeros,
    fredholm_det,
    spectra_match,
    spectrum_converged,
    zeta_value,
)
from kacbaker.spectral.checks import parity_trace_ratio, reality_check, trace_triangle
from kacbaker.spectral.zeros import real_grid
from kacbaker.spectral.zeta import det_product_check, flag_label, section_det

LN2 = math.log(2.0)


class TestEigenvalues:
    def test_sorted_by_modulus(self, half):
        spectrum = eigenvalues(ruelle_matrix(-1.0, 30, half))
        moduli = np.abs(spectrum.eigenvalues)
        assert np.all(np.diff(moduli) <= 0.0)

    def test_symmetric_path(self, half):
        spectrum = eigenvalues(g_matrix_quadrature(1.0, 20, half))
        assert np.all(spectrum.eigenvalues.imag == 0.0)

    def test_plain_arrays(self):
        spectrum = eigenvalues(np.diag([0.5, -2.0, 1.0]))
        assert spectrum.leading == -2.0
        with pytest.raises(DomainError):
            eigenvalues(np.ones((2, 3)))
        with pytest.raises(DomainError):
            eigenvalues(np.array([[np.inf]]))

    def test_leading_eigenvalue_at_half(self, half):
        # sinh(2 beta z) is an eigenfunction with eigenvalue e^beta
        spectrum = eigenvalues(ruelle_matrix(1.0, 60, half))
        assert np.min(np.abs(spectrum.eigenvalues - math.e)) < 1e-10


class TestConvergenceMonitor:
    def test_settles(self, half):
        spectrum = spectrum_converged(1.0, half, N0=40)
        assert spectrum.convergence_estimate is not None
        assert np.max(spectrum.convergence_estimate) < 1e-10 * abs(spectrum.leading)

    def test_reports_history_on_failure(self, half):
        with pytest.raises(ConvergenceError) as info:
            spectrum_converged(1.0, half, N0=20, dN=10, tol=1e-300, n_cap=50)
        assert info.value.diagnostics["history"]

    def test_rejects_small_start(self, half):
        with pytest.raises(DomainError):
            spectrum_converged(1.0, half, N0=5)

    @pytest.mark.parametrize("beta", [-2.0, 0.5, 4.0])
    def test_spectrum_is_real(self, half, beta):
        assert reality_check(beta, half).passed


class TestDeterminants:
    def test_section_det_matches_numpy(self, third):
        matrix = ruelle_matrix(0.6 + 0.3j, 25, third)
        z = 0.4 - 0.1j
        expected = np.linalg.det(np.eye(25) - z * matrix.entries)
        assert section_det(matrix, z) == pytest.approx(expected, rel=1e-10)

    def test_product_of_eigenvalues(self, half):
        matrix = ruelle_matrix(0.8, 60, half)
        det, product = det_product_check(matrix, 0.3, eigenvalues(matrix).eigenvalues)
        assert det == pytest.approx(product, rel=1e-9)

    def test_trace_route(self, half):
        lu = fredholm_det(0.3, 0.1, half)
        traces = fredholm_det(0.3, 0.1, half, route="traces", n_max=20)
        assert lu == pytest.approx(traces, rel=1e-9)

    def test_trace_route_refuses_outside_disc(self, half):
        with pytest.raises(DomainError):
            fredholm_det(1.0, 1.0, half, route="traces")
        with pytest.raises(DomainError):
            fredholm_det(1.0, 0.1, half, route="qr")


class TestZeta:
    @pytest.mark.parametrize("z", [0.1, 0.4, 0.45])
    def test_artin_mazur_at_infinite_temperature(self, half, z):
        ev = zeta_value(z, 0.0, half)
        assert ev.flag is ZetaFlag.OK
        assert ev.value == pytest.approx(1.0 / (1.0 - 2.0 * z), rel=1e-9)

    def test_special_value_limit_path(self, half):
        ev = zeta_value(1.0, 0.0, half)
        assert ev.flag is ZetaFlag.LIMIT
        assert ev.limit_evaluated
        assert ev.value == pytest.approx(-1.0, abs=1e-7)
        assert flag_label(ev) == "limit"

    @pytest.mark.parametrize("lam", [0.3, 0.7])
    def test_special_value_direct(self, lam):
        ev = zeta_value(1.0, 0.0, ModelParams(lam))
        assert ev.flag is ZetaFlag.OK
        assert flag_label(ev) == ""
        assert ev.value == pytest.approx(-1.0, abs=1e-9)

    def test_pole(self, third):
        ev = zeta_value(0.5, 0.0, third)
        assert ev.flag is ZetaFlag.POLE
        assert ev.value is None

    def test_ratio_identity(self, third):
        ev = zeta_value(0.8, 1.2 + 0.5j, third)
        assert ev.value * ev.denominator == pytest.approx(ev.numerator, rel=1e-12)


class TestZeros:
    def test_grid_is_inclusive(self):
        grid = real_grid(0.0, 1.0, 0.1)
        assert grid.size == 11
        assert grid[-1] == pytest.approx(1.0)
        with pytest.raises(DomainError):
            real_grid(1.0, 0.0, 0.1)
        with pytest.raises(DomainError):
            real_grid(0.0, 1.0, 0.0)

    def test_ln2_is_a_real_zero_at_half(self, half):
        result = find_real_zeros(0.5, 1.0, half, step=0.1)
        found = [z for z in result.of_kind(ZeroKind.NONTRIVIAL_REAL) if abs(z.location.real - LN2) < 1e-8]
        assert len(found) == 1
        assert found[0].residual < 1e-8

    def test_parallel_scan_matches_serial(self, half):
        serial = find_real_zeros(0.5, 1.0, half, N=60, step=0.1)
        parallel = find_real_zeros(0.5, 1.0, half, N=60, step=0.1, jobs=3)
        assert [z.location for z in serial.zeros] == [z.location for z in parallel.zeros]

    def test_line_zeros(self, half):
        result = find_line_zeros(half, -1, 1, N=80)
        assert not result.failures
        assert len(result.zeros) == 3
        for n in (-1, 0, 1):
            target = complex(LN2, 2.0 * math.pi * n)
            nearest = min(result.zeros, key=lambda z: abs(z.location - target))
            assert abs(nearest.location - target) < 1e-8
            assert nearest.residual < 1e-7
        assert all(z.kind is ZeroKind.TRIVIAL_LINE for z in result.zeros)

    def test_line_zeros_stalled_newton_is_accepted_by_residual(self, half):
        # a step tolerance below the derivative's truncation error never converges on its own
        result = find_line_zeros(half, 1, 1, N=80, tol=1e-15, maxiter=20)
        assert not result.failures
        assert abs(result.zeros[0].location - complex(LN2, 2.0 * math.pi)) < 1e-8

    def test_line_zeros_need_half(self, third):
        with pytest.raises(UnsupportedDomainError):
            find_line_zeros(third, 0, 1)

    def test_cancellation_candidates(self):
        zero = ZeroRecord(0.5 + 0j, 0.0, ZeroKind.NONTRIVIAL_REAL)
        pole = ZeroRecord(0.5 + 1e-9j, 0.0, ZeroKind.POLE)
        far = ZeroRecord(0.9 + 0j, 0.0, ZeroKind.POLE)
        assert cancellation_candidates([zero], [pole, far]) == [(zero, pole)]

    @pytest.mark.slow
    def test_wide_scan_finds_zeros_below_half(self, third):
        result = find_real_zeros(-30.0, 30.0, third, step=0.1)
        assert len(result.of_kind(ZeroKind.NONTRIVIAL_REAL)) >= 4


class TestCrossChecks:
    @pytest.mark.parametrize("beta", [0.0, 1.0, LN2])
    def test_spectra_match(self, half, beta):
        report = spectra_match(beta, half, top=5)
        assert report.passed, [(c.check_name, c.abs_err) for c in report.failures]

    @pytest.mark.parametrize("beta,which", [(0.0, 1), (1.0, 0), (1.0, 1), (LN2, 0), (LN2, 1)])
    def test_eigenfunction_connection(self, half, beta, which):
        report = eigenfunction_connection_check(beta, which, half)
        assert report.passed, [(c.check_name, c.abs_err) for c in report.failures]

    def test_eigenfunction_index_range(self, half):
        with pytest.raises(DomainError):
            eigenfunction_connection_check(1.0, 100, half, N=20)

    @pytest.mark.parametrize("beta", [0.0, 1.0, -1.0])
    def test_trace_triangle(self, half, beta):
        assert trace_triangle(beta, half).passed

    def test_asymptotic_parity_validation(self, third):
        with pytest.raises(DomainError):
            asymptotic_ratios(40.0, 3, third, parity="both")

    @pytest.mark.slow
    @pytest.mark.parametrize("beta, parity", [(40.0, "even"), (40.0, "odd"), (-40.0, "even")])
    def test_large_beta_asymptotics(self, third, beta, parity):
        ratios = asymptotic_ratios(beta, 4, third, parity=parity)
        assert np.allclose(ratios, 1.0, atol=0.05)

    @pytest.mark.slow
    def test_parity_trace_ratio(self, third):
        assert parity_trace_ratio(40.0, third) == pytest.approx(1.0, rel=0.05)
