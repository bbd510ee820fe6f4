"""The full identity suite behind ``kacbaker verify``.

Each group uses its own default tolerance; an explicit ``tol`` replaces all
of them.
"""

import logging
import math
from typing import Iterable, Optional

import numpy as np

from kacbaker.model import ModelParams, partition_function_exact
from kacbaker.operators import (
    FockCoefficients,
    apply_ruelle_pointwise,
    b_matrix,
    fock_norm_sq,
    kac_factorized,
    kac_kernel,
    mehler_sides,
    ruelle_matrix,
    trace_g_closed_form,
    truncated_trace_power,
    verify_operator_identities,
)
from kacbaker.operators.bargmann import HermiteCoefficients, bargmann_transform_quadrature
from kacbaker.report import VerificationReport, compare
from kacbaker.special import hermite_h, hermite_h_closed_form, laguerre_assoc, laguerre_explicit
from kacbaker.spectral import ZeroKind, find_line_zeros, find_real_zeros, fredholm_det, zeta_value
from kacbaker.spectral.checks import (
    asymptotic_ratios,
    eigenfunction_connection_check,
    reality_check,
    spectra_match,
    trace_triangle,
)
from kacbaker.spectral.eigen import eigenvalues
from kacbaker.spectral.zeta import det_product_check

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


class _Tolerance:
    def __init__(self, override: Optional[float]):
        self.override = override

    def __call__(self, default: float) -> float:
        return default if self.override is None else self.override


def _special_functions(tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    for k in range(13):
        for x in (0.0, 0.5, -0.5, 1.5, -1.5):
            report.add(compare(f"hermite_closed_form[k={k},x={x}]", hermite_h(k, x),
                               hermite_h_closed_form(k, x), tol(1e-7)))
    report.add(compare("laguerre_expansion[n=3,a=2,x=-1.5]", laguerre_assoc(3, 2, -1.5),
                       laguerre_explicit(3, 2, -1.5), tol(1e-12), relative=True))
    return report


def _mehler(tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    grid = np.linspace(-2.0, 2.0, 5)
    for lam in (0.2, 0.5, 0.8):
        K = int(math.ceil(math.log(1e-18) / math.log(lam))) + 20
        for x in grid:
            for y in grid:
                sides = mehler_sides(lam, float(x), float(y), K)
                report.add(compare(f"mehler[lam={lam},x={x},y={y}]", sides.lhs, sides.rhs, tol(1e-10)))
    return report


def _kernel_factorization(params: ModelParams, betas: Iterable[float], tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    points = np.linspace(-2.0, 2.0, 5)
    for beta in betas:
        if beta < 0.0:
            continue
        for xi in points:
            for eta in points:
                report.add(compare(f"kernel_factorization[beta={beta},xi={xi},eta={eta}]",
                                   kac_kernel(beta, xi, eta, params), kac_factorized(beta, xi, eta, params),
                                   tol(1e-12), relative=True))
    return report


def _closed_form_traces(params: ModelParams, betas: Iterable[float], tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    for beta in betas:
        B = b_matrix(beta, 80, params)
        report.add(compare(f"b_matrix_trace[beta={beta}]", B.trace(), trace_g_closed_form(beta, params),
                           tol(1e-9), relative=True))
        asymmetry = float(np.max(np.abs(B.entries - B.entries.T)))
        report.add(compare(f"b_matrix_symmetric[beta={beta}]", asymmetry, 0.0, 0.0))
        odd = float(np.max(np.abs(B.entries[np.add.outer(np.arange(80), np.arange(80)) % 2 == 1])))
        report.add(compare(f"b_matrix_odd_entries[beta={beta}]", odd, 0.0, 0.0))
        for n in (2, 3):
            exact = partition_function_exact(n, beta, params) / (1.0 - params.lam**n)
            report.add(compare(f"b_matrix_trace_power[beta={beta},n={n}]", truncated_trace_power(B, n),
                               exact, tol(1e-7), relative=True))
    return report


def _golden_spectrum(params: ModelParams, tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    spectrum = eigenvalues(ruelle_matrix(0.0, 60, params)).eigenvalues
    expected = 2.0 * params.lam ** np.arange(60)
    for k in range(60):
        report.add(compare(f"golden_spectrum[k={k}]", spectrum[k], expected[k], tol(1e-12)))
    for z in (0.1, 0.4, 0.45):
        ev = zeta_value(z, 0.0, params)
        report.add(compare(f"artin_mazur[z={z}]", ev.value if ev.value is not None else math.nan,
                           1.0 / (1.0 - 2.0 * z), tol(1e-9), relative=True))
    for lam in (0.3, 0.5, 0.7):
        ev = zeta_value(1.0, 0.0, ModelParams(lam))
        value = ev.value if ev.value is not None else math.nan
        report.add(compare(f"zeta_special_value[lam={lam},flag={ev.flag.value}]", value, -1.0, tol(1e-7)))
    return report


def _ruelle_section(params: ModelParams, betas: Iterable[float], tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    coeffs = np.array([1.0, -0.5, 0.25, 0.125])

    def poly(w):
        return complex(np.polyval(coeffs[::-1], w))

    N = 60
    padded = np.zeros(N, dtype=complex)
    padded[: coeffs.size] = coeffs
    for beta in betas:
        image = ruelle_matrix(beta, N, params).entries @ padded
        for z in (0.3, -0.2 + 0.1j):
            lhs = complex(np.polyval(image[::-1], z))
            report.add(compare(f"ruelle_pointwise[beta={beta},z={z}]", lhs,
                               apply_ruelle_pointwise(beta, poly, z, params), tol(1e-10), relative=True))
        matrix = ruelle_matrix(beta, N, params)
        spectrum = eigenvalues(matrix).eigenvalues
        det, product = det_product_check(matrix, 0.3, spectrum)
        report.add(compare(f"det_eigen_product[beta={beta}]", det, product, tol(1e-9), relative=True))
    trace_route = fredholm_det(0.3, 0.1, params, route="traces", n_max=20)
    report.add(compare("fredholm_routes[beta=0.3,z=0.1]", fredholm_det(0.3, 0.1, params), trace_route,
                       tol(1e-9), relative=True))
    return report


def _bargmann(params: ModelParams, tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    rng = np.random.default_rng(7)
    radii = 2.0 * np.sqrt(rng.uniform(size=20))
    angles = rng.uniform(0.0, 2.0 * math.pi, size=20)
    disc = radii * np.exp(1j * angles)
    for k in range(16):
        f = HermiteCoefficients(np.eye(k + 1)[k])
        F = FockCoefficients.basis(k)
        for z in disc:
            report.add(compare(f"bargmann_basis[k={k},z={z:.3f}]", bargmann_transform_quadrature(f, z), F(z),
                               tol(1e-8), relative=True))
    sample = FockCoefficients(np.array([0.5, -0.25 + 0.5j, 0.75, 0.1j]))
    report.add(compare("fock_isometry", fock_norm_sq(sample, route="quadrature"), fock_norm_sq(sample),
                       tol(1e-6), relative=True))
    report.extend(verify_operator_identities(seeds=(0, 1, 2), tol=tol(1e-8), params=params))
    return report


def _spectral_agreement(params: ModelParams, betas: Iterable[float], tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    targets = sorted(set(b for b in betas if b >= 0.0) | ({LN2} if params.lam == 0.5 else set()))
    for beta in targets:
        report.extend(spectra_match(beta, params, N_L=80, N_G=60, tol=tol(1e-6), top=5))
        for which in (0, 1):
            report.extend(eigenfunction_connection_check(beta, which, params, tol=tol(1e-5)))
        report.extend(trace_triangle(beta, params, tol=tol(1e-7)))
    return report


def _zeros(params: ModelParams, tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    if params.lam == 0.5:
        result = find_real_zeros(0.5, 1.0, params, step=0.1)
        located = [z.location.real for z in result.of_kind(ZeroKind.NONTRIVIAL_REAL)]
        nearest = min(located, key=lambda x: abs(x - LN2)) if located else math.nan
        report.add(compare("real_zero[ln2]", nearest, LN2, tol(1e-8)))
        line = find_line_zeros(params, -1, 1, N=80)
        for n in (-1, 1):
            target = complex(LN2, 2.0 * math.pi * n)
            found = min((z.location for z in line.zeros), key=lambda w: abs(w - target), default=complex(math.nan))
            report.add(compare(f"line_zero[n={n}]", found, target, tol(1e-6)))
    return report


def _reality(params: ModelParams, betas: Iterable[float], tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    for beta in sorted(set(betas) | {-2.0, 4.0}):
        report.extend(reality_check(beta, params, tol=tol(1e-8)))
    return report


def _asymptotics(params: ModelParams, tol: _Tolerance) -> VerificationReport:
    report = VerificationReport()
    if params.lam >= 0.5:
        return report
    for beta in (40.0, -40.0):
        for parity in ("even", "odd"):
            ratios = asymptotic_ratios(beta, 4, params, parity=parity)
            for i, r in enumerate(ratios):
                report.add(compare(f"asymptotic_ratio[beta={beta},{parity},i={i}]", r, 1.0, tol(0.05)))
    return report


def verification_suite(params: ModelParams, betas: Iterable[float], tol: Optional[float] = None) -> VerificationReport:
    """Every cross-identity at the given lambda and real beta values."""
    betas = [float(b) for b in betas]
    t = _Tolerance(tol)
    report = VerificationReport()
    groups = [
        ("special functions", lambda: _special_functions(t)),
        ("mehler", lambda: _mehler(t)),
        ("kernel factorization", lambda: _kernel_factorization(params, betas, t)),
        ("closed-form traces", lambda: _closed_form_traces(params, betas, t)),
        ("golden spectrum", lambda: _golden_spectrum(params, t)),
        ("ruelle section", lambda: _ruelle_section(params, betas, t)),
        ("bargmann", lambda: _bargmann(params, t)),
        ("spectral agreement", lambda: _spectral_agreement(params, betas, t)),
        ("reality", lambda: _reality(params, betas, t)),
        ("zeros", lambda: _zeros(params, t)),
        ("asymptotics", lambda: _asymptotics(params, t)),
    ]
    for name, run in groups:
        part = run()
        logger.info("verify %s: %d check(s), %d failure(s)", name, len(part.checks), len(part.failures))
        report.extend(part)
    return report