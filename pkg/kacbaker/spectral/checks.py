"""Cross-checks between the Ruelle and Kac-Gutzwiller sides."""

import logging
import math
from typing import Optional

import numpy as np
import scipy.linalg

from kacbaker.errors import DomainError
from kacbaker.model.lattice import exact_trace_ruelle_power
from kacbaker.model.params import BetaLike, ModelParams, as_real_beta
from kacbaker.operators.bargmann import HermiteCoefficients, connection_forward
from kacbaker.operators.kacg import g_matrix_quadrature
from kacbaker.operators.ruelle import apply_ruelle_pointwise, parity_matrices, ruelle_matrix, truncated_trace_power
from kacbaker.report import VerificationReport, compare
from kacbaker.spectral.eigen import eigenvalues, spectrum_converged

logger = logging.getLogger(__name__)

SAMPLE_POINTS = (0.1, 0.3j, -0.2 + 0.1j, 0.25, -0.35j, 0.15 + 0.2j, -0.3, 0.05 - 0.25j)


def _asymptote(beta: float, i: np.ndarray, lam: float, parity: str) -> np.ndarray:
    if beta >= 0.0:
        return lam**i * math.exp(lam * beta / (1.0 - lam))
    base = lam**i * math.exp(-lam * beta / (1.0 + lam))
    sign = (-1.0) ** i if parity == "even" else (-1.0) ** (i + 1)
    return sign * base


def asymptotic_ratios(beta: BetaLike, count: int, params: ModelParams, N: int = 160,
                      parity: str = "even") -> np.ndarray:
    """rho_i / predicted asymptote for the leading ``count`` eigenvalues of one parity class.

    beta >= 0: rho_i ~ lam^i exp(lam beta / (1 - lam)) in both classes.
    beta < 0:  even rho_i ~ (-1)^i lam^i exp(-lam beta / (1 + lam)),
               odd  rho_i ~ (-1)^(i+1) lam^i exp(-lam beta / (1 + lam)).
    """
    b = as_real_beta(beta, what="asymptotic_ratios")
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if not params.lam < 0.5:
        logger.warning("eigenvalue asymptotics are established for lambda < 1/2; got %g", params.lam)
    blocks = parity_matrices(b, N, params)
    spectrum = eigenvalues(blocks.even if parity == "even" else blocks.odd)
    i = np.arange(count)
    return spectrum.top(count) / _asymptote(b, i, params.lam, parity)


def trace_asymptote(beta: BetaLike, K: int, params: ModelParams) -> float:
    """Sum of the first K + 1 asymptotic eigenvalues of one parity class for beta -> +inf."""
    b = as_real_beta(beta, what="trace_asymptote")
    lam = params.lam
    return (1.0 - lam ** (K + 1)) / (1.0 - lam) * math.exp(b * lam / (1.0 - lam))


def parity_trace_ratio(beta: BetaLike, params: ModelParams, N: int = 120) -> float:
    """tr L^+ of the even block over ``trace_asymptote`` with K = N/2 - 1."""
    b = as_real_beta(beta, what="parity_trace_ratio")
    even = parity_matrices(b, N, params).even
    return even.trace().real / trace_asymptote(b, even.dim - 1, params)


def _greedy_pairs(left: np.ndarray, right: np.ndarray) -> list[tuple[int, int]]:
    used: set[int] = set()
    pairs = []
    for i, value in enumerate(left):
        candidates = [j for j in range(right.size) if j not in used]
        if not candidates:
            break
        j = min(candidates, key=lambda j: abs(right[j] - value))
        used.add(j)
        pairs.append((i, j))
    return pairs


def _multiplicities(values: np.ndarray, tol: float) -> list[int]:
    counts = []
    for v in values:
        counts.append(int(np.sum(np.abs(values - v) <= tol * max(abs(v), 1e-300))))
    return counts


def spectra_match(beta: BetaLike, params: ModelParams, N_L: int = 80, N_G: int = 60,
                  tol: float = 1e-6, top: int = 10) -> VerificationReport:
    """Leading eigenvalues of the Ruelle section against the quadrature G-matrix."""
    b = as_real_beta(beta, what="spectra_match")
    ruelle = eigenvalues(ruelle_matrix(b, N_L, params)).top(top)
    gutz = eigenvalues(g_matrix_quadrature(b, N_G, params)).top(top)
    report = VerificationReport()
    for i, j in _greedy_pairs(ruelle, gutz):
        report.add(compare(f"spectra_match[beta={b},i={i}]", ruelle[i], gutz[j], tol, relative=True))
    if _multiplicities(ruelle, tol) != _multiplicities(gutz, tol):
        report.notes.append(f"multiplicity pattern differs at beta={b}")
        logger.warning("multiplicity pattern differs between Ruelle and Gutzwiller sides at beta=%g", b)
    return report


def eigenfunction_connection_check(beta: BetaLike, which: int, params: ModelParams, N: int = 50,
                                   tol: float = 1e-5) -> VerificationReport:
    """Transport eigenvector ``which`` of the G-matrix to F and test L_beta F = rho F.

    For a degenerate eigenvalue every vector of the cluster is transported and
    the worst residual is reported.
    """
    b = as_real_beta(beta, what="eigenfunction_connection_check")
    G = g_matrix_quadrature(b, N, params)
    values, vectors = scipy.linalg.eigh(G.entries.real)
    order = np.argsort(-np.abs(values), kind="stable")
    values, vectors = values[order], vectors[:, order]
    if not 0 <= which < values.size:
        raise DomainError(f"eigen-index {which} outside 0..{values.size - 1}")
    rho = values[which]
    cluster = np.flatnonzero(np.abs(values - rho) <= 1e-8 * max(abs(rho), 1e-300))
    if cluster.size > 1:
        logger.info("eigenvalue %g has multiplicity %d; checking the invariant subspace", rho, cluster.size)

    report = VerificationReport()
    worst = 0.0
    for col in cluster:
        f = HermiteCoefficients(vectors[:, col])

        def F(z, f=f):
            return connection_forward(f, b, z, params)

        samples = np.array([F(z) for z in SAMPLE_POINTS])
        images = np.array([apply_ruelle_pointwise(b, F, z, params) for z in SAMPLE_POINTS])
        scale = float(np.max(np.abs(samples)))
        if scale <= 1e-12:
            residual = float(np.max(np.abs(images)))
        else:
            residual = float(np.max(np.abs(images - rho * samples)) / scale)
        worst = max(worst, residual)
    report.add(compare(f"eigenfunction_connection[beta={b},index={which}]", worst, 0.0, tol))
    return report


def trace_triangle(beta: BetaLike, params: ModelParams, powers=(1, 2, 3), N: int = 80,
                   tol: float = 1e-7) -> VerificationReport:
    """Lattice traces against tr L^n of the Ruelle section and tr G^n of the quadrature matrix.

    Both operators share the trace Z_n / (1 - lam^n).
    """
    b = as_real_beta(beta, what="trace_triangle")
    L = ruelle_matrix(b, N, params)
    G = g_matrix_quadrature(b, N, params) if b >= 0.0 else None
    report = VerificationReport()
    for n in powers:
        exact = exact_trace_ruelle_power(n, b, params)
        report.add(compare(f"trace_ruelle[beta={b},n={n}]", truncated_trace_power(L, n), exact, tol,
                           relative=True))
        if G is not None:
            report.add(compare(f"trace_gutzwiller[beta={b},n={n}]", truncated_trace_power(G, n), exact, tol,
                               relative=True))
    return report


def reality_check(beta: BetaLike, params: ModelParams, N: Optional[int] = None,
                  tol: float = 1e-8) -> VerificationReport:
    """Significant Ruelle eigenvalues are real for real beta."""
    b = as_real_beta(beta, what="reality_check")
    spectrum = spectrum_converged(b, params) if N is None else eigenvalues(ruelle_matrix(b, N, params))
    report = VerificationReport()
    report.add(compare(f"real_spectrum[beta={b}]", spectrum.max_imag_ratio(tol), 0.0, tol))
    return report
