"""The Ruelle transfer operator on Taylor coefficients.

    (L_beta g)(z) = exp(beta z) g(lam + lam z) + exp(-beta z) g(-lam + lam z)

acts on functions holomorphic in a disc of radius r > lam / (1 - lam). Only
Taylor coefficients are ever materialized: column k of the section holds the
first N Taylor coefficients of L_beta z^k.
"""

import math
from typing import Callable

import numpy as np
from scipy.special import gammaln

from kacbaker.errors import DomainError
from kacbaker.model.params import BetaLike, ModelParams, as_beta
from kacbaker.operators.matrix import Basis, OperatorMatrix, ParityPair

Evaluable = Callable[[complex], complex]


def _log_power_series(beta: complex, size: int) -> tuple[np.ndarray, np.ndarray]:
    """log|beta^j / j!| and the phase of beta^j for j < size."""
    j = np.arange(size)
    if beta == 0:
        log_abs = np.full(size, -np.inf)
        log_abs[0] = 0.0
        return log_abs, np.ones(size, dtype=complex)
    log_abs = j * np.log(abs(beta)) - gammaln(j + 1)
    if beta.imag == 0.0:
        phase = np.where((j % 2 == 1) & (beta.real < 0), -1.0, 1.0).astype(complex)
    else:
        phase = np.exp(1j * j * np.angle(beta))
    return log_abs, phase


def _compensated_row_sums(terms: np.ndarray) -> np.ndarray:
    """Row sums with terms taken in descending magnitude, real and imaginary parts by fsum."""
    order = np.argsort(-np.abs(terms), axis=1, kind="stable")
    ordered = np.take_along_axis(terms, order, axis=1)
    return np.array([complex(math.fsum(row.real), math.fsum(row.imag)) for row in ordered])


def ruelle_matrix(beta: BetaLike, N: int, params: ModelParams) -> OperatorMatrix:
    """Monomial-basis section of L_beta.

    Entry (m, k) = lam^k (1 + (-1)^(m+k)) sum_{i<=min(k,m)} C(k,i) beta^(m-i)/(m-i)!.
    Every term is exponentiated from log space and each entry is summed in
    descending magnitude with compensated (fsum) accumulation.
    """
    if N < 1:
        raise DomainError(f"dimension must be positive, got {N}")
    beta = as_beta(beta)
    lam = params.lam

    log_t, phase_t = _log_power_series(beta, N)
    k = np.arange(N)
    log_fact = gammaln(np.arange(N) + 1)
    # log C(k, i) on the lower triangle i <= k, -inf elsewhere
    kk, ii = np.meshgrid(k, k, indexing="ij")
    valid = ii <= kk
    log_binom = np.full((N, N), -np.inf)
    log_binom[valid] = log_fact[kk[valid]] - log_fact[ii[valid]] - log_fact[(kk - ii)[valid]]
    log_binom += (k * np.log(lam))[:, None]

    entries = np.zeros((N, N), dtype=complex)
    for m in range(N):
        cols = k[(m + k) % 2 == 0]
        i = np.arange(min(m, N - 1) + 1)
        log_terms = log_binom[np.ix_(cols, i)] + log_t[m - i][None, :]
        terms = np.exp(log_terms) * phase_t[m - i][None, :]
        entries[m, cols] = 2.0 * _compensated_row_sums(terms)

    return OperatorMatrix(entries, Basis.MONOMIAL, beta, params)


def apply_ruelle_pointwise(beta: BetaLike, f: Evaluable, z: complex, params: ModelParams) -> complex:
    """(L_beta f)(z) evaluated directly."""
    b = as_beta(beta)
    lam = params.lam
    return complex(np.exp(b * z) * f(lam + lam * z) + np.exp(-b * z) * f(-lam + lam * z))


def apply_parity_pointwise(
    beta: BetaLike, f: Evaluable, z: complex, params: ModelParams, sign: int = 1
) -> complex:
    """(L^+ f)(z) for sign=+1, (L^- f)(z) for sign=-1.

    L^+/- f(z) = exp(beta z) f(lam + lam z) +/- exp(-beta z) f(lam - lam z); on
    even (odd) f this coincides with L_beta.
    """
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    b = as_beta(beta)
    lam = params.lam
    return complex(np.exp(b * z) * f(lam + lam * z) + sign * np.exp(-b * z) * f(lam - lam * z))


def parity_matrices(beta: BetaLike, N: int, params: ModelParams) -> ParityPair:
    """Even and odd blocks of ``ruelle_matrix`` (indices 0,2,4,... and 1,3,5,...)."""
    if N < 2:
        raise DomainError(f"parity split needs N >= 2, got {N}")
    full = ruelle_matrix(beta, N, params)
    a = full.entries
    even = OperatorMatrix(a[0::2, 0::2].copy(), Basis.MONOMIAL, full.beta, params, parity="even")
    odd = OperatorMatrix(a[1::2, 1::2].copy(), Basis.MONOMIAL, full.beta, params, parity="odd")
    return ParityPair(even=even, odd=odd)


def truncated_trace_power(matrix: OperatorMatrix, n: int) -> complex:
    """tr(A^n) of a section; large n goes through the eigenvalues."""
    if n < 1:
        raise DomainError(f"power must be positive, got {n}")
    a = matrix.entries
    if n <= 4:
        p = a
        for _ in range(n - 1):
            p = p @ a
        return complex(np.trace(p))
    rho = np.linalg.eigvals(a)
    return complex(np.sum(rho**n))


def taylor_coefficients(f: Evaluable, N: int, radius: float = 0.5, points: int = 256) -> np.ndarray:
    """First N Taylor coefficients of f at 0 by the trapezoidal Cauchy integral."""
    if points < N:
        raise DomainError("need at least as many circle points as coefficients")
    theta = 2.0 * np.pi * np.arange(points) / points
    samples = np.array([f(radius * np.exp(1j * t)) for t in theta], dtype=complex)
    coeffs = np.fft.fft(samples) / points
    return coeffs[:N] / radius ** np.arange(N)


def sinh_eigenvector(beta: BetaLike, N: int) -> np.ndarray:
    """Taylor coefficients of sinh(2 beta z); an eigenfunction of L_beta at lam = 1/2."""
    b = as_beta(beta)
    k = np.arange(N)
    log_t, phase = _log_power_series(2.0 * b, N)
    coeffs = np.exp(log_t) * phase
    coeffs[k % 2 == 0] = 0.0
    return coeffs
