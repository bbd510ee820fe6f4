"""Exact finite-lattice quantities by enumeration of periodic spin words.

Everything here is ground truth for the two transfer operators: the
partition functions Z_n(beta) and the trace identities

    Z_n = (1 - lam^n) tr L^n        (Ruelle operator)
    Z_n = (1 - lam^n) tr G^n        (Kac-Gutzwiller operator)
    Z_n = 2 sinh(n gamma / 2) exp(-n beta / 2) tr K^n   (Kac kernel)
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from kacbaker.config import config
from kacbaker.errors import DomainError, ResourceLimitError
from kacbaker.model.params import BetaLike, ModelParams, SpinConfig, as_beta, as_real_beta

logger = logging.getLogger(__name__)


def site_interaction_sum(word: SpinConfig, k: int, params: ModelParams) -> float:
    """Interaction of site k with all sites to its right in the periodic extension.

    e_k = sum_{j>=1} lam^j xi_k xi_{k+j}, resummed over j = q n + r.
    """
    n = word.n
    if not 0 <= k < n:
        raise IndexError(f"site index {k} out of range for period {n}")
    lam = params.lam
    xi = word.spins
    partial = math.fsum(lam**r * xi[k] * xi[(k + r) % n] for r in range(1, n))
    return (partial + lam**n) / (1.0 - lam**n)


def _coupling_matrix(n: int, lam: float) -> np.ndarray:
    """Circulant C with C[k, (k+r) % n] = lam^r for 1 <= r < n."""
    c = np.zeros((n, n))
    for k in range(n):
        for r in range(1, n):
            c[k, (k + r) % n] = lam**r
    return c


def _check_period(n: int, n_max: Optional[int]) -> int:
    limit = config.N_MAX if n_max is None else n_max
    if n < 1:
        raise DomainError(f"period must be positive, got {n}")
    if n > limit:
        raise ResourceLimitError(
            f"period {n} exceeds enumeration limit {limit} (cost grows like 2^n * n)"
        )
    return limit


def _chunk_energies(start: int, stop: int, n: int, coupling: np.ndarray, lam: float) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n, dtype=np.int64)) & 1
    spins = 2.0 * bits - 1.0
    pair = np.einsum("ij,ij->i", spins @ coupling, spins)
    return (pair + n * lam**n) / (1.0 - lam**n)


def _chunk_sum(start: int, stop: int, n: int, beta: complex, coupling: np.ndarray,
               lam: float) -> complex:
    energy = _chunk_energies(start, stop, n, coupling, lam)
    if beta.imag == 0.0:
        return complex(math.fsum(np.exp(beta.real * energy)), 0.0)
    weights = np.exp(beta * energy)
    return complex(math.fsum(weights.real), math.fsum(weights.imag))


def _chunk_bounds(n: int, use_symmetry: bool) -> list[tuple[int, int]]:
    first = 1 << (n - 1) if use_symmetry else 0
    total = 1 << n
    chunk = 1 << config.ENUM_CHUNK_BITS
    return [(lo, min(lo + chunk, total)) for lo in range(first, total, chunk)]


def _run_chunks(fn, bounds: list[tuple[int, int]], jobs: int) -> list:
    if jobs > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, bounds))
    return [fn(b) for b in bounds]


def partition_function_exact(
    n: int,
    beta: BetaLike,
    params: ModelParams,
    *,
    use_symmetry: bool = False,
    n_max: Optional[int] = None,
    jobs: int = 1,
) -> complex:
    """Z_n(beta) = sum over the 2^n period-n words of exp(beta * sum_k e_k).

    With ``use_symmetry`` only words with spin +1 at site n-1 are visited and
    the sum is doubled (Z_n is invariant under xi -> -xi).
    """
    _check_period(n, n_max)
    beta = as_beta(beta)
    lam = params.lam
    coupling = _coupling_matrix(n, lam)
    bounds = _chunk_bounds(n, use_symmetry)
    logger.debug("enumerating period %d in %d chunk(s)", n, len(bounds))

    def run(bound):
        return _chunk_sum(bound[0], bound[1], n, beta, coupling, lam)

    parts = _run_chunks(run, bounds, jobs)
    z = complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
    return 2.0 * z if use_symmetry else z


def log_partition_function(
    n: int,
    beta: BetaLike,
    params: ModelParams,
    *,
    use_symmetry: bool = False,
    n_max: Optional[int] = None,
    jobs: int = 1,
) -> float:
    """ln Z_n(beta) for real beta, by log-sum-exp so that it stays finite where Z_n overflows."""
    _check_period(n, n_max)
    b = as_real_beta(beta, what="log_partition_function")
    lam = params.lam
    coupling = _coupling_matrix(n, lam)
    bounds = _chunk_bounds(n, use_symmetry)

    def run(bound):
        return float(logsumexp(b * _chunk_energies(bound[0], bound[1], n, coupling, lam)))

    total = float(logsumexp(_run_chunks(run, bounds, jobs)))
    return total + math.log(2.0) if use_symmetry else total


def exact_trace_ruelle_power(n: int, beta: BetaLike, params: ModelParams, **kwargs) -> complex:
    """tr L_beta^n = Z_n / (1 - lam^n)."""
    return partition_function_exact(n, beta, params, **kwargs) / (1.0 - params.lam**n)


def exact_trace_gutzwiller_power(n: int, beta: BetaLike, params: ModelParams, **kwargs) -> complex:
    """tr G_beta^n = Z_n / (1 - lam^n).

    G and L are isospectral, so this equals the Ruelle trace. The (1 - lam)^n
    normalization sometimes quoted for G agrees only for n = 1.
    """
    return partition_function_exact(n, beta, params, **kwargs) / (1.0 - params.lam**n)


def exact_trace_kac_power(n: int, beta: BetaLike, params: ModelParams, **kwargs) -> complex:
    """tr K_beta^n = Z_n / (2 sinh(n gamma / 2) exp(-n beta / 2))."""
    b = as_beta(beta)
    z = partition_function_exact(n, b, params, **kwargs)
    return complex(z / (2.0 * math.sinh(n * params.gamma / 2.0) * np.exp(-n * b / 2.0)))


def free_energy_estimate(beta: BetaLike, n: int, params: ModelParams, **kwargs) -> float:
    """Finite-n approximant -beta * (1/n) * ln Z_n(beta).

    The prefactor is -beta, not the customary -1/beta, matching the
    definition this package is built around.
    """
    b = as_real_beta(beta, what="free_energy_estimate")
    return -b * log_partition_function(n, b, params, **kwargs) / n
