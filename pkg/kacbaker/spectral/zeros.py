"""Zeros and poles of the zeta function on the real axis and on Re beta = ln 2.

Numerator zeros are zeros of d(beta) = det(I - lam L_beta), poles are zeros of
det(I - L_beta). Both are reported separately together with the pairs that lie
close enough to cancel.
"""

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.optimize import bisect, newton

from kacbaker.config import config
from kacbaker.errors import DomainError, UnsupportedDomainError
from kacbaker.model.params import ModelParams
from kacbaker.operators.ruelle import ruelle_matrix
from kacbaker.spectral.zeta import section_det

logger = logging.getLogger(__name__)


class ZeroKind(str, Enum):
    NONTRIVIAL_REAL = "nontrivial-real"
    TRIVIAL_LINE = "trivial-line"
    POLE = "pole"


@dataclass(frozen=True)
class ZeroRecord:
    location: complex
    residual: float
    kind: ZeroKind


@dataclass
class ZeroSearchResult:
    zeros: list[ZeroRecord]
    beta_min: float
    beta_max: float
    step: float
    N: int
    cancellations: list[tuple[ZeroRecord, ZeroRecord]] = field(default_factory=list)
    failures: list[tuple[int, str]] = field(default_factory=list)

    def of_kind(self, kind: ZeroKind) -> list[ZeroRecord]:
        return [z for z in self.zeros if z.kind is kind]


def _map(fn: Callable, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def real_grid(beta_min: float, beta_max: float, step: float) -> np.ndarray:
    """beta_min, beta_min + step, ... up to and including beta_max."""
    if not step > 0:
        raise DomainError(f"step must be positive, got {step}")
    if not beta_max >= beta_min:
        raise DomainError(f"empty range [{beta_min}, {beta_max}]")
    count = int(math.floor((beta_max - beta_min) / step + 1e-9)) + 1
    return beta_min + step * np.arange(count)


def _real_det(params: ModelParams, N: int, scale: float) -> Callable[[float], float]:
    def d(beta: float) -> float:
        return section_det(ruelle_matrix(float(beta), N, params), scale).real

    return d


def _locate(d: Callable[[float], float], grid: np.ndarray, values: np.ndarray, kind: ZeroKind,
            xtol: float, accept: float) -> list[ZeroRecord]:
    found = []
    for i, value in enumerate(values):
        if value == 0.0:
            found.append(ZeroRecord(complex(grid[i]), 0.0, kind))
    for i in range(values.size - 1):
        a, b = values[i], values[i + 1]
        if a == 0.0 or b == 0.0 or np.sign(a) == np.sign(b):
            continue
        root = bisect(d, grid[i], grid[i + 1], xtol=xtol)
        residual = abs(d(root))
        logger.debug("%s bracket [%g, %g] -> %.12f residual %.3e", kind.value, grid[i], grid[i + 1], root, residual)
        if residual > accept:
            logger.warning("discarding %s at %.12f: residual %.3e above %.3e", kind.value, root, residual, accept)
            continue
        found.append(ZeroRecord(complex(root), residual, kind))
    return found


def cancellation_candidates(zeros: list[ZeroRecord], poles: list[ZeroRecord],
                            tol: float = 1e-6) -> list[tuple[ZeroRecord, ZeroRecord]]:
    """Numerator zero / pole pairs closer than ``tol``."""
    return [(z, p) for z in zeros for p in poles if abs(z.location - p.location) < tol]


def find_real_zeros(
    beta_min: float,
    beta_max: float,
    params: ModelParams,
    N: Optional[int] = None,
    step: float = 0.1,
    jobs: int = 1,
) -> ZeroSearchResult:
    """Sign-change scan of both determinants followed by bisection."""
    N = N or config.ZERO_SCAN_DIM
    grid = real_grid(beta_min, beta_max, step)
    lam = params.lam

    def both(beta):
        matrix = ruelle_matrix(float(beta), N, params)
        return section_det(matrix, lam).real, section_det(matrix, 1.0).real

    pairs = np.array(_map(both, list(grid), jobs))
    num, den = pairs[:, 0], pairs[:, 1]
    accept_num = config.ZERO_ACCEPT * max(float(np.max(np.abs(num))), 1.0)
    accept_den = config.ZERO_ACCEPT * max(float(np.max(np.abs(den))), 1.0)

    zeros = _locate(_real_det(params, N, lam), grid, num, ZeroKind.NONTRIVIAL_REAL,
                    config.BISECT_TOL, accept_num)
    poles = _locate(_real_det(params, N, 1.0), grid, den, ZeroKind.POLE, config.BISECT_TOL, accept_den)
    result = ZeroSearchResult(
        zeros=sorted(zeros + poles, key=lambda r: (r.location.real, r.kind.value)),
        beta_min=float(beta_min),
        beta_max=float(beta_max),
        step=float(step),
        N=N,
        cancellations=cancellation_candidates(zeros, poles),
    )
    logger.info("real scan [%g, %g] N=%d: %d zero(s), %d pole(s), %d cancellation candidate(s)",
                beta_min, beta_max, N, len(zeros), len(poles), len(result.cancellations))
    return result


def find_line_zeros(
    params: ModelParams,
    n_min: int,
    n_max: int,
    N: Optional[int] = None,
    jobs: int = 1,
    tol: float = 1e-10,
    maxiter: int = 50,
) -> ZeroSearchResult:
    """Newton from ln 2 + 2 pi i n on beta -> det(I - lam L_beta), for lam = 1/2.

    The derivative is a central difference, so the last steps stall at the
    size of its truncation error. An iterate that has not met ``tol`` is
    still accepted when |d(beta)| is below ZERO_ACCEPT times the local size
    of the determinant.
    """
    if params.lam != 0.5:
        raise UnsupportedDomainError(f"line zeros are located for lambda = 1/2 only, got {params.lam}")
    if n_max < n_min:
        raise DomainError(f"empty index range [{n_min}, {n_max}]")
    N = N or config.SPECTRUM_DIM
    lam = params.lam
    h = config.DIFF_STEP

    def d(beta):
        return section_det(ruelle_matrix(beta, N, params), lam)

    def d_prime(beta):
        return (d(beta + h) - d(beta - h)) / (2.0 * h)

    def local_scale(beta):
        return max(abs(d(beta + 0.1)), abs(d(beta - 0.1)), abs(d(beta + 0.1j)), abs(d(beta - 0.1j)))

    def solve(n):
        start = complex(math.log(2.0), 2.0 * math.pi * n)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                root, info = newton(d, start, fprime=d_prime, tol=tol, rtol=0.0, maxiter=maxiter,
                                    full_output=True, disp=False)
        except ArithmeticError as exc:
            logger.warning("Newton from %s failed: %s", start, exc)
            return n, None, str(exc)
        root = complex(root)
        residual = abs(d(root))
        if not info.converged:
            accept = config.ZERO_ACCEPT * local_scale(root)
            if not (np.isfinite(residual) and residual <= accept):
                message = f"no convergence after {info.iterations} iterations at {root}, residual {residual:.3e}"
                logger.warning("Newton from %s: %s", start, message)
                return n, None, message
            logger.debug("Newton from %s stalled at %s, residual %.3e accepted", start, root, residual)
        return n, ZeroRecord(root, residual, ZeroKind.TRIVIAL_LINE), None

    zeros, failures = [], []
    for n, record, error in _map(solve, list(range(n_min, n_max + 1)), jobs):
        if record is None:
            failures.append((n, error))
        else:
            zeros.append(record)
    zeros.sort(key=lambda r: (r.location.real, r.location.imag))
    return ZeroSearchResult(zeros=zeros, beta_min=float(n_min), beta_max=float(n_max), step=1.0, N=N,
                            failures=failures)
