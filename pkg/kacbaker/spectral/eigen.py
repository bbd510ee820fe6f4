"""Eigenvalues of operator sections and the truncation convergence monitor."""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.linalg

from kacbaker.config import config
from kacbaker.errors import ConvergenceError, DomainError
from kacbaker.model.params import BetaLike, ModelParams, as_beta
from kacbaker.operators.matrix import OperatorMatrix
from kacbaker.operators.ruelle import ruelle_matrix

logger = logging.getLogger(__name__)

MatrixLike = Union[OperatorMatrix, np.ndarray]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by descending modulus.

    ``convergence_estimate`` holds |change| of the leading eigenvalues between
    the previous truncation and ``N``; it is None for a single solve.
    """

    eigenvalues: np.ndarray
    N: int
    convergence_estimate: Optional[np.ndarray] = None

    def top(self, k: int) -> np.ndarray:
        return self.eigenvalues[:k]

    @property
    def leading(self) -> complex:
        return complex(self.eigenvalues[0])

    def max_imag_ratio(self, floor: float = 1e-8) -> float:
        """max |Im rho| / |rho_max| over eigenvalues above ``floor`` * |rho_max|."""
        ev = self.eigenvalues
        top = abs(ev[0])
        if top == 0.0:
            return 0.0
        significant = ev[np.abs(ev) > floor * top]
        return float(np.max(np.abs(significant.imag)) / top)


def _sorted(values: np.ndarray) -> np.ndarray:
    order = np.argsort(-np.abs(values), kind="stable")
    return values[order]


def eigenvalues(matrix: MatrixLike) -> Spectrum:
    """All eigenvalues; the symmetric solver is used for real symmetric input."""
    if isinstance(matrix, OperatorMatrix):
        a = matrix.entries
        symmetric = matrix.is_real_symmetric
    else:
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError(f"need a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("matrix has non-finite entries")
        symmetric = not np.iscomplexobj(a) and np.array_equal(a, a.T)
    try:
        if symmetric:
            values = scipy.linalg.eigh(np.real(a), eigvals_only=True).astype(complex)
        else:
            values = scipy.linalg.eigvals(a)
    except scipy.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed: {exc}", dim=a.shape[0], symmetric=symmetric) from exc
    return Spectrum(eigenvalues=_sorted(values), N=a.shape[0])


def _movement(previous: Spectrum, current: Spectrum, top: int) -> np.ndarray:
    k = min(top, previous.eigenvalues.size, current.eigenvalues.size)
    return np.abs(current.eigenvalues[:k] - previous.eigenvalues[:k])


def spectrum_converged(
    beta: BetaLike,
    params: ModelParams,
    N0: Optional[int] = None,
    dN: int = 20,
    tol: float = 1e-10,
    top: int = 10,
    n_cap: Optional[int] = None,
) -> Spectrum:
    """Grow the Ruelle section until the leading ``top`` eigenvalues settle.

    Movement is measured relative to the leading modulus. The returned
    spectrum is the smaller section of the first pair that agrees.
    """
    b = as_beta(beta)
    N = N0 if N0 is not None else config.SPECTRUM_DIM
    n_cap = n_cap if n_cap is not None else config.DIM_CAP
    if N < 10:
        raise DomainError(f"initial truncation must be at least 10, got {N}")
    if dN < 1:
        raise DomainError(f"truncation step must be positive, got {dN}")

    previous = eigenvalues(ruelle_matrix(b, N, params))
    history = []
    while N + dN <= n_cap:
        current = eigenvalues(ruelle_matrix(b, N + dN, params))
        scale = max(abs(current.leading), np.finfo(float).tiny)
        moved = _movement(previous, current, top)
        worst = float(moved.max() / scale)
        history.append((N, worst))
        logger.info("spectrum monitor beta=%s N=%d -> %d relative movement %.3e", b, N, N + dN, worst)
        if worst < tol:
            return Spectrum(previous.eigenvalues, previous.N, convergence_estimate=moved)
        previous = current
        N += dN
    raise ConvergenceError(
        f"leading eigenvalues did not settle below {tol:g} before N={n_cap}",
        beta=b,
        lam=params.lam,
        history=history,
    )
