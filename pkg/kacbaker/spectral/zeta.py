"""Fredholm determinants of Ruelle sections and the zeta function

    zeta_R(z, beta) = det(1 - z lam L_beta) / det(1 - z L_beta).
"""

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg

from kacbaker.config import config
from kacbaker.errors import DomainError
from kacbaker.model.lattice import exact_trace_ruelle_power
from kacbaker.model.params import BetaLike, ModelParams, as_beta
from kacbaker.operators.matrix import OperatorMatrix
from kacbaker.operators.ruelle import ruelle_matrix

logger = logging.getLogger(__name__)


class ZetaFlag(str, Enum):
    OK = "ok"
    LIMIT = "limit"
    POLE = "pole"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ZetaEvaluation:
    """One evaluation of the zeta ratio.

    ``value`` is None for poles and indeterminate 0/0 points; otherwise
    value * denominator == numerator up to rounding, except on the limit path
    where both determinants vanish.
    """

    z: complex
    beta: complex
    numerator: complex
    denominator: complex
    value: Optional[complex]
    flag: ZetaFlag
    N: int

    @property
    def limit_evaluated(self) -> bool:
        return self.flag is ZetaFlag.LIMIT


def section_det(matrix: OperatorMatrix, z: complex) -> complex:
    """det(I - z A) by pivoted LU."""
    a = matrix.entries
    m = np.eye(a.shape[0], dtype=complex) - complex(z) * a
    with warnings.catch_warnings():
        # an exactly singular factor is a legitimate zero of the determinant
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    det = complex(np.prod(np.diag(lu)))
    return -det if swaps % 2 else det


def _leading_modulus(matrix: OperatorMatrix) -> float:
    return float(np.max(np.abs(scipy.linalg.eigvals(matrix.entries))))


def fredholm_det(
    beta: BetaLike,
    z: complex,
    params: ModelParams,
    N: Optional[int] = None,
    route: str = "lu",
    n_max: int = 20,
) -> complex:
    """det(I - z L_beta^(N)).

    ``route="traces"`` uses exp(-sum_{n<=n_max} z^n tr L^n / n) with lattice
    traces; it is only offered where |z| * |rho_max| < 0.9.
    """
    N = N or config.SPECTRUM_DIM
    b = as_beta(beta)
    z = complex(z)
    matrix = ruelle_matrix(b, N, params)
    if route == "lu":
        return section_det(matrix, z)
    if route != "traces":
        raise DomainError(f"unknown determinant route {route!r}")
    radius = abs(z) * _leading_modulus(matrix)
    if radius >= 0.9:
        raise DomainError(f"trace route needs |z| |rho_max| < 0.9, got {radius:.3f}")
    total = 0j
    for n in range(1, n_max + 1):
        total += z**n * exact_trace_ruelle_power(n, b, params, use_symmetry=True) / n
    return complex(np.exp(-total))


def _derivative(matrix: OperatorMatrix, scale: float, z: complex, h: float) -> complex:
    """d/dz det(I - z scale A) by central difference."""
    up = section_det(matrix, (z + h) * scale)
    down = section_det(matrix, (z - h) * scale)
    return (up - down) / (2.0 * h)


def _richardson(matrix: OperatorMatrix, scale: float, z: complex, h: float) -> tuple[complex, complex]:
    coarse = _derivative(matrix, scale, z, h)
    fine = _derivative(matrix, scale, z, h / 2.0)
    return coarse, (4.0 * fine - coarse) / 3.0


def zeta_from_matrix(matrix: OperatorMatrix, z: complex, eps: Optional[float] = None,
                     step: Optional[float] = None) -> ZetaEvaluation:
    """Zeta ratio for a prebuilt Ruelle section."""
    eps = config.EPS_CANCEL if eps is None else eps
    h = config.DIFF_STEP if step is None else step
    lam = matrix.params.lam
    z = complex(z)
    num = section_det(matrix, z * lam)
    den = section_det(matrix, z)

    def result(value, flag):
        return ZetaEvaluation(z, matrix.beta, num, den, value, flag, matrix.dim)

    if abs(den) >= eps:
        return result(num / den, ZetaFlag.OK)
    if abs(num) >= eps:
        logger.warning("zeta pole at z=%s beta=%s (|det(1-zL)|=%.3e)", z, matrix.beta, abs(den))
        return result(None, ZetaFlag.POLE)

    num_coarse, num_fine = _richardson(matrix, lam, z, h)
    den_coarse, den_fine = _richardson(matrix, 1.0, z, h)
    if abs(den_fine) < eps:
        logger.warning("zeta indeterminate at z=%s beta=%s: derivative of denominator vanishes",
                       z, matrix.beta)
        return result(None, ZetaFlag.INDETERMINATE)
    coarse = num_coarse / den_coarse
    fine = num_fine / den_fine
    if abs(fine - coarse) > 1e-6 * max(1.0, abs(fine)):
        logger.warning("zeta indeterminate at z=%s beta=%s: derivative ratio unstable (%s vs %s)",
                       z, matrix.beta, coarse, fine)
        return result(None, ZetaFlag.INDETERMINATE)
    logger.warning("zeta at z=%s beta=%s evaluated on the 0/0 limit path", z, matrix.beta)
    return result(fine, ZetaFlag.LIMIT)


def zeta_value(
    z: complex,
    beta: BetaLike,
    params: ModelParams,
    N: Optional[int] = None,
    eps: Optional[float] = None,
    step: Optional[float] = None,
) -> ZetaEvaluation:
    """zeta_R(z, beta) from the two determinants of the N-section."""
    N = N or config.SPECTRUM_DIM
    return zeta_from_matrix(ruelle_matrix(as_beta(beta), N, params), z, eps=eps, step=step)


def det_product_check(matrix: OperatorMatrix, z: complex, eigenvalues: np.ndarray) -> tuple[complex, complex]:
    """(det(I - zA), prod(1 - z rho_i)) for the consistency check."""
    z = complex(z)
    return section_det(matrix, z), complex(np.prod(1.0 - z * np.asarray(eigenvalues)))


# used for rendering the flag in CSV rows
def flag_label(evaluation: ZetaEvaluation) -> str:
    return "" if evaluation.flag is ZetaFlag.OK else evaluation.flag.value


def finite_or_nan(value: Optional[complex]) -> complex:
    return complex(math.nan, math.nan) if value is None else complex(value)
