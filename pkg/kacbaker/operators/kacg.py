"""Kac and Kac-Gutzwiller integral operators.

Kernels are written in the Kac variable xi; Hermite-basis matrices use the
unitary variable x = xi / (2 sqrt(pi)), in which

    K''_c(x, y) = 2 sum_k exp(-(k + 1/2) gamma) h_k(x) h_k(y)

and the Gutzwiller operator is (lam e^beta)^{-1/2} m_s K''_c m_s with
s(x) = sqrt(cosh(2 sqrt(pi beta) x)).
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.special import gammaln

from kacbaker.config import config
from kacbaker.errors import ConvergenceError, DomainError, ResourceLimitError, UnsupportedDomainError
from kacbaker.model.params import BetaLike, ModelParams, as_beta
from kacbaker.operators.matrix import Basis, OperatorMatrix
from kacbaker.special.hermite import hermite_table
from kacbaker.special.laguerre import laguerre_column
from kacbaker.special.quadrature import (
    default_quadrature_size,
    gaussian_rule,
    hermite_at_nodes,
    tail_fraction,
)

logger = logging.getLogger(__name__)

TWO_SQRT_PI = 2.0 * math.sqrt(math.pi)


class MehlerSides(NamedTuple):
    lhs: float
    rhs: float


def _check_lam(lam: float) -> None:
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam!r}")


def mehler_kernel(lam: float, x, y):
    """(2/(1-lam^2))^{1/2} exp((-pi(1+lam^2)(x^2+y^2) + 4 pi lam x y)/(1-lam^2))."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = 1.0 - lam * lam
    return math.sqrt(2.0 / d) * np.exp((-math.pi * (1.0 + lam * lam) * (x * x + y * y)
                                        + 4.0 * math.pi * lam * x * y) / d)


def mehler_kernel_kac_form(lam: float, x, y):
    """The same kernel through xi = 2 sqrt(pi) x, written with gamma = -ln lam."""
    g = -math.log(lam)
    xi = TWO_SQRT_PI * np.asarray(x, dtype=float)
    eta = TWO_SQRT_PI * np.asarray(y, dtype=float)
    return (math.sqrt(1.0 / math.sinh(g)) * math.exp(0.5 * g)
            * np.exp(-0.25 * math.tanh(0.5 * g) * (xi * xi + eta * eta)
                     - (xi - eta) ** 2 / (4.0 * math.sinh(g))))


def mehler_sides(lam: float, x: float, y: float, K: int) -> MehlerSides:
    """Partial Mehler sum against its closed form.

    Raises ConvergenceError if the two closed forms disagree, which would
    mean the kernel conventions have drifted apart.
    """
    _check_lam(lam)
    if K < 1:
        raise DomainError(f"partial-sum length must be positive, got {K}")
    h = hermite_table(K, np.array([x, y], dtype=float))
    powers = np.exp(np.arange(K) * math.log(lam))
    lhs = math.fsum(powers * h[:, 0] * h[:, 1])
    rhs = float(mehler_kernel(lam, x, y))
    rewritten = float(mehler_kernel_kac_form(lam, x, y))
    if not math.isclose(rhs, rewritten, rel_tol=1e-10, abs_tol=1e-300):
        raise ConvergenceError("Mehler closed forms disagree", rhs=rhs, rewritten=rewritten)
    return MehlerSides(lhs=lhs, rhs=rhs)


def _gaussian_part(gamma: float, xi, eta):
    return np.exp(-0.25 * math.tanh(0.5 * gamma) * (xi * xi + eta * eta)
                  - (xi - eta) ** 2 / (4.0 * math.sinh(gamma)))


def ktilde_kernel(xi: float, eta: float, params: ModelParams) -> float:
    g = params.gamma
    return float(math.sqrt(1.0 / math.sinh(g)) * math.exp(0.5 * g) * _gaussian_part(g, xi, eta))


def kac_kernel(beta: BetaLike, xi: float, eta: float, params: ModelParams) -> complex:
    """K_beta(xi, eta); square roots on the principal branch."""
    b = as_beta(beta)
    g = params.gamma
    rb = np.sqrt(b)
    amplitude = np.sqrt(np.cosh(rb * xi) * np.cosh(rb * eta) / (math.pi * math.sinh(g)))
    return complex(amplitude * _gaussian_part(g, xi, eta))


def kac_factorized(beta: BetaLike, xi: float, eta: float, params: ModelParams) -> complex:
    """(cosh(sqrt(beta) xi) cosh(sqrt(beta) eta) / (pi e^gamma))^{1/2} K~(xi, eta)."""
    b = as_beta(beta)
    rb = np.sqrt(b)
    amplitude = np.sqrt(np.cosh(rb * xi) * np.cosh(rb * eta) / (math.pi * math.exp(params.gamma)))
    return complex(amplitude * ktilde_kernel(xi, eta, params))


def g_kernel(beta: BetaLike, xi: float, eta: float, params: ModelParams) -> complex:
    b = as_beta(beta)
    return complex(np.exp(-0.5 * (math.log(params.lam) + b)) * kac_kernel(b, xi, eta, params))


@dataclass(frozen=True)
class BMatrix(OperatorMatrix):
    """Gutzwiller's closed-form section in the Hermite basis.

    ``printed`` marks the literal form without the beta^mu factor.
    """

    printed: bool = False

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))


def b_matrix(beta: BetaLike, N: int, params: ModelParams, printed: bool = False) -> BMatrix:
    """B_{n,m} = 2 e^{-(n+m) gamma/2} sqrt((M-2mu)!/M!) beta^mu L^{2mu}_{M-2mu}(-beta).

    M = max(n, m), 2 mu = |n - m|; entries with odd |n - m| vanish. With
    ``printed=True`` the beta^mu factor is dropped.
    """
    if N < 1:
        raise DomainError(f"dimension must be positive, got {N}")
    b = as_beta(beta)
    g = params.gamma
    entries = np.zeros((N, N), dtype=complex)

    for two_mu in range(0, N, 2):
        mu = two_mu // 2
        # L^{2mu}_j(-beta) for j = M - 2mu = 0 .. N-1-2mu
        lag = laguerre_column(N - 1 - two_mu, two_mu, -b)
        j = np.arange(N - two_mu)
        big = j + two_mu
        log_mag = (math.log(2.0) - 0.5 * (j + big) * g
                   + 0.5 * (gammaln(j + 1) - gammaln(big + 1)))
        if printed or mu == 0:
            factor = 1.0 + 0j
        elif b == 0:
            factor = 0j
        elif b.imag == 0.0:
            factor = complex(b.real**mu)
        else:
            factor = np.exp(mu * np.log(b))
        values = np.exp(log_mag) * factor * lag
        entries[j, big] = values
        entries[big, j] = values

    return BMatrix(entries, Basis.HERMITE, b, params, printed=printed)


def trace_g_closed_form(beta: BetaLike, params: ModelParams) -> complex:
    """2 (1-lam)^{-1} exp(beta lam / (1-lam))."""
    b = as_beta(beta)
    lam = params.lam
    return complex(2.0 / (1.0 - lam) * np.exp(b * lam / (1.0 - lam)))


def sqrt_cosh(a: np.ndarray) -> np.ndarray:
    """sqrt(cosh a) without overflow for large |a|."""
    a = np.abs(a)
    return np.exp(0.5 * (a + np.log1p(np.exp(-2.0 * a)) - math.log(2.0)))


def _real_nonnegative_beta(beta: BetaLike) -> float:
    b = as_beta(beta)
    if b.imag != 0.0 or b.real < 0.0:
        raise UnsupportedDomainError(
            f"the quadrature G-matrix is built for real beta >= 0 only, got {b!r}; "
            "use the Ruelle section for other beta"
        )
    return b.real


def g_matrix_quadrature(
    beta: BetaLike,
    N: int,
    params: ModelParams,
    Q: Optional[int] = None,
    k_cut: Optional[int] = None,
) -> OperatorMatrix:
    """Hermite-basis section of (lam e^beta)^{-1/2} m_s K''_c m_s.

    entry(n, m) = (lam e^beta)^{-1/2} 2 sum_{k<k_cut} e^{-(k+1/2) gamma} c_nk c_mk
    with c_nk = integral h_n s h_k dx by Gaussian quadrature.
    """
    if N < 1:
        raise DomainError(f"dimension must be positive, got {N}")
    b = _real_nonnegative_beta(beta)
    g = params.gamma
    if k_cut is None:
        k_cut = N + config.KCUT_EXTRA
    if k_cut < N:
        raise DomainError(f"k_cut={k_cut} must be at least N={N}")
    if Q is None:
        Q = default_quadrature_size(N, k_cut)
    if Q < 4 * N:
        raise ResourceLimitError(
            f"quadrature size Q={Q} must be at least 4N={4 * N}; "
            f"raise KACBAKER_QUAD_MAX (currently {config.QUAD_MAX}) or lower N"
        )

    rule = gaussian_rule(Q)
    h = hermite_at_nodes(k_cut, Q)
    s = sqrt_cosh(2.0 * math.sqrt(math.pi * b) * rule.nodes)

    c = (h[:N] * (rule.weights * s)) @ h.T
    decay = np.exp(-(np.arange(k_cut) + 0.5) * g)
    scale = math.exp(-0.5 * (math.log(params.lam) + b))
    entries = 2.0 * scale * (c * decay) @ c.T
    entries = 0.5 * (entries + entries.T)

    edge = tail_fraction(rule, h[N - 1] * s * h[k_cut - 1])
    truncation = 2.0 * scale * math.exp(-(k_cut + 0.5) * g) / (1.0 - params.lam)
    logger.debug("G-matrix beta=%g N=%d Q=%d k_cut=%d truncation<=%.3e edge=%.3e",
                 b, N, Q, k_cut, truncation, edge)
    if edge > 1e-8:
        logger.warning("quadrature edge mass %.3e for beta=%g N=%d Q=%d; increase Q", edge, b, N, Q)

    return OperatorMatrix(entries, Basis.HERMITE, complex(b), params)


def k_double_prime_matrix(N: int, params: ModelParams, Q: Optional[int] = None) -> OperatorMatrix:
    """Hermite-basis section of K''_c from its closed kernel by 2-D quadrature.

    Should come out as diag(2 e^{-(k+1/2) gamma}).
    """
    if N < 1:
        raise DomainError(f"dimension must be positive, got {N}")
    if Q is None:
        Q = min(max(config.QUAD_FACTOR * N, 200), config.QUAD_MAX)
    rule = gaussian_rule(Q)
    h = hermite_at_nodes(N, Q)
    x = rule.nodes
    kernel = 2.0 * math.exp(-0.5 * params.gamma) * mehler_kernel(params.lam, x[:, None], x[None, :])
    hw = h * rule.weights
    entries = hw @ kernel @ hw.T
    entries = 0.5 * (entries + entries.T)
    return OperatorMatrix(entries, Basis.HERMITE, 0j, params)
