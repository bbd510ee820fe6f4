"""Associated Laguerre polynomials L^a_n."""

import numpy as np
from scipy.special import comb, gammaln

from kacbaker.errors import DomainError


def _check(n: int, a: int) -> None:
    if n < 0 or a < 0:
        raise DomainError(f"Laguerre degree and superscript must be non-negative, got n={n}, a={a}")


def laguerre_assoc(n: int, a: int, x):
    """L^a_n(x) by (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}.

    ``x`` may be complex (L^a_n(-beta) for complex beta).
    """
    _check(n, a)
    x = np.asarray(x)
    prev = np.ones_like(x, dtype=np.result_type(x, float))
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur[()] if np.ndim(cur) == 0 else cur


def laguerre_column(n_max: int, a: int, x: complex) -> np.ndarray:
    """[L^a_0(x), ..., L^a_{n_max}(x)] for one argument."""
    _check(n_max, a)
    out = np.empty(n_max + 1, dtype=complex)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 + a - x
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + 1 + a - x) * out[k] - (k + a) * out[k - 1]) / (k + 1)
    return out


def laguerre_explicit(n: int, a: int, x):
    """Monomial expansion sum_i (-1)^i C(n+a, n-i) x^i / i!."""
    _check(n, a)
    x = np.asarray(x)
    total = np.zeros_like(x, dtype=np.result_type(x, float))
    for i in range(n + 1):
        total = total + (-1) ** i * comb(n + a, n - i, exact=False) * x**i * np.exp(-gammaln(i + 1))
    return total[()] if np.ndim(total) == 0 else total
