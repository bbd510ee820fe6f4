"""Hermite functions in the e^{-pi x^2} normalization.

    h_0(x) = 2^{1/4} exp(-pi x^2)
    h_{k+1}(x) = sqrt(pi/(k+1)) 2x h_k(x) - sqrt(k/(k+1)) h_{k-1}(x)

form an orthonormal basis of L^2(R, dx). They relate to the standard
oscillator functions psi_k(t) = (2^k k! sqrt(pi))^{-1/2} H_k(t) e^{-t^2/2} by
h_k(x) = (2 pi)^{1/4} psi_k(sqrt(2 pi) x).
"""

import math

import numpy as np
from scipy.special import eval_hermite, gammaln

from kacbaker.errors import DomainError

SQRT_2PI = math.sqrt(2.0 * math.pi)


def hermite_table(K: int, x) -> np.ndarray:
    """h_0 .. h_{K-1} at x; result has shape (K,) + shape(x)."""
    if K < 1:
        raise DomainError(f"table size must be positive, got {K}")
    x = np.asarray(x, dtype=float)
    table = np.empty((K,) + x.shape)
    table[0] = 2.0**0.25 * np.exp(-math.pi * x * x)
    if K > 1:
        table[1] = 2.0 * math.sqrt(math.pi) * x * table[0]
    for k in range(1, K - 1):
        table[k + 1] = (math.sqrt(math.pi / (k + 1)) * 2.0 * x * table[k]
                        - math.sqrt(k / (k + 1)) * table[k - 1])
    return table


def hermite_h(k: int, x):
    """h_k(x) by forward recurrence."""
    if k < 0:
        raise DomainError(f"Hermite index must be non-negative, got {k}")
    value = hermite_table(k + 1, x)[k]
    return float(value) if np.ndim(value) == 0 else value


def hermite_h_closed_form(k: int, x):
    """h_k(x) from the Rodrigues representation.

    h_k = (2^{1/4}/sqrt(k!)) (-1/(2 sqrt(pi)))^k e^{pi x^2} (d/dx)^k e^{-2 pi x^2}
        = 2^{1/4} 2^{-k/2} (k!)^{-1/2} H_k(sqrt(2 pi) x) e^{-pi x^2}
    with H_k the physicists' Hermite polynomial.
    """
    if k < 0:
        raise DomainError(f"Hermite index must be non-negative, got {k}")
    x = np.asarray(x, dtype=float)
    scale = math.exp(0.25 * math.log(2.0) - 0.5 * k * math.log(2.0) - 0.5 * gammaln(k + 1))
    value = scale * eval_hermite(k, SQRT_2PI * x) * np.exp(-math.pi * x * x)
    return float(value) if np.ndim(value) == 0 else value


def oscillator_table(K: int, t, dtype=float) -> np.ndarray:
    """psi_0 .. psi_{K-1} at t (weight e^{-t^2} convention).

    Pass ``dtype=np.longdouble`` when t reaches past sqrt(2K).
    """
    t = np.asarray(t, dtype=dtype)
    table = np.empty((K,) + t.shape, dtype=dtype)
    table[0] = math.pi**-0.25 * np.exp(-0.5 * t * t)
    if K > 1:
        table[1] = math.sqrt(2.0) * t * table[0]
    for k in range(1, K - 1):
        table[k + 1] = math.sqrt(2.0 / (k + 1)) * t * table[k] - math.sqrt(k / (k + 1)) * table[k - 1]
    return table
