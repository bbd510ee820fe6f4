"""Gauss-Hermite rule adapted to the weight exp(-2 pi x^2).

Nodes are the roots t_j of H_Q mapped to x_j = t_j / sqrt(2 pi). Weights are
stored pre-multiplied by exp(t_j^2), computed as 1 / (Q psi_{Q-1}(t_j)^2), so
that the full integrand (Gaussian included) is summed directly and no weight
underflows at the outer nodes.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_hermite

from kacbaker.cache import get_cache
from kacbaker.config import config
from kacbaker.errors import ResourceLimitError
from kacbaker.special.hermite import SQRT_2PI, hermite_table, oscillator_table


@dataclass(frozen=True)
class GaussianRule:
    """Quadrature in the x variable: integral f(x) dx ~ sum_j weights_j f(x_j).

    Exact when f(x) exp(2 pi x^2) is a polynomial of degree < 2Q.
    """

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.nodes.size

    def integrate(self, values) -> complex:
        return np.dot(self.weights, values)


def _build_rule(Q: int) -> GaussianRule:
    t, _ = roots_hermite(Q)
    psi_last = oscillator_table(Q, t, dtype=np.longdouble)[Q - 1]
    scaled = (1.0 / (Q * psi_last**2)).astype(float)
    nodes = t / SQRT_2PI
    weights = scaled / SQRT_2PI
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return GaussianRule(nodes=nodes, weights=weights)


def gaussian_rule(Q: int) -> GaussianRule:
    """Shared Q-point rule."""
    if Q < 1:
        raise ResourceLimitError(f"quadrature size must be positive, got {Q}")
    if Q > config.QUAD_MAX:
        raise ResourceLimitError(f"quadrature size {Q} exceeds KACBAKER_QUAD_MAX={config.QUAD_MAX}")
    return get_cache().get_or_compute(("gaussian_rule", Q), lambda: _build_rule(Q))


def hermite_at_nodes(K: int, Q: int) -> np.ndarray:
    """h_0..h_{K-1} at the nodes of ``gaussian_rule(Q)``, shape (K, Q)."""

    def compute():
        table = hermite_table(K, gaussian_rule(Q).nodes)
        table.setflags(write=False)
        return table

    return get_cache().get_or_compute(("hermite_at_nodes", K, Q), compute)


def tail_fraction(rule: GaussianRule, values, edge: int = 3) -> float:
    """Share of |integral| contributed by the ``edge`` outermost nodes on each side."""
    contrib = np.abs(rule.weights * np.asarray(values))
    total = contrib.sum()
    if total == 0.0:
        return 0.0
    outer = contrib[:edge].sum() + contrib[-edge:].sum()
    return float(outer / total)


def default_quadrature_size(N: int, k_cut: int) -> int:
    """Q >= 4N and large enough to resolve products h_n h_k with k < k_cut."""
    return min(max(config.QUAD_FACTOR * N, 2 * (N + k_cut)), config.QUAD_MAX)


def integrate_gaussian(f, Q: int = 200) -> float:
    """integral f(x) dx for Gaussian-dominated f."""
    rule = gaussian_rule(Q)
    return rule.integrate(np.array([f(x) for x in rule.nodes]))

