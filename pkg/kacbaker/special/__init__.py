"""Special functions module - Hermite functions, Laguerre polynomials, quadrature."""

from kacbaker.special.hermite import hermite_h, hermite_h_closed_form, hermite_table, oscillator_table
from kacbaker.special.laguerre import laguerre_assoc, laguerre_column, laguerre_explicit
from kacbaker.special.quadrature import GaussianRule, gaussian_rule, hermite_at_nodes, integrate_gaussian

__all__ = [
    "hermite_h",
    "hermite_h_closed_form",
    "hermite_table",
    "oscillator_table",
    "laguerre_assoc",
    "laguerre_column",
    "laguerre_explicit",
    "GaussianRule",
    "gaussian_rule",
    "hermite_at_nodes",
    "integrate_gaussian",
]
