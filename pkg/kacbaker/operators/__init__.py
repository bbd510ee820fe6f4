"""Operators module - Ruelle, Kac-Gutzwiller and Fock-space operators."""

from kacbaker.operators.matrix import Basis, OperatorMatrix, ParityPair
from kacbaker.operators.ruelle import (
    ruelle_matrix,
    apply_ruelle_pointwise,
    apply_parity_pointwise,
    parity_matrices,
    truncated_trace_power,
    taylor_coefficients,
    sinh_eigenvector,
)
from kacbaker.operators.kacg import (
    BMatrix,
    mehler_sides,
    kac_kernel,
    ktilde_kernel,
    kac_factorized,
    g_kernel,
    b_matrix,
    trace_g_closed_form,
    g_matrix_quadrature,
    k_double_prime_matrix,
)
from kacbaker.operators.bargmann import (
    FockCoefficients,
    HermiteCoefficients,
    bargmann_transform,
    fock_norm_sq,
    m_lambda_apply,
    c_s_apply,
    cs_m_lambda_composite,
    connection_forward,
    connection_inverse,
    verify_operator_identities,
)

__all__ = [
    "Basis",
    "OperatorMatrix",
    "ParityPair",
    "ruelle_matrix",
    "apply_ruelle_pointwise",
    "apply_parity_pointwise",
    "parity_matrices",
    "truncated_trace_power",
    "taylor_coefficients",
    "sinh_eigenvector",
    "BMatrix",
    "mehler_sides",
    "kac_kernel",
    "ktilde_kernel",
    "kac_factorized",
    "g_kernel",
    "b_matrix",
    "trace_g_closed_form",
    "g_matrix_quadrature",
    "k_double_prime_matrix",
    "FockCoefficients",
    "HermiteCoefficients",
    "bargmann_transform",
    "fock_norm_sq",
    "m_lambda_apply",
    "c_s_apply",
    "cs_m_lambda_composite",
    "connection_forward",
    "connection_inverse",
    "verify_operator_identities",
]
