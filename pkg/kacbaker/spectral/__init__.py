"""Spectral module - eigenvalues, determinants, zeta function and zeros."""

from kacbaker.spectral.eigen import Spectrum, eigenvalues, spectrum_converged
from kacbaker.spectral.zeta import ZetaEvaluation, ZetaFlag, fredholm_det, zeta_value
from kacbaker.spectral.zeros import (
    ZeroKind,
    ZeroRecord,
    ZeroSearchResult,
    cancellation_candidates,
    find_line_zeros,
    find_real_zeros,
)
from kacbaker.spectral.checks import (
    asymptotic_ratios,
    eigenfunction_connection_check,
    spectra_match,
    trace_asymptote,
)

__all__ = [
    "Spectrum",
    "eigenvalues",
    "spectrum_converged",
    "ZetaEvaluation",
    "ZetaFlag",
    "fredholm_det",
    "zeta_value",
    "ZeroKind",
    "ZeroRecord",
    "ZeroSearchResult",
    "cancellation_candidates",
    "find_line_zeros",
    "find_real_zeros",
    "asymptotic_ratios",
    "eigenfunction_connection_check",
    "spectra_match",
    "trace_asymptote",
]
