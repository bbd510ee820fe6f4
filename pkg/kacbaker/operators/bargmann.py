"""Segal-Bargmann transform and the Fock-space side of the operators.

    B f(z) = 2^{1/4} integral f(x) exp(2 pi x z - pi x^2 - (pi/2) z^2) dx

maps h_k to zeta_k(z) = sqrt(pi^k / k!) z^k. Coefficient space is the working
representation; the integral realizations are kept to check the identities.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

import numpy as np
from scipy.special import gammaln, roots_laguerre

from kacbaker.config import config
from kacbaker.errors import DomainError, UnsupportedDomainError
from kacbaker.model.params import BetaLike, ModelParams, as_beta
from kacbaker.operators.kacg import sqrt_cosh, k_double_prime_matrix
from kacbaker.operators.ruelle import apply_ruelle_pointwise
from kacbaker.report import VerificationReport, compare
from kacbaker.special.hermite import hermite_table
from kacbaker.special.quadrature import gaussian_rule, tail_fraction

logger = logging.getLogger(__name__)

Evaluable = Callable[[complex], complex]
LineFunction = Callable[[np.ndarray], np.ndarray]

FOURTH_ROOT_2 = 2.0**0.25
LINE_TAIL = 1e-14
_LINE_SIZES = (100, 200, 400)


def _fock_scale(K: int) -> np.ndarray:
    """sqrt(pi^k / k!) for k < K."""
    k = np.arange(K)
    return np.exp(0.5 * (k * math.log(math.pi) - gammaln(k + 1)))


def _finite_coeffs(coeffs, what: str) -> np.ndarray:
    a = np.asarray(coeffs, dtype=complex).ravel()
    if a.size == 0:
        raise DomainError(f"{what} needs at least one coefficient")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{what} has non-finite entries")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FockCoefficients:
    """F = sum c_k zeta_k."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _finite_coeffs(self.coeffs, "Fock expansion"))

    @classmethod
    def basis(cls, k: int) -> "FockCoefficients":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = 1.0
        return cls(c)

    def __call__(self, z) -> complex:
        z = complex(z)
        monomials = self.coeffs * _fock_scale(self.coeffs.size)
        # Horner on the monomial coefficients
        value = 0j
        for c in monomials[::-1]:
            value = value * z + c
        return value

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


@dataclass(frozen=True)
class HermiteCoefficients:
    """f = sum a_k h_k on the real line."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _finite_coeffs(self.coeffs, "Hermite expansion"))

    def __call__(self, x):
        table = hermite_table(self.coeffs.size, x)
        return np.tensordot(self.coeffs, table, axes=1)

    def to_fock(self) -> FockCoefficients:
        return FockCoefficients(self.coeffs)


def integrate_line(fn: LineFunction, *, what: str = "integrand") -> complex:
    """integral fn(x) dx for an integrand carrying its own Gaussian decay.

    The rule grows until the outermost nodes hold less than 1e-14 of the
    absolute mass. An integrand that never settles is rejected.
    """
    sizes = [q for q in _LINE_SIZES if q <= config.QUAD_MAX] or [config.QUAD_MAX]
    edge = float("inf")
    for Q in sizes:
        rule = gaussian_rule(Q)
        with np.errstate(over="ignore", invalid="ignore"):
            values = np.asarray(fn(rule.nodes), dtype=complex)
        if not np.all(np.isfinite(values)):
            raise DomainError(f"{what} is not finite on the quadrature range; "
                              "inputs must grow slower than exp(pi x^2)")
        edge = tail_fraction(rule, values)
        if edge < LINE_TAIL:
            return complex(rule.integrate(values))
    raise DomainError(f"{what} does not decay at the quadrature edge (tail share {edge:.3e}); "
                      "inputs must grow slower than exp(pi x^2)")


def _bargmann_integrand(f: LineFunction, z: complex) -> LineFunction:
    def integrand(x):
        return FOURTH_ROOT_2 * f(x) * np.exp(2.0 * math.pi * x * z - math.pi * x * x - 0.5 * math.pi * z * z)

    return integrand


def bargmann_transform(f: Union[HermiteCoefficients, LineFunction], z: complex) -> complex:
    """B f(z); exact on Hermite coefficients, by quadrature on a sampled function."""
    z = complex(z)
    if isinstance(f, HermiteCoefficients):
        return f.to_fock()(z)
    return integrate_line(_bargmann_integrand(f, z), what="Bargmann integrand")


def bargmann_transform_quadrature(f: HermiteCoefficients, z: complex) -> complex:
    """The integral route for a Hermite expansion."""
    return integrate_line(_bargmann_integrand(f, complex(z)), what="Bargmann integrand")


def fock_norm_sq(F: FockCoefficients, route: str = "coefficients", points: Optional[int] = None) -> float:
    """||F||^2 in the Fock space with measure exp(-pi |z|^2) dA.

    ``route="quadrature"`` integrates |F|^2 in polar form: trapezoidal in the
    angle and Gauss-Laguerre in u = pi r^2. Exact for polynomial F of degree
    below ``points``.
    """
    if route == "coefficients":
        return F.norm_sq()
    if route != "quadrature":
        raise DomainError(f"unknown route {route!r}")
    P = points or F.coeffs.size + 8
    u, w = roots_laguerre(P)
    theta = 2.0 * math.pi * np.arange(2 * P) / (2 * P)
    r = np.sqrt(u / math.pi)
    total = 0.0
    for t in theta:
        values = np.array([F(rj * np.exp(1j * t)) for rj in r])
        total += float(np.dot(w, np.abs(values) ** 2))
    return total / theta.size


def m_lambda_apply(F: Union[FockCoefficients, Evaluable], z: complex, params: ModelParams) -> complex:
    """(M_lam F)(z) = 2 sqrt(lam) F(lam z)."""
    lam = params.lam
    return 2.0 * math.sqrt(lam) * complex(F(lam * complex(z)))


def m_lambda_coefficients(F: FockCoefficients, params: ModelParams) -> FockCoefficients:
    """M_lam is diagonal on zeta_k with eigenvalue 2 lam^{k+1/2}."""
    k = np.arange(F.coeffs.size)
    return FockCoefficients(2.0 * np.exp((k + 0.5) * math.log(params.lam)) * F.coeffs)


def c_s_apply(F: Evaluable, z: complex, s: float) -> complex:
    """C_s F(z) = 1/2 e^{s^2/8pi} (e^{sz/2} F(z + s/2pi) + e^{-sz/2} F(z - s/2pi))."""
    z = complex(z)
    shift = s / (2.0 * math.pi)
    return 0.5 * np.exp(s * s / (8.0 * math.pi)) * (
        np.exp(0.5 * s * z) * F(z + shift) + np.exp(-0.5 * s * z) * F(z - shift)
    )


def cs_m_lambda_composite(F: Evaluable, z: complex, s: complex, params: ModelParams) -> complex:
    """(C_s M_lam F)(z) = sqrt(lam) e^{s^2/8pi} (e^{sz/2} F(lam z + lam s/2pi) + e^{-sz/2} F(lam z - lam s/2pi))."""
    z = complex(z)
    lam = params.lam
    shift = lam * s / (2.0 * math.pi)
    return math.sqrt(lam) * np.exp(s * s / (8.0 * math.pi)) * (
        np.exp(0.5 * s * z) * F(lam * z + shift) + np.exp(-0.5 * s * z) * F(lam * z - shift)
    )


def rescaled_composite(F: Evaluable, z: complex, beta: BetaLike, params: ModelParams) -> complex:
    """nu_{1/alpha} C_s M_lam nu_alpha F at z, with s = 2 sqrt(pi beta), alpha = sqrt(pi/beta).

    Equals sqrt(lam) e^{beta/2} (L_beta F)(z).
    """
    b = as_beta(beta)
    if b == 0:
        raise DomainError("the rescaling alpha = sqrt(pi/beta) needs beta != 0")
    s = 2.0 * np.sqrt(math.pi * b)
    alpha = np.sqrt(math.pi / b)
    return complex(cs_m_lambda_composite(lambda w: F(alpha * w), complex(z) / alpha, s, params))


def _real_nonnegative(beta: BetaLike) -> float:
    b = as_beta(beta)
    if b.imag != 0.0 or b.real < 0.0:
        raise UnsupportedDomainError(f"the connection formula is defined for real beta >= 0, got {b!r}")
    return b.real


def connection_forward(f: HermiteCoefficients, beta: BetaLike, z: complex, params: ModelParams) -> complex:
    """F(z) = (8 pi)^{1/4} integral sqrt(cosh(2 sqrt(pi beta) xi)) f(2 sqrt(pi) xi)
    exp(2 sqrt(pi beta) xi z - pi xi^2 - (beta/2) z^2) dxi.

    ``f`` holds the unitary-variable coefficients, f(2 sqrt(pi) xi) =
    (2 sqrt(pi))^{-1/2} sum a_k h_k(xi). ``params`` fixes the operator the
    eigenvector came from and is not used by the integral itself.
    """
    b = _real_nonnegative(beta)
    z = complex(z)
    rb = math.sqrt(math.pi * b)
    prefactor = (8.0 * math.pi) ** 0.25 * (2.0 * math.sqrt(math.pi)) ** -0.5

    def integrand(xi):
        return prefactor * sqrt_cosh(2.0 * rb * xi) * f(xi) * np.exp(
            2.0 * rb * xi * z - math.pi * xi * xi - 0.5 * b * z * z)

    return integrate_line(integrand, what="connection integrand")


def connection_inverse(taylor: Iterable[complex], beta: BetaLike) -> HermiteCoefficients:
    """Hermite coefficients of sqrt(cosh) f from the Taylor coefficients of F.

    With F(z) = sum t_k z^k, F(alpha w) has Fock coefficients
    t_k alpha^k sqrt(k!/pi^k) = t_k sqrt(k!) beta^{-k/2}, and B^{-1} maps them to
    the same Hermite coefficients.
    """
    b = _real_nonnegative(beta)
    if b == 0.0:
        raise DomainError("the inverse connection needs beta > 0")
    t = np.asarray(list(taylor), dtype=complex)
    k = np.arange(t.size)
    return HermiteCoefficients(t * np.exp(0.5 * gammaln(k + 1) - 0.5 * k * math.log(b)))


def divide_by_weight(weighted: HermiteCoefficients, beta: BetaLike, N: int) -> HermiteCoefficients:
    """Project (sum c_k h_k) / sqrt(cosh(2 sqrt(pi beta) x)) onto h_0 .. h_{N-1}."""
    b = _real_nonnegative(beta)
    rb = math.sqrt(math.pi * b)
    K = max(N, weighted.coeffs.size)
    Q = min(max(config.QUAD_FACTOR * K, 200), config.QUAD_MAX)
    rule = gaussian_rule(Q)
    h = hermite_table(K, rule.nodes)
    values = (weighted.coeffs @ h[: weighted.coeffs.size]) / sqrt_cosh(2.0 * rb * rule.nodes)
    return HermiteCoefficients((h[:N] * rule.weights) @ values)


_DEFAULT_Z = (0.4 + 0j, -0.3 + 0.5j, 1.1 - 0.2j, 0.2j)


def verify_operator_identities(
    seeds: Iterable[int] = (0, 1, 2),
    tol: float = 1e-8,
    params: Optional[ModelParams] = None,
    z_points: Iterable[complex] = _DEFAULT_Z,
) -> VerificationReport:
    """Both sides of the Fock-space identities on Hermite test functions h_k, k in ``seeds``.

    translation:  B tau_r B^{-1} F(z) = e^{-pi r^2/2} e^{pi r z} F(z - r)
    exponential:  B m_{e^{sx}} B^{-1} F(z) = e^{s^2/8pi} e^{sz/2} F(z + s/2pi)
    plus basis transport, the M_lam diagonal and the conjugacy with L_beta.
    """
    params = params or ModelParams(0.5)
    seeds = list(seeds)
    z_points = [complex(z) for z in z_points]
    report = VerificationReport()

    for k in seeds:
        fk = HermiteCoefficients(np.eye(k + 1)[k])
        F = fk.to_fock()
        for z in z_points:
            report.add(compare(f"basis_transport[k={k},z={z}]",
                               bargmann_transform_quadrature(fk, z), F(z), tol))
        for r in (0.0, 0.5, -0.3):
            shifted = lambda x, r=r: fk(x - r)
            for z in z_points:
                lhs = bargmann_transform(shifted, z)
                rhs = np.exp(-0.5 * math.pi * r * r + math.pi * r * z) * F(z - r)
                report.add(compare(f"translation[k={k},r={r},z={z}]", lhs, rhs, tol))
        for s in (0.0, 1.0, -0.7):
            weighted = lambda x, s=s: np.exp(s * x) * fk(x)
            for z in z_points:
                lhs = bargmann_transform(weighted, z)
                rhs = np.exp(s * s / (8.0 * math.pi) + 0.5 * s * z) * F(z + s / (2.0 * math.pi))
                report.add(compare(f"exponential[k={k},s={s},z={z}]", lhs, rhs, tol))

    K = 31
    kpp = np.diag(k_double_prime_matrix(K, params).entries)
    diag = 2.0 * np.exp((np.arange(K) + 0.5) * math.log(params.lam))
    for k in range(K):
        report.add(compare(f"m_lambda_diagonal[k={k}]", kpp[k], diag[k], tol))

    poly = np.array([1.0, 1.0, -0.5, 0.25])

    def test_poly(w):
        return complex(np.polyval(poly[::-1], w))

    for b in (0.7, 1.3 + 0.4j):
        for z in z_points:
            lhs = rescaled_composite(test_poly, z, b, params)
            rhs = math.sqrt(params.lam) * np.exp(0.5 * b) * apply_ruelle_pointwise(b, test_poly, z, params)
            report.add(compare(f"ruelle_conjugacy[beta={b},z={z}]", lhs, rhs, tol, relative=True))

    for name, worst in report.max_deviation().items():
        logger.debug("identity %s max deviation %.3e", name, worst)
    for failure in report.failures:
        logger.warning("identity check failed: %s abs_err=%.3e", failure.check_name, failure.abs_err)
    return report
