"""
The elliptic derivative E z^n = e_n z^(n-1) acting on coefficient vectors.

E lowers degree by one and swaps the two families:
e_n Phi^(D)_(n-1) = E Phi^(C)_n and e_n Phi^(C)_(n-1) = E Phi^(D)_n.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from ..circle.families import explicit_poly
from ..circle.types import PolynomialLike, coefficients_of
from ..config import Config
from ..utils.error_handlers import DegeneracyError, DomainError
from .binomial import EbcParams, make_params
from .kernel import EllipticContext, jacobi_sn

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExpansionResult:
    """Truncated q-derivative expansion of E applied to a polynomial."""
    polynomial: Polynomial
    tail_bound: float
    terms: int


@dataclass
class IntertwiningReport:
    """Scaled coefficient residuals per degree for each relation."""
    residuals: dict = field(default_factory=dict)  # relation name -> {n: residual}

    @property
    def max_residual(self) -> float:
        values = [r for per_n in self.residuals.values() for r in per_n.values()]
        return max(values) if values else 0.0


def elliptic_numbers(n_max: int, p: EbcParams) -> np.ndarray:
    """e_0..e_n_max = sn(wn)/sn(w)."""
    sn_w = jacobi_sn(p.w, p.ctx)
    if abs(sn_w) < Config.DEGENERACY_TOL:
        raise DegeneracyError(0, f"sn(w) = {sn_w:.3e}")
    values = np.asarray(jacobi_sn(p.w * np.arange(n_max + 1, dtype=float), p.ctx)).reshape(-1) / sn_w
    values[0] = 0.0
    return values


def apply_E(p: PolynomialLike, params: EbcParams) -> Polynomial:
    """
    Apply the elliptic derivative to a polynomial.

    Args:
        p: Polynomial (monic circle polynomial, numpy Polynomial or coefficients).
        params: Step parameter and context.

    Returns:
        Polynomial of degree deg(p) - 1; the zero polynomial for constants.
    """
    coeffs = coefficients_of(p)
    if coeffs.size <= 1:
        return Polynomial([0.0])
    e = elliptic_numbers(coeffs.size - 1, params)
    return Polynomial(coeffs[1:] * e[1:])


def apply_W_j(p: PolynomialLike, j: int, theta: float) -> Polynomial:
    """q-derivative operator W_j z^n = sin(n j theta) z^(n-1)."""
    if j < 1:
        raise DomainError(f"operator index j={j} must be >= 1")
    coeffs = coefficients_of(p)
    if coeffs.size <= 1:
        return Polynomial([0.0])
    n = np.arange(1, coeffs.size, dtype=float)
    return Polynomial(coeffs[1:] * np.sin(n * j * theta))


def expansion_coefficients(J: int, params: EbcParams) -> np.ndarray:
    """beta_1..beta_J = 2 pi q^(j-1/2) / (K k (1 - q^(2j-1)) sn(w))."""
    ctx = params.ctx
    q = ctx.nome_q
    sn_w = jacobi_sn(params.w, ctx)
    if abs(sn_w) < Config.DEGENERACY_TOL:
        raise DegeneracyError(0, f"sn(w) = {sn_w:.3e}")
    j = np.arange(1, J + 1, dtype=float)
    return 2.0 * math.pi * q ** (j - 0.5) / (ctx.big_K * ctx.k * (1.0 - q ** (2.0 * j - 1.0)) * sn_w)


def E_via_W_expansion(p: PolynomialLike, params: EbcParams, J: int) -> ExpansionResult:
    """
    sum_(j<=J) beta_j W_(2j-1) p with theta = pi w/(2K).

    The error on each coefficient c_n is at most
    2 pi q^(J+1/2) / (K k |sn w| (1-q)^2) |c_n|, so terms shrink by about q each.
    """
    if J < 1:
        raise DomainError(f"J={J} must be >= 1")
    ctx = params.ctx
    theta = math.pi * params.w / (2.0 * ctx.big_K)
    beta = expansion_coefficients(J, params)

    coeffs = coefficients_of(p)
    total = np.zeros(max(coeffs.size - 1, 1))
    for j in range(1, J + 1):
        term = apply_W_j(coeffs, 2 * j - 1, theta).coef
        total[: term.size] += beta[j - 1] * term

    q = ctx.nome_q
    sn_w = abs(jacobi_sn(params.w, ctx))
    scale = float(np.max(np.abs(coeffs[1:]))) if coeffs.size > 1 else 0.0
    tail = 2.0 * math.pi * q ** (J + 0.5) / (ctx.big_K * ctx.k * sn_w * (1.0 - q) ** 2) * scale
    return ExpansionResult(Polynomial(total), float(tail), J)


def _scaled_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    size = max(lhs.size, rhs.size)
    a = np.zeros(size)
    b = np.zeros(size)
    a[: lhs.size] = lhs
    b[: rhs.size] = rhs
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


def verify_intertwining(n_max: int, w: float, ctx: EllipticContext) -> IntertwiningReport:
    """
    Check E Phi^(C)_n = e_n Phi^(D)_(n-1) and E Phi^(D)_n = e_n Phi^(C)_(n-1), 1 <= n <= n_max.

    Residuals are max coefficient differences divided by max(1, coefficient size).
    """
    if n_max < 1:
        raise DomainError(f"n_max={n_max} must be >= 1")
    params = make_params(w, ctx, check_lattice=False)
    e = elliptic_numbers(n_max, params)
    polys = {fam: [explicit_poly(fam, n, w, ctx) for n in range(n_max + 1)] for fam in ("cn", "dn")}

    report = IntertwiningReport(residuals={"E_cn_to_dn": {}, "E_dn_to_cn": {}})
    for n in range(1, n_max + 1):
        lhs_c = apply_E(polys["cn"][n], params).coef
        lhs_d = apply_E(polys["dn"][n], params).coef
        report.residuals["E_cn_to_dn"][n] = _scaled_residual(lhs_c, e[n] * polys["dn"][n - 1].coeffs)
        report.residuals["E_dn_to_cn"][n] = _scaled_residual(lhs_d, e[n] * polys["cn"][n - 1].coeffs)
    logger.debug(f"intertwining up to n={n_max}: max residual {report.max_residual:.3e}")
    return report


def verify_square_relation(
    n_max: int, w: float, ctx: EllipticContext, polys: Optional[dict] = None
) -> IntertwiningReport:
    """
    Check E^2 Phi_n = e_n e_(n-1) Phi_(n-2) for both families, 2 <= n <= n_max.

    polys maps a family name to its own Phi_0..Phi_n_max in place of the
    explicit polynomials; the other family falls back to the explicit ones.
    """
    if n_max < 2:
        raise DomainError(f"n_max={n_max} must be >= 2")
    params = make_params(w, ctx, check_lattice=False)
    e = elliptic_numbers(n_max, params)
    polys = polys or {}

    report = IntertwiningReport(residuals={"E2_cn": {}, "E2_dn": {}})
    for fam in ("cn", "dn"):
        family_polys = polys.get(fam) or [explicit_poly(fam, n, w, ctx) for n in range(n_max + 1)]
        for n in range(2, n_max + 1):
            lhs = apply_E(apply_E(family_polys[n], params), params).coef
            report.residuals[f"E2_{fam}"][n] = _scaled_residual(lhs, e[n] * e[n - 1] * family_polys[n - 2].coeffs)
    return report
