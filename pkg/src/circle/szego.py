"""Szego recurrence, its three-term form and evaluation at z = +-1."""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from ..utils.error_handlers import DomainError
from .types import MonicCirclePolynomial, ReflectionSequence

logger = logging.getLogger(__name__)


@dataclass
class ThreeTermReport:
    """Coefficientwise residuals of Phi_(n+1) + d_n Phi_n - z(Phi_n + b_n Phi_(n-1))."""
    residuals: dict = field(default_factory=dict)  # n -> max abs residual
    skipped: list = field(default_factory=list)  # n with a_(n-1) = 0

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0


def _szego_step(phi: np.ndarray, a_n: float) -> np.ndarray:
    """Phi_(n+1) = z Phi_n - a_n z^n Phi_n(1/z), ascending coefficients."""
    nxt = np.zeros(phi.size + 1)
    nxt[1:] = phi
    nxt[:-1] -= a_n * phi[::-1]
    return nxt


def szego_family(a: ReflectionSequence, n: int) -> list[MonicCirclePolynomial]:
    """
    Phi_0..Phi_n from the reflection parameters.

    Args:
        a: Reflection parameters (at least n of them).
        n: Highest degree.

    Returns:
        List of n + 1 monic polynomials.
    """
    if n < 0 or n > len(a):
        raise DomainError(f"degree n={n} needs 0 <= n <= {len(a)}")
    phi = np.array([1.0])
    out = [MonicCirclePolynomial(phi)]
    for m in range(n):
        phi = _szego_step(phi, float(a[m]))
        out.append(MonicCirclePolynomial(phi))
    return out


def szego_build(a: ReflectionSequence, n: int) -> MonicCirclePolynomial:
    """Phi_n from a_0..a_(n-1); its constant term is -a_(n-1)."""
    return szego_family(a, n)[-1]


def szego_step_residual(polys: Sequence[MonicCirclePolynomial], a: ReflectionSequence) -> float:
    """Max coefficient residual of consecutive polys against the Szego step."""
    worst = 0.0
    for n in range(min(len(polys) - 1, len(a))):
        predicted = _szego_step(polys[n].coeffs, float(a[n]))
        worst = max(worst, float(np.max(np.abs(predicted - polys[n + 1].coeffs))))
    return worst


def value_at_pm1(a: ReflectionSequence, n: int) -> tuple[float, float]:
    """
    Phi_n(1) and Phi_n(-1) from the reflection parameters.

    Phi_n(1) = prod (1 - a_s), Phi_n(-1) = (-1)^n prod (1 + (-1)^s a_s).
    """
    if n < 0 or n > len(a):
        raise DomainError(f"degree n={n} needs 0 <= n <= {len(a)}")
    values = np.asarray(a.values[:n])
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    at_one = float(np.prod(1.0 - values))
    at_minus_one = float((-1.0) ** n * np.prod(1.0 + signs * values))
    return at_one, at_minus_one


def three_term_check(
    a: ReflectionSequence,
    n_max: int,
    polys: Optional[Sequence[Union[MonicCirclePolynomial, np.ndarray]]] = None
) -> ThreeTermReport:
    """
    Check Phi_(n+1) + d_n Phi_n = z(Phi_n + b_n Phi_(n-1)) for 1 <= n < n_max.

    d_n = -a_n/a_(n-1), b_n = d_n (1 - a_(n-1)^2). Indices with a_(n-1) = 0
    are skipped and listed in the report.

    Args:
        a: Reflection parameters used for d_n, b_n.
        n_max: Highest polynomial degree involved.
        polys: Phi_0..Phi_n_max built independently; the Szego family of a
            when omitted.

    Returns:
        ThreeTermReport with the residual per n.
    """
    if n_max < 2:
        raise DomainError(f"n_max={n_max} must be >= 2")
    if polys is None:
        polys = szego_family(a, n_max)
    coeffs = [p.coeffs if isinstance(p, MonicCirclePolynomial) else np.asarray(p, dtype=float) for p in polys]
    if len(coeffs) < n_max + 1:
        raise DomainError(f"need {n_max + 1} polynomials, got {len(coeffs)}")

    report = ThreeTermReport()
    for n in range(1, n_max):
        prev_a = float(a[n - 1])
        if prev_a == 0.0:
            logger.warning(f"three-term check: a_{n - 1} = 0, skipping n = {n}")
            report.skipped.append(n)
            continue
        d_n = -float(a[n]) / prev_a
        b_n = d_n * (1.0 - prev_a ** 2)

        lhs = coeffs[n + 1].copy()
        lhs[: n + 1] += d_n * coeffs[n]
        rhs = np.zeros(n + 2)
        rhs[1:] = coeffs[n]
        rhs[1: n + 1] += b_n * coeffs[n - 1]
        report.residuals[n] = float(np.max(np.abs(lhs - rhs)))

    return report
