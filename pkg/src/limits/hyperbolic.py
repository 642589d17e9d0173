"""
The k -> 1 (hyperbolic) limit and the trivial k -> 0 limit.

Two different q's appear here and are kept apart:
base = exp(-2w) for the basic hypergeometric coefficients, and the elliptic
nome of the modulus solving pi K'/K = w for the weight function.
"""

import logging
import math
from typing import Callable, Optional

import mpmath
import numpy as np

from ..circle.families import check_family
from ..circle.measures import DiscretePointMeasure, TWO_PI
from ..circle.types import MomentSequence, MonicCirclePolynomial, ReflectionSequence
from ..config import Config
from ..elliptic.kernel import EllipticContext, jacobi_dn, solve_k_from_w
from ..elliptic.qseries import hypergeometric_terms
from ..utils.error_handlers import DomainError

logger = logging.getLogger(__name__)


class QPochhammerCache:
    """(x; base)_n values for a fixed base, extended on demand."""

    def __init__(self, base: float):
        if not 0.0 < base < 1.0:
            raise DomainError(f"q-Pochhammer base {base!r} must lie in (0, 1)")
        self.base = base
        self._tables: dict[float, list[float]] = {}

    def __call__(self, x: float, n: int) -> float:
        if n < 0:
            raise DomainError(f"length n={n} must be >= 0")
        table = self._tables.setdefault(x, [1.0])
        while len(table) <= n:
            m = len(table) - 1
            table.append(table[-1] * (1.0 - x * self.base ** m))
        return table[n]


def _check_w(w: float) -> float:
    if not (math.isfinite(w) and w > 0.0):
        raise DomainError(f"w={w!r} must be positive")
    return float(w)


def hyp_reflections(N: int, w: float) -> ReflectionSequence:
    """a_n = (-1)^n / cosh(w(n+1)), n = 0..N-1 (shared by both families)."""
    w = _check_w(w)
    n = np.arange(N, dtype=float)
    sign = np.where(np.arange(N) % 2 == 0, 1.0, -1.0)
    return ReflectionSequence(sign / np.cosh(w * (n + 1.0)))


def hyp_moments(n_max: int, w: float) -> MomentSequence:
    """c_n = 1/cosh(wn), n = 0..n_max; mpmath copies ride along when Config.PRECISION > 0."""
    w = _check_w(w)
    extended = ()
    if Config.PRECISION > 0:
        with mpmath.workdps(Config.PRECISION):
            extended = tuple(mpmath.sech(mpmath.mpf(w) * n) for n in range(n_max + 1))
    return MomentSequence(1.0 / np.cosh(w * np.arange(n_max + 1, dtype=float)), extended=extended)


def hyp_poly(n: int, w: float) -> MonicCirclePolynomial:
    """
    Limit polynomial from the terminating 2phi1(q^-n, -q; -q^(1-n); q; q^(1/2) z).

    W_ns = (-1)^n 2 q^((s-n)/2) / (1 + q^-n) (q^-n)_s (-q)_s / ((q)_s (-q^(1-n))_s),
    q = exp(-2w).
    """
    w = _check_w(w)
    if n < 0:
        raise DomainError(f"degree n={n} must be >= 0")
    if n == 0:
        return MonicCirclePolynomial([1.0])
    q = math.exp(-2.0 * w)
    q_inv_n = math.exp(2.0 * w * n)
    terms = hypergeometric_terms(q_inv_n, -q, -q * q_inv_n, math.sqrt(q), q, n + 1)
    prefactor = (-1.0) ** n * 2.0 * math.exp(w * n) / (1.0 + q_inv_n)
    return MonicCirclePolynomial(prefactor * terms)


def hyp_coefficient(n: int, s: int, w: float, cache: Optional[QPochhammerCache] = None) -> float:
    """Single coefficient W_ns of hyp_poly from cached q-Pochhammer symbols."""
    w = _check_w(w)
    if s < 0 or s > n:
        return 0.0
    q = math.exp(-2.0 * w)
    cache = cache or QPochhammerCache(q)
    q_inv_n = math.exp(2.0 * w * n)
    ratio = cache(q_inv_n, s) * cache(-q, s) / (cache(q, s) * cache(-q * q_inv_n, s))
    return (-1.0) ** n * 2.0 * math.exp(-w * (s - n)) / (1.0 + q_inv_n) * ratio


def hyp_weight(theta, w: float, ctx: Optional[EllipticContext] = None):
    """
    Weight rho(theta) = (K/pi^2) dn(K theta/pi) of the hyperbolic family.

    Args:
        theta: Angle(s) in [0, 2 pi).
        w: Hyperbolic parameter; fixes k through pi K'/K = w.
        ctx: Pre-solved context (optional).

    Returns:
        Weight value(s); they integrate to 1 over the circle.
    """
    ctx = ctx or solve_k_from_w(_check_w(w))
    return ctx.big_K / math.pi ** 2 * jacobi_dn(ctx.big_K * np.asarray(theta, dtype=float) / math.pi, ctx)


def hyp_reflected_weight(theta, w: float, ctx: Optional[EllipticContext] = None):
    """rho(theta + pi) = (k' K/pi^2) / dn(K theta/pi), the reflected-sign weight."""
    ctx = ctx or solve_k_from_w(_check_w(w))
    return ctx.k_prime * ctx.big_K / math.pi ** 2 / jacobi_dn(ctx.big_K * np.asarray(theta, dtype=float) / math.pi, ctx)


def quadrature_moments(weight: Callable, n_max: int, nodes: Optional[int] = None) -> np.ndarray:
    """
    Trapezoid moments int_0^(2 pi) weight(theta) cos(n theta) d theta, n = 0..n_max.

    Args:
        weight: Vectorized function of theta.
        n_max: Highest moment.
        nodes: Number of equispaced nodes (default Config.QUADRATURE_NODES).
    """
    nodes = nodes or Config.QUADRATURE_NODES
    theta = TWO_PI * np.arange(nodes) / nodes
    values = np.asarray(weight(theta), dtype=float)
    n = np.arange(n_max + 1, dtype=float)
    return TWO_PI / nodes * (np.cos(np.multiply.outer(n, theta)) @ values)


def k0_degenerate_measure(family: str, w: float) -> DiscretePointMeasure:
    """
    k = 0 measures: cn -> masses 1/2 at exp(+-iw); dn -> mass 1 at z = 1.
    """
    family = check_family(family)
    if family == "cn":
        angles = np.mod(np.array([w, -w], dtype=float), TWO_PI)
        return DiscretePointMeasure(np.array([0, 1]), angles, np.array([0.5, 0.5]), 0, 0.0, "cn-k0")
    return DiscretePointMeasure(np.array([0]), np.array([0.0]), np.array([1.0]), 0, 0.0, "dn-k0")
