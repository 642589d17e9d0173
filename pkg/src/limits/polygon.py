"""
The degenerate step w = KM/N: a finite cn family on the regular 2N-gon.

With w = KM/N the reflection parameter a_(2N-1) equals -1, Phi_2N = z^2N + 1
and Phi_0..Phi_(2N-1) are orthogonal on its 2N zeros. The weights are the
Fourier-split sums rho_j = (pi/(kK)) S(j;N), S(j;N) = F((j-1/2)/(2N); q^2N),
with F evaluated by bilateral sum, infinite product, dn form or Poisson sum.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from ..circle.measures import DiscretePointMeasure, GramResult, gram_check
from ..circle.szego import szego_family
from ..circle.types import MonicCirclePolynomial, ReflectionSequence
from ..elliptic.kernel import EllipticContext, context_from_nome, dual_context, jacobi_cn, jacobi_dn, jacobi_sncndn, landen_2N
from ..utils.error_handlers import DomainError
from ..utils.export import write_rows

logger = logging.getLogger(__name__)

F_ROUTES = ("direct", "product", "dn", "poisson")
S_ROUTES = ("direct", "product", "dn")

# stop infinite sums and products once terms fall below this
SERIES_EPS = 1e-18

POLYGON_COLUMNS = ("j", "angle", "weight", "residue_weight", "product_residual", "dn_residual")


@dataclass(frozen=True)
class PolygonCase:
    """Finite cn system for w = KM/N."""
    N: int
    M: int
    ctx: EllipticContext
    w: float
    reflections: ReflectionSequence  # a_0..a_(2N-1), terminal -1
    polys: tuple  # Phi_0..Phi_2N
    indices: np.ndarray  # j = -N+1..N
    angles: np.ndarray  # pi M (j - 1/2)/N reduced to [0, 2 pi)
    weights: np.ndarray
    h: np.ndarray  # h_0..h_(2N-1)
    route: str
    closure_residual: float  # max |Phi_2N - (z^2N + 1)|

    @property
    def experimental(self) -> bool:
        return self.M != 1

    def measure(self) -> DiscretePointMeasure:
        return DiscretePointMeasure(self.indices, self.angles, self.weights, self.N, 0.0, f"polygon-{self.N}")


def _q_product(x: float, base: float) -> float:
    """(x; base)_infinity, truncated once |x base^i| < SERIES_EPS."""
    result = 1.0
    term = x
    while abs(term) >= SERIES_EPS:
        result *= 1.0 - term
        term *= base
    return result


def _check_nome(q: float) -> None:
    if not (math.isfinite(q) and 0.0 < q < 1.0):
        raise DomainError(f"q={q!r} must lie in (0, 1)")


def _F_direct(alpha: float, q: float) -> float:
    beta = -math.log(q)
    # |n + alpha| >= L + 1 - |alpha| beyond the cut
    L = int(math.ceil(abs(alpha) + math.log(SERIES_EPS * (1.0 - q) / 2.0) / math.log(q))) + 1
    n = np.arange(-L, L + 1, dtype=float)
    x = np.abs(n + alpha)
    return float(np.sum(np.exp(-beta * x) / (1.0 + np.exp(-2.0 * beta * x))))


def _F_product(alpha: float, q: float) -> float:
    q2 = q * q
    numerator = _q_product(-q ** (1 + 2 * alpha), q2) * _q_product(-q ** (1 - 2 * alpha), q2) * _q_product(q2, q2) ** 2
    denominator = _q_product(-q ** (2 + 2 * alpha), q2) * _q_product(-q ** (2 - 2 * alpha), q2) * _q_product(q, q2) ** 2
    return numerator / denominator / (q ** alpha + q ** (-alpha))


def _F_dn(alpha: float, ctx: EllipticContext) -> float:
    """(K/pi) dn(2 alpha K'; k') for the context of nome q."""
    return ctx.big_K / math.pi * jacobi_dn(2.0 * alpha * ctx.big_K_prime, dual_context(ctx))


def _F_poisson(alpha: float, q: float) -> float:
    beta = -math.log(q)
    total = 1.0
    s = 1
    while True:
        term = 2.0 * math.cos(2.0 * math.pi * s * alpha) / math.cosh(math.pi ** 2 * s / beta)
        total += term
        if abs(term) < SERIES_EPS or s > 10_000:
            break
        s += 1
    return math.pi / (2.0 * beta) * total


def ramanujan_F(alpha: float, q: float, route: str = "direct", ctx: Optional[EllipticContext] = None) -> float:
    """
    F(alpha; q) = sum_n 1/(q^(n+alpha) + q^(-n-alpha)).

    Args:
        alpha: Real shift.
        q: Nome in (0, 1).
        route: 'direct' (bilateral sum), 'product' (bilateral 1psi1 product form),
            'dn' ((K/pi) dn(2 alpha K'; k')) or 'poisson'.
        ctx: Context of nome q for the dn route (solved from q when omitted).

    Returns:
        F(alpha; q).
    """
    _check_nome(q)
    if route == "direct":
        return _F_direct(alpha, q)
    if route == "product":
        return _F_product(alpha, q)
    if route == "dn":
        return _F_dn(alpha, ctx or context_from_nome(q))
    if route == "poisson":
        return _F_poisson(alpha, q)
    raise DomainError(f"Unknown route '{route}' (expected one of {F_ROUTES})")


def S_weights(j: int, N: int, ctx: EllipticContext, route: str = "direct", landen: Optional[EllipticContext] = None) -> float:
    """
    S(j;N) = F((j - 1/2)/(2N); q^2N).

    The dn route uses the order-2N transformation of ctx for the nome q^2N:
    S(j;N) = (K~/pi) dn((j - 1/2) K~'/N; k~').
    """
    if N < 1:
        raise DomainError(f"N={N} must be >= 1")
    alpha = (j - 0.5) / (2.0 * N)
    if route == "dn":
        landen = landen or landen_2N(ctx, N)[0]
        return _F_dn(alpha, landen)
    if route not in S_ROUTES:
        raise DomainError(f"Unknown route '{route}' (expected one of {S_ROUTES})")
    return ramanujan_F(alpha, ctx.nome_q ** (2 * N), route)


def _polygon_reflections(N: int, M: int, ctx: EllipticContext) -> ReflectionSequence:
    w = ctx.big_K * M / N
    m = np.arange(2 * N)
    _, cn, dn = jacobi_sncndn(w * (m + 1.0), ctx)
    values = np.where(m % 2 == 0, cn, -dn)
    values[-1] = -1.0
    return ReflectionSequence(values, finite=True)


def build_polygon_case(N: int, ctx: EllipticContext, M: int = 1, route: str = "dn") -> PolygonCase:
    """
    Finite cn system on the regular 2N-gon.

    Args:
        N: Positive integer.
        ctx: Elliptic context.
        M: Odd integer co-prime with N; M != 1 is experimental and always
            uses direct-sum weights.
        route: Weight route for M = 1 ('direct', 'product' or 'dn').

    Returns:
        PolygonCase with Phi_0..Phi_2N, spectral angles and weights.
    """
    if int(N) != N or N < 1:
        raise DomainError(f"N={N!r} must be a positive integer")
    if int(M) != M or M < 1 or M % 2 == 0 or math.gcd(int(M), int(N)) != 1:
        raise DomainError(f"M={M!r} must be a positive odd integer co-prime with N={N}")
    N, M = int(N), int(M)
    if route not in S_ROUTES:
        raise DomainError(f"Unknown route '{route}' (expected one of {S_ROUTES})")
    if M != 1:
        logger.warning(f"polygon case with M={M} is experimental; using direct-sum weights")
        route = "direct"

    a = _polygon_reflections(N, M, ctx)
    polys = szego_family(a, 2 * N)
    target = np.zeros(2 * N + 1)
    target[0] = target[-1] = 1.0
    closure = float(np.max(np.abs(polys[-1].coeffs - target)))

    j = np.arange(-N + 1, N + 1)
    angles = np.mod(math.pi * M * (j - 0.5) / N, 2.0 * math.pi)
    landen = landen_2N(ctx, N)[0] if route == "dn" else None
    S = np.array([S_weights(int(jj), N, ctx, route, landen) for jj in j])
    weights = math.pi / (ctx.k * ctx.big_K) * S

    h = np.cumprod(np.concatenate(([1.0], 1.0 - a.values[:-1] ** 2)))
    logger.debug(f"polygon N={N}, M={M}: closure residual {closure:.3e}, mass {weights.sum()!r}")
    return PolygonCase(
        N=N, M=M, ctx=ctx, w=ctx.big_K * M / N, reflections=a, polys=tuple(polys),
        indices=j, angles=angles, weights=weights, h=h, route=route, closure_residual=closure,
    )


def residue_weights(case: PolygonCase) -> np.ndarray:
    """rho_s = h_(2N-1) / (Phi_(2N-1)(1/z_s) * 2N z_s^(2N-1)) at the case's points."""
    N = case.N
    z = np.exp(1j * case.angles)
    phi = case.polys[2 * N - 1]
    values = case.h[2 * N - 1] / (phi(1.0 / z) * 2 * N * z ** (2 * N - 1))
    return values.real


def finite_moment_check(case: PolygonCase, n: int) -> float:
    """|sum_j rho_j z_j^n - cn(wn)| for 0 <= n <= 2N - 1."""
    if not 0 <= n <= 2 * case.N - 1:
        raise DomainError(f"moment index n={n} outside 0..{2 * case.N - 1}")
    moment = np.dot(case.weights, np.exp(1j * n * case.angles))
    return float(abs(moment - jacobi_cn(case.w * n, case.ctx)))


def finite_gram_check(case: PolygonCase, n_max: Optional[int] = None) -> GramResult:
    """Gram matrix of Phi_0..Phi_n_max on the 2N-gon against h_n."""
    n_max = 2 * case.N - 1 if n_max is None else n_max
    if not 0 <= n_max <= 2 * case.N - 1:
        raise DomainError(f"n_max={n_max} outside 0..{2 * case.N - 1}")
    return gram_check(case.measure(), list(case.polys[: n_max + 1]), case.h[: n_max + 1])


def polygon_rows(case: PolygonCase) -> list[dict]:
    residue = residue_weights(case)
    rows = []
    landen = landen_2N(case.ctx, case.N)[0] if case.M == 1 else None
    for jj, angle, weight, res in zip(case.indices, case.angles, case.weights, residue):
        row = {"j": int(jj), "angle": float(angle), "weight": float(weight), "residue_weight": float(res)}
        if case.M == 1:
            scale = math.pi / (case.ctx.k * case.ctx.big_K)
            row["product_residual"] = abs(scale * S_weights(int(jj), case.N, case.ctx, "product") - weight)
            row["dn_residual"] = abs(scale * S_weights(int(jj), case.N, case.ctx, "dn", landen) - weight)
        rows.append(row)
    return rows


def write_polygon(case: PolygonCase, path: Optional[str | Path] = None, fmt: str = "csv") -> None:
    """Export (j, angle, weight, residue weight, route residuals)."""
    meta = {"N": case.N, "M": case.M, "k": case.ctx.k, "route": case.route, "closure_residual": case.closure_residual}
    write_rows(polygon_rows(case), POLYGON_COLUMNS, path, fmt, meta)
