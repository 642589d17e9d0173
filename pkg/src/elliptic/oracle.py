"""
Fourier-series evaluators for sn, cn and dn.

These are an independent code path used to cross-check the AGM evaluation;
production operations never call them. Every sum comes with a tail bound.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import mpmath
import numpy as np

from ..config import Config
from ..utils.error_handlers import DomainError
from .kernel import ArrayLike, EllipticContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesValue:
    """Truncated series value and an upper bound for the discarded tail."""
    value: Union[float, np.ndarray, mpmath.mpf]
    tail_bound: float


def _check_terms(S: int) -> int:
    if int(S) != S or S < 1:
        raise DomainError(f"number of terms S={S!r} must be >= 1")
    return int(S)


def _precision(precision: Optional[int]) -> int:
    return Config.PRECISION if precision is None else precision


def _mp_constants(ctx: EllipticContext):
    """K and q recomputed at the working mpmath precision."""
    m = mpmath.mpf(ctx.k) ** 2
    return mpmath.ellipk(m), mpmath.qfrom(m=m)


def _mp_series(kind: str, u: float, ctx: EllipticContext, S: int, digits: int) -> mpmath.mpf:
    with mpmath.workdps(digits):
        big_K, q = _mp_constants(ctx)
        k = mpmath.mpf(ctx.k)
        x = mpmath.pi * mpmath.mpf(u) / (2 * big_K)
        total = mpmath.mpf(0)
        for s in range(1, S + 1):
            if kind == "cn":
                total += q ** (s - 0.5) / (1 + q ** (2 * s - 1)) * mpmath.cos((2 * s - 1) * x)
            elif kind == "sn":
                total += q ** (s - 0.5) / (1 - q ** (2 * s - 1)) * mpmath.sin((2 * s - 1) * x)
            else:
                total += q ** s / (1 + q ** (2 * s)) * mpmath.cos(2 * s * x)
        if kind == "dn":
            value = mpmath.pi / (2 * big_K) + 2 * mpmath.pi / big_K * total
        else:
            value = 2 * mpmath.pi / (k * big_K) * total
    return value


def _float_series(kind: str, u: ArrayLike, ctx: EllipticContext, S: int):
    q = ctx.nome_q
    s = np.arange(1, S + 1, dtype=float)
    x = np.multiply.outer(np.asarray(u, dtype=float), np.pi / (2.0 * ctx.big_K))

    if kind == "cn":
        coeff = q ** (s - 0.5) / (1.0 + q ** (2.0 * s - 1.0))
        value = 2.0 * np.pi / (ctx.k * ctx.big_K) * (np.cos(np.multiply.outer(x, 2.0 * s - 1.0)) @ coeff)
    elif kind == "sn":
        coeff = q ** (s - 0.5) / (1.0 - q ** (2.0 * s - 1.0))
        value = 2.0 * np.pi / (ctx.k * ctx.big_K) * (np.sin(np.multiply.outer(x, 2.0 * s - 1.0)) @ coeff)
    else:
        coeff = q ** s / (1.0 + q ** (2.0 * s))
        value = np.pi / (2.0 * ctx.big_K) + 2.0 * np.pi / ctx.big_K * (np.cos(np.multiply.outer(x, 2.0 * s)) @ coeff)

    return float(value) if np.ndim(u) == 0 else value


def _tail_bound(kind: str, ctx: EllipticContext, S: int) -> float:
    q = ctx.nome_q
    if kind == "dn":
        return 2.0 * np.pi / ctx.big_K * q ** (S + 1) / (1.0 - q)
    bound = 2.0 * np.pi / (ctx.k * ctx.big_K) * q ** (S + 0.5) / (1.0 - q)
    if kind == "sn":
        bound /= 1.0 - q
    return float(bound)


def _oracle(kind: str, u, ctx, S, precision) -> SeriesValue:
    S = _check_terms(S)
    digits = _precision(precision)
    if digits > 0:
        if np.ndim(u) != 0:
            raise DomainError("extended-precision oracle takes scalar arguments")
        value = _mp_series(kind, float(u), ctx, S, digits)
    else:
        value = _float_series(kind, u, ctx, S)
    return SeriesValue(value=value, tail_bound=_tail_bound(kind, ctx, S))


def fourier_oracle_cn(u: ArrayLike, ctx: EllipticContext, S: int, precision: Optional[int] = None) -> SeriesValue:
    """
    cn(u) from its Fourier series truncated after S terms.

    cn(u) = (2 pi/(kK)) sum_s q^(s-1/2)/(1+q^(2s-1)) cos((2s-1) pi u/(2K)).

    Args:
        u: Argument (array allowed in double precision).
        ctx: Elliptic context.
        S: Number of terms (>= 1).
        precision: mpmath digits; None reads Config.PRECISION, 0 means double.

    Returns:
        SeriesValue with the partial sum and its tail bound.
    """
    return _oracle("cn", u, ctx, S, precision)


def fourier_oracle_dn(u: ArrayLike, ctx: EllipticContext, S: int, precision: Optional[int] = None) -> SeriesValue:
    """dn(u) = pi/(2K) + (2 pi/K) sum_s q^s/(1+q^(2s)) cos(s pi u/K), S terms."""
    return _oracle("dn", u, ctx, S, precision)


def fourier_oracle_sn(u: ArrayLike, ctx: EllipticContext, S: int, precision: Optional[int] = None) -> SeriesValue:
    """sn(u) = (2 pi/(kK)) sum_j q^(j-1/2)/(1-q^(2j-1)) sin((2j-1) pi u/(2K)), S terms."""
    return _oracle("sn", u, ctx, S, precision)
