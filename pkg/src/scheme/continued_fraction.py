"""
Continued fractions and best approximations, in exact rational arithmetic.

w is taken from its decimal text: the expansion of a double is the expansion
of the double, and goes wrong after about fifteen partial quotients.
"""

import logging
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Union

from ..utils.error_handlers import DepthError, DomainError

logger = logging.getLogger(__name__)

MAX_DEPTH = 40

RealLike = Union[str, Fraction, Decimal, int, float]


@dataclass(frozen=True)
class ContinuedFractionData:
    """
    Partial quotients and convergents of a positive real.

    Attributes:
        value: The exact rational the expansion was computed from.
        quotients: q_0, q_1, ...
        convergents: (P_i, Q_i) pairs.
        terminated: The expansion ended exactly (w rational).
        precision_limited: Stopped because the input digits ran out.
    """
    value: Fraction
    quotients: tuple
    convergents: tuple
    terminated: bool = False
    precision_limited: bool = False

    @property
    def max_denominator(self) -> int:
        return self.convergents[-1][1]


def _digits(text: str) -> float:
    """Significant decimal places of a decimal string; inf for exact forms."""
    text = text.strip().lower()
    if "/" in text:
        return math.inf
    mantissa, _, exponent = text.partition("e")
    _, _, fractional = mantissa.partition(".")
    places = len(fractional) - (int(exponent) if exponent else 0)
    return math.inf if places <= 0 and not fractional else float(max(places, 0))


def parse_real(value: RealLike) -> Fraction:
    """
    Exact rational from a decimal string ('0.6180339887...', '1/3', '2.5e-1').

    Fractions, Decimals and ints are taken as they are. Floats are accepted
    with a warning; their expansion is that of the binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"cannot read a real from {value!r}")
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"w={value!r} must be finite")
        logger.warning(f"w={value!r} given as float; pass a decimal string for deep expansions")
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"cannot read a real from {value!r}") from e


def continued_fraction(w: RealLike, depth: int = MAX_DEPTH) -> ContinuedFractionData:
    """
    Expand w > 0 by the Euclidean map.

    Args:
        w: Positive real as decimal string, Fraction, Decimal or int.
        depth: Maximum number of partial quotients (<= 40).

    Returns:
        ContinuedFractionData. For decimal strings the expansion stops once
        Q_i^2 exceeds the precision of the digits (precision_limited).

    Raises:
        DomainError: For w <= 0 or depth outside 1..40.
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise DomainError(f"depth={depth} must lie in 1..{MAX_DEPTH}")
    x = parse_real(w)
    if x <= 0:
        raise DomainError(f"w={w!r} must be positive")
    digits = _digits(w) if isinstance(w, str) else (52 * math.log10(2) if isinstance(w, float) else math.inf)
    # Q^2 below this is still resolved by the input digits
    resolution = math.inf if math.isinf(digits) else 10.0 ** digits / 2.0

    quotients, convergents = [], []
    P_prev, P = 0, 1
    Q_prev, Q = 1, 0
    remainder = x
    terminated = limited = False
    for _ in range(depth):
        q_i = math.floor(remainder)
        P_prev, P = P, q_i * P + P_prev
        Q_prev, Q = Q, q_i * Q + Q_prev
        quotients.append(q_i)
        convergents.append((P, Q))
        fractional = remainder - q_i
        if fractional == 0:
            terminated = True
            break
        if float(Q) ** 2 > resolution:
            limited = True
            break
        remainder = 1 / fractional

    logger.debug(f"continued fraction of {w!r}: {quotients}")
    return ContinuedFractionData(
        value=x,
        quotients=tuple(quotients),
        convergents=tuple(convergents),
        terminated=terminated,
        precision_limited=limited,
    )


def _nearest(value: Fraction, y: int) -> tuple[int, Fraction]:
    """(m, |value*y - m|) for the nearest integer m >= 0."""
    m = math.floor(value * y + Fraction(1, 2))
    return m, abs(value * y - m)


def best_approximations(cf: ContinuedFractionData, n: int) -> list[tuple[int, int, float]]:
    """
    All denominators 1..n ordered by the distance |w n_i - m_i| to the nearest integer.

    The first entry is the best approximation of the second kind, whose
    denominator is the largest convergent denominator Q_k <= n.

    Args:
        cf: Expansion of w.
        n: Denominator bound.

    Returns:
        (n_i, m_i, y_i) triples with y_i strictly increasing for irrational w.

    Raises:
        DepthError: If the expansion does not reach past denominator n.
    """
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    if not cf.terminated and cf.max_denominator <= n:
        raise DepthError(
            f"expansion reaches denominators up to {cf.max_denominator}, need more than {n}; "
            "extend depth or supply more digits"
        )
    ranked = []
    for y in range(1, n + 1):
        m, distance = _nearest(cf.value, y)
        ranked.append((distance, y, m))
    ranked.sort()

    largest = max(Q for _, Q in cf.convergents if Q <= n)
    if not cf.terminated and ranked[0][1] != largest:
        raise DepthError(f"best denominator {ranked[0][1]} differs from convergent {largest}")
    return [(y, m, float(distance)) for distance, y, m in ranked]


def brute_force_best_approximations(value: RealLike, n: int) -> list[tuple[int, int, float]]:
    """Exhaustive search over 1 <= y <= n, 0 <= x <= wy + 1 for the same ordering."""
    value = parse_real(value)
    ranked = []
    for y in range(1, n + 1):
        best = None
        for x in range(0, math.floor(value * y) + 2):
            distance = abs(value * y - x)
            if best is None or distance <= best[0]:
                best = (distance, x)
        ranked.append((best[0], y, best[1]))
    ranked.sort()
    return [(y, m, float(distance)) for distance, y, m in ranked]
