"""q-shifted factorials and basic hypergeometric sums (real base)."""

import logging
from typing import Union

import numpy as np

from ..utils.error_handlers import DomainError

logger = logging.getLogger(__name__)

Number = Union[float, complex]


def q_pochhammer(a: Number, q: Number, n: int) -> Number:
    """(a; q)_n = (1 - a)(1 - aq)...(1 - aq^(n-1)); (a; q)_0 = 1."""
    if n < 0:
        raise DomainError(f"q-Pochhammer length n={n} must be >= 0")
    result = 1.0
    factor = a
    for _ in range(n):
        result *= 1.0 - factor
        factor *= q
    return result


def basic_hypergeometric_2phi1(a: float, b: float, c: float, x: float, q: float, terms: int) -> float:
    """
    Partial sum of 2phi1(a, b; c; q; x) = sum_s (a)_s (b)_s / ((q)_s (c)_s) x^s.

    A numerator parameter equal to q^(-n) ends the series after n + 1 terms;
    otherwise the sum is truncated after `terms` terms.

    Args:
        a, b: Numerator parameters.
        c: Denominator parameter.
        x: Argument.
        q: Base.
        terms: Maximum number of terms.

    Returns:
        The (possibly terminating) partial sum.
    """
    return float(np.sum(hypergeometric_terms(a, b, c, x, q, terms)))


def hypergeometric_terms(a: float, b: float, c: float, x: float, q: float, terms: int) -> np.ndarray:
    """Individual terms of the 2phi1 sum, s = 0..terms-1 (zeros after termination)."""
    out = np.zeros(terms)
    term = 1.0
    for s in range(terms):
        out[s] = term
        denominator = (1.0 - q ** (s + 1)) * (1.0 - c * q ** s)
        if denominator == 0.0:
            raise DomainError(f"2phi1 denominator vanishes at s={s}")
        term *= (1.0 - a * q ** s) * (1.0 - b * q ** s) / denominator * x
    return out
