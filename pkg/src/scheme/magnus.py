"""
Sparse polynomials of the sawtooth profile.

For the Magnus profile and irrational w, Phi_n keeps at most three terms,
z^n + G1 z^(n - n_1) + G2 z^(n - n_2), where n_1, n_2 are the two best
denominators <= n of w. Most reflection parameters vanish.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..circle.szego import szego_build
from ..config import Config
from ..utils.error_handlers import DomainError
from .continued_fraction import RealLike, best_approximations, continued_fraction, parse_real
from .profiles import magnus_profile, scheme_reflections

logger = logging.getLogger(__name__)

# a 4th coefficient within this factor of the threshold makes the check inconclusive
AMBIGUITY_FACTOR = 10.0


@dataclass
class SparsityReport:
    """Surviving coefficients of Phi_n against the predicted offsets."""
    n: int
    offsets: tuple  # n - exponent of each coefficient above threshold, ascending
    predicted: tuple  # {0, n_1, n_2}
    coefficients: dict = field(default_factory=dict)  # offset -> coefficient
    nonzero_reflections: tuple = ()  # m with |a_m| above threshold, m < n
    threshold: float = 0.0
    inconclusive: bool = False

    @property
    def passed(self) -> bool:
        return len(self.offsets) <= 3 and set(self.offsets) <= set(self.predicted)


def magnus_sparsity_check(w: RealLike, n: int, threshold: Optional[float] = None) -> SparsityReport:
    """
    Build Phi_n for the Magnus moments c_m = f(wm) and compare its support
    with the best approximations of w.

    Args:
        w: Irrational step, preferably as a decimal string.
        n: Degree (>= 1).
        threshold: Coefficient size counted as nonzero (default Config.SPARSITY_THRESHOLD).

    Returns:
        SparsityReport; inconclusive when the largest discarded coefficient
        lies within AMBIGUITY_FACTOR of the threshold.
    """
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    threshold = threshold or Config.SPARSITY_THRESHOLD
    w_value = float(parse_real(w))

    levinson = scheme_reflections(magnus_profile(), w_value, n)
    a = levinson.reflections
    coeffs = szego_build(a, n).coeffs

    above = np.abs(coeffs) > threshold
    offsets = tuple(sorted(int(n - e) for e in np.flatnonzero(above)))
    rest = np.abs(coeffs[~above])
    inconclusive = bool(rest.size and rest.max() > threshold / AMBIGUITY_FACTOR)

    ranked = best_approximations(continued_fraction(w), n)
    predicted = tuple(sorted({0} | {y for y, _, _ in ranked[:2]}))

    nonzero = tuple(int(m) for m in np.flatnonzero(np.abs(a.values) > threshold))
    report = SparsityReport(
        n=n,
        offsets=offsets,
        predicted=predicted,
        coefficients={off: float(coeffs[n - off]) for off in offsets},
        nonzero_reflections=nonzero,
        threshold=threshold,
        inconclusive=inconclusive,
    )
    if inconclusive:
        logger.warning(f"sparsity at n={n} is inconclusive: discarded coefficient {rest.max():.3e}")
    logger.debug(f"Magnus Phi_{n}: offsets {offsets}, predicted {predicted}")
    return report
