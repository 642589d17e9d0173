"""Elliptic binomial coefficients, elliptic numbers and their degenerations."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from ..config import Config
from ..utils.error_handlers import DegeneracyError, DomainError
from .kernel import EllipticContext, jacobi_sncndn, jacobi_sn
from .qseries import q_pochhammer

logger = logging.getLogger(__name__)

# |q*x - p| below this marks w/(4K) = p/q as a lattice point
LATTICE_TOL = 1e-12

RECURRENCE_NAMES = ("rec_E", "rec_E1", "rec_E2", "rec_E3", "rec_E4", "rec_E5")


@dataclass(frozen=True)
class EbcParams:
    """Step parameter w together with its elliptic context."""
    w: float
    ctx: EllipticContext


@dataclass
class RecurrenceReport:
    """Worst scaled residual of each EBC identity over 0 <= j <= n <= n_max."""
    n_max: int
    residuals: dict
    worst_at: dict

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    def passed(self, tol: float) -> bool:
        return self.max_residual <= tol


def lattice_fraction(w: float, ctx: EllipticContext, bound: Optional[int] = None) -> Optional[Fraction]:
    """
    Return p/q if w/(4K) equals a rational with denominator <= bound.

    Args:
        w: Step parameter.
        ctx: Elliptic context.
        bound: Denominator bound (default Config.RATIONAL_BOUND).

    Returns:
        The fraction, or None for a non-lattice w.
    """
    bound = bound or Config.RATIONAL_BOUND
    x = w / (4.0 * ctx.big_K)
    candidate = Fraction(x).limit_denominator(bound)
    if abs(candidate.denominator * x - candidate.numerator) <= LATTICE_TOL:
        return candidate
    return None


def make_params(
    w: float,
    ctx: EllipticContext,
    check_lattice: bool = True,
    bound: Optional[int] = None
) -> EbcParams:
    """
    Validate w and bundle it with ctx.

    Raises:
        DomainError: If w is not a finite real.
        DegeneracyError: If check_lattice and w/(4K) is rational; the index
            is the first s with sn(w(s+1)) = 0.
    """
    if not math.isfinite(w):
        raise DomainError(f"w={w!r} must be finite")
    if check_lattice:
        hit = lattice_fraction(w, ctx, bound)
        if hit is not None:
            # sn(wm) = 0 first at m = q / gcd(2p, q)
            first_zero = hit.denominator // math.gcd(2 * hit.numerator, hit.denominator)
            raise DegeneracyError(
                first_zero - 1,
                f"w/(4K) = {hit} lies on the degeneracy lattice; sn(w*{first_zero}) = 0",
            )
    return EbcParams(w=float(w), ctx=ctx)


def ebc_row(n: int, p: EbcParams) -> np.ndarray:
    """
    E^n_0 .. E^n_n in one pass.

    The running product is taken up to j' = min(j, n - j) and mirrored, so
    E^n_j and E^n_(n-j) are the same float.

    Raises:
        DegeneracyError: If a needed denominator sn(w(s+1)) vanishes.
    """
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")

    sn = np.asarray(jacobi_sn(p.w * np.arange(n + 1, dtype=float), p.ctx), dtype=float).reshape(-1)
    row = np.empty(n + 1)
    row[0] = 1.0
    value = 1.0
    for s in range(n // 2):
        denominator = sn[s + 1]
        if abs(denominator) < Config.DEGENERACY_TOL:
            raise DegeneracyError(s, f"sn(w*{s + 1}) = {denominator:.3e} at w = {p.w!r}")
        value *= sn[n - s] / denominator
        row[s + 1] = value
    for j in range(n // 2 + 1, n + 1):
        row[j] = row[n - j]
    return row


def ebc(n: int, j: int, p: EbcParams) -> float:
    """Elliptic binomial coefficient E^n_j; 0 outside 0 <= j <= n."""
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    if j < 0 or j > n:
        return 0.0
    return float(ebc_row(n, p)[j])


def elliptic_number(n: int, p: EbcParams) -> float:
    """e_n = sn(wn)/sn(w) = E^n_1, with e_0 = 0."""
    sn_w = jacobi_sn(p.w, p.ctx)
    if abs(sn_w) < Config.DEGENERACY_TOL:
        raise DegeneracyError(0, f"sn(w) = {sn_w:.3e}")
    if n == 0:
        return 0.0
    if n < 0:
        # sn is odd
        return -elliptic_number(-n, p)
    return float(ebc_row(n, p)[1])


def verify_ebc_recurrences(n_max: int, p: EbcParams) -> RecurrenceReport:
    """
    Check the six three-term EBC identities for 1 <= n <= n_max, 0 <= j <= n.

    Each residual is divided by the sum of magnitudes of its three terms.

    Returns:
        RecurrenceReport keyed by identity name.
    """
    if n_max < 1:
        raise DomainError(f"n_max={n_max} must be >= 1")

    idx = np.arange(n_max + 1, dtype=float)
    _, cn, dn = (np.asarray(v).reshape(-1) for v in jacobi_sncndn(p.w * idx, p.ctx))
    rows = [ebc_row(n, p) for n in range(n_max + 1)]

    def E(n: int, j: int) -> float:
        return rows[n][j] if 0 <= j <= n else 0.0

    residuals = {name: 0.0 for name in RECURRENCE_NAMES}
    worst_at = {name: None for name in RECURRENCE_NAMES}

    for n in range(1, n_max + 1):
        for j in range(0, n + 1):
            m = n - j
            e, e_prev, e_left = E(n, j), E(n - 1, j), E(n - 1, j - 1)
            triples = {
                "rec_E": (cn[j] * dn[m] * e, cn[n] * e_left, dn[n] * e_prev),
                "rec_E1": (cn[m] * dn[j] * e, cn[n] * e_prev, dn[n] * e_left),
                "rec_E2": (cn[m] * e, dn[m] * e_left, cn[n] * dn[j] * e_prev),
                "rec_E3": (cn[j] * e, dn[j] * e_prev, cn[n] * dn[m] * e_left),
                "rec_E4": (dn[m] * e, cn[m] * e_left, dn[n] * cn[j] * e_prev),
                "rec_E5": (dn[j] * e, cn[j] * e_prev, dn[n] * cn[m] * e_left),
            }
            for name, (lhs, t1, t2) in triples.items():
                scale = abs(lhs) + abs(t1) + abs(t2)
                if scale == 0.0:
                    continue
                r = abs(lhs - t1 - t2) / scale
                if r > residuals[name]:
                    residuals[name] = r
                    worst_at[name] = (n, j)

    logger.debug(f"EBC recurrences up to n={n_max}: {residuals}")
    return RecurrenceReport(n_max=n_max, residuals=residuals, worst_at=worst_at)


def gauss_binomial(n: int, j: int, q: Union[float, complex]) -> Union[float, complex]:
    """Gauss polynomial [n j]_q = (q)_n / ((q)_j (q)_(n-j)), as a product of j ratios."""
    if j < 0 or j > n:
        return 0.0
    result = 1.0
    for i in range(1, j + 1):
        result *= (1.0 - q ** (n - j + i)) / (1.0 - q ** i)
    return result


def ebc_k0_limit(n: int, j: int, w: float) -> float:
    """k -> 0 limit: prod_s sin(w(n-s))/sin(w(s+1))."""
    if j < 0 or j > n:
        return 0.0
    value = 1.0
    for s in range(j):
        denominator = math.sin(w * (s + 1))
        if abs(denominator) < Config.DEGENERACY_TOL:
            raise DegeneracyError(s, f"sin(w*{s + 1}) = {denominator:.3e}")
        value *= math.sin(w * (n - s)) / denominator
    return value


def ebc_k0_gauss_form(n: int, j: int, w: float) -> complex:
    """q^(-(nj - j^2)/2) [n j]_q with q = exp(-2iw); real up to rounding."""
    q = complex(math.cos(2.0 * w), -math.sin(2.0 * w))
    prefactor = complex(math.cos(w * (n * j - j * j)), math.sin(w * (n * j - j * j)))
    return prefactor * gauss_binomial(n, j, q)


def ebc_k1_limit(n: int, j: int, w: float) -> float:
    """k -> 1 limit with q = exp(-2w): (q)_n (-q)_j (-q)_(n-j) / ((q)_j (q)_(n-j) (-q)_n)."""
    if j < 0 or j > n:
        return 0.0
    if w <= 0.0:
        raise DomainError(f"hyperbolic limit needs w > 0, got {w!r}")
    q = math.exp(-2.0 * w)
    numerator = q_pochhammer(q, q, n) * q_pochhammer(-q, q, j) * q_pochhammer(-q, q, n - j)
    denominator = q_pochhammer(q, q, j) * q_pochhammer(q, q, n - j) * q_pochhammer(-q, q, n)
    return numerator / denominator
