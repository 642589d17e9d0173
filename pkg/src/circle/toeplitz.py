"""Toeplitz determinants, the determinant formula and Levinson recursion."""

import logging
from dataclasses import dataclass
from typing import Optional

import mpmath
import numpy as np
from scipy.linalg import toeplitz

from ..config import Config
from ..utils.error_handlers import DomainError, NearSingularError, PositivityError
from .types import MomentSequence, MonicCirclePolynomial, ReflectionSequence

logger = logging.getLogger(__name__)

# Elimination is used up to this size, the Levinson byproduct beyond
ELIMINATION_MAX = 12

# Reject determinant systems whose condition number exceeds 1 / this
SINGULAR_TOL = 1e-13

# Digits kept in reserve when judging an extended-precision system singular
GUARD_DIGITS = 3


@dataclass(frozen=True)
class LevinsonResult:
    """Reflection parameters a_0..a_(N-1) and norms h_0..h_N."""
    reflections: ReflectionSequence
    h: np.ndarray


@dataclass(frozen=True)
class ToeplitzDeterminants:
    """Delta_1..Delta_n_max with the route used for each size."""
    values: np.ndarray
    methods: tuple
    first_nonpositive: Optional[int] = None

    @property
    def positive(self) -> bool:
        return self.first_nonpositive is None


def _need(c: MomentSequence, count: int) -> None:
    if len(c) < count:
        raise DomainError(f"need moments c_0..c_{count - 1}, have {len(c)}")


def _use_extended(c: MomentSequence) -> bool:
    return Config.PRECISION > 0 and len(c.extended) == len(c)


def toeplitz_matrix(c: MomentSequence, n: int) -> np.ndarray:
    """n x n matrix (c_(j-i)) for a real symmetric moment sequence."""
    _need(c, n)
    return toeplitz(c.values[:n])


def levinson_reflections(c: MomentSequence, N: int) -> LevinsonResult:
    """
    Reflection parameters from moments by Levinson recursion.

    a_n = sum_s W_ns c_(s+1) / h_n and h_(n+1) = h_n (1 - a_n^2), starting
    from Phi_0 = 1, h_0 = c_0. When the moments carry mpmath copies and
    Config.PRECISION > 0 the recursion runs at that precision.

    Args:
        c: Moments c_0..c_N (at least N + 1 values).
        N: Number of reflection parameters.

    Returns:
        LevinsonResult with a_0..a_(N-1) and h_0..h_N.

    Raises:
        PositivityError: If some h_n <= 0 or |a_n| >= 1.
    """
    _need(c, N + 1)
    if _use_extended(c):
        a, h, failure = _levinson_extended(c.extended, N)
    else:
        a, h, failure = _levinson(c.values, N)
    if failure is not None:
        raise failure
    logger.debug(f"Levinson: N={N}, h_N={h[N]:.3e}")
    return LevinsonResult(reflections=ReflectionSequence(a), h=h)


def _levinson(values: np.ndarray, N: int) -> tuple[np.ndarray, np.ndarray, Optional[PositivityError]]:
    """Run the recursion as far as positivity allows; return what was reached."""
    phi = np.array([1.0])
    h = [float(values[0])]
    a = []

    for n in range(N):
        a_n = float(np.dot(phi, values[1: n + 2])) / h[n]
        if not abs(a_n) < 1.0:
            return np.array(a), np.array(h), PositivityError(n, f"|a_{n}| = {abs(a_n):.6g} >= 1")
        h_next = h[n] * (1.0 - a_n * a_n)
        if not h_next > 0.0:
            return np.array(a), np.array(h), PositivityError(n + 1, f"h_{n + 1} = {h_next:.3e}")
        a.append(a_n)
        h.append(h_next)

        nxt = np.zeros(n + 2)
        nxt[1:] = phi
        nxt[:-1] -= a_n * phi[::-1]
        phi = nxt

    return np.array(a), np.array(h), None


def _levinson_extended(values: tuple, N: int) -> tuple[np.ndarray, np.ndarray, Optional[PositivityError]]:
    """_levinson at Config.PRECISION digits; a and h are rounded to floats on return."""

    def done(a, h, failure=None):
        return np.array([float(x) for x in a]), np.array([float(x) for x in h]), failure

    with mpmath.workdps(Config.PRECISION):
        phi = [mpmath.mpf(1)]
        h = [mpmath.mpf(values[0])]
        a = []

        for n in range(N):
            a_n = mpmath.fsum(p * values[s + 1] for s, p in enumerate(phi)) / h[n]
            if not abs(a_n) < 1:
                return done(a, h, PositivityError(n, f"|a_{n}| = {float(abs(a_n)):.6g} >= 1"))
            h_next = h[n] * (1 - a_n * a_n)
            if not h_next > 0:
                return done(a, h, PositivityError(n + 1, f"h_{n + 1} = {float(h_next):.3e}"))
            a.append(a_n)
            h.append(h_next)

            nxt = [mpmath.mpf(0)] + phi
            for i, p in enumerate(reversed(phi)):
                nxt[i] -= a_n * p
            phi = nxt

    return done(a, h)


def toeplitz_dets(c: MomentSequence, n_max: int, method: str = "auto") -> ToeplitzDeterminants:
    """
    Toeplitz determinants Delta_1..Delta_n_max.

    Args:
        c: Moments (at least n_max values).
        n_max: Largest matrix size.
        method: 'elimination', 'levinson' (Delta_(n+1) = Delta_n h_n) or
            'auto' (elimination up to ELIMINATION_MAX).

    Returns:
        ToeplitzDeterminants; sizes the Levinson route cannot reach are NaN.
    """
    if method not in ("auto", "elimination", "levinson"):
        raise DomainError(f"Unknown determinant method: {method}")
    _need(c, n_max)

    use_levinson = method == "levinson" or (method == "auto" and n_max > ELIMINATION_MAX)
    dets = np.full(n_max, np.nan)
    methods = []

    if use_levinson:
        # h_0..h_(n_max-1) give Delta_1..Delta_n_max
        if _use_extended(c):
            _, h, failure = _levinson_extended(c.extended, n_max - 1)
        else:
            _, h, failure = _levinson(c.values, n_max - 1)
        if failure is not None:
            logger.warning(f"Levinson determinants stop after size {h.size}: {failure}")
        dets[: h.size] = np.cumprod(h)
        methods = ["levinson"] * n_max
    else:
        for n in range(1, n_max + 1):
            dets[n - 1] = np.linalg.det(toeplitz_matrix(c, n))
        methods = ["elimination"] * n_max

    nonpositive = np.flatnonzero(~(dets > 0.0))
    first = int(nonpositive[0]) + 1 if nonpositive.size else None
    if first is not None:
        logger.warning(f"Toeplitz determinant Delta_{first} is not positive")
    return ToeplitzDeterminants(values=dets, methods=tuple(methods), first_nonpositive=first)


def determinant_poly(c: MomentSequence, n: int) -> MonicCirclePolynomial:
    """
    Phi_n from the bordered Toeplitz determinant, expanded along the z^s row.

    W_ns = (-1)^(n+s) det(M with row n and column s removed) / Delta_n.
    Moments with mpmath copies are expanded at Config.PRECISION digits.

    Raises:
        NearSingularError: If the n x n Toeplitz matrix is ill-conditioned.
    """
    if n < 0:
        raise DomainError(f"degree n={n} must be >= 0")
    if n == 0:
        return MonicCirclePolynomial([1.0])
    _need(c, n + 1)
    if _use_extended(c):
        return _determinant_poly_extended(c.extended, n)

    T = toeplitz_matrix(c, n)
    cond = np.linalg.cond(T)
    if not cond < 1.0 / SINGULAR_TOL:
        raise NearSingularError(f"Toeplitz matrix of size {n} has condition number {cond:.3e}")
    delta = np.linalg.det(T)

    # rows 0..n-1 of the bordered matrix: (c_(j-i)), j = 0..n
    top = toeplitz(c.values[:n], c.values[: n + 1])
    coeffs = np.empty(n + 1)
    for s in range(n + 1):
        minor = np.delete(top, s, axis=1)
        coeffs[s] = (-1.0) ** (n + s) * np.linalg.det(minor) / delta
    return MonicCirclePolynomial(coeffs)


def _determinant_poly_extended(values: tuple, n: int) -> MonicCirclePolynomial:
    digits = Config.PRECISION
    with mpmath.workdps(digits):
        T = mpmath.matrix([[values[abs(j - i)] for j in range(n)] for i in range(n)])
        cond = mpmath.cond(T)
        if not cond < mpmath.mpf(10) ** (digits - GUARD_DIGITS):
            raise NearSingularError(f"Toeplitz matrix of size {n} has condition number {float(cond):.3e} at {digits} digits")
        delta = mpmath.det(T)

        coeffs = []
        for s in range(n + 1):
            columns = [j for j in range(n + 1) if j != s]
            minor = mpmath.matrix([[values[abs(j - i)] for j in columns] for i in range(n)])
            coeffs.append((-1) ** (n + s) * mpmath.det(minor) / delta)
    return MonicCirclePolynomial([float(x) for x in coeffs])


def functional_orthogonality(poly: MonicCirclePolynomial, c: MomentSequence, m: int) -> float:
    """
    <sigma, Phi_n(z) z^(-m)> = sum_s W_ns c_(s-m).

    Zero for 0 <= m < n; equals h_n for m = n.
    """
    _need(c, max(poly.degree, m) + 1)
    s = np.arange(poly.degree + 1)
    return float(np.dot(poly.coeffs, c.values[np.abs(s - m)]))
