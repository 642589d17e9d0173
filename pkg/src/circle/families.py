"""
The cn- and dn-families of polynomials orthogonal on the unit circle.

Both families come from one step parameter w and modulus k:

    cn family: c_n = cn(wn), a_2m = cn(w(2m+1)), a_2m+1 = -dn(w(2m+2))
    dn family: c_n = dn(wn), a_2m = dn(w(2m+1)), a_2m+1 = -cn(w(2m+2))

The explicit coefficients are W_ns = (-1)^s f(w(n-s)) E^n_s for even n and
(-1)^(s+1) g(w(n-s)) E^n_s for odd n, with (f, g) = (dn, cn) for the cn
family and the roles swapped for the dn family.
"""

import logging

import mpmath
import numpy as np

from ..config import Config
from ..elliptic.binomial import ebc_row, make_params
from ..elliptic.kernel import EllipticContext, jacobi_sncndn
from ..utils.error_handlers import DomainError, FiniteCaseSignal
from .types import UNIT_TOL, MomentSequence, MonicCirclePolynomial, ReflectionSequence

logger = logging.getLogger(__name__)

FAMILIES = ("cn", "dn")


def check_family(family: str) -> str:
    """Normalize and validate a family name."""
    family = str(family).lower()
    if family not in FAMILIES:
        raise DomainError(f"Unknown family '{family}' (expected one of {FAMILIES})")
    return family


def _cn_dn(u: np.ndarray, ctx: EllipticContext) -> tuple[np.ndarray, np.ndarray]:
    _, cn, dn = jacobi_sncndn(np.asarray(u, dtype=float), ctx)
    return np.asarray(cn).reshape(-1), np.asarray(dn).reshape(-1)


def _family_reflections(family: str, N: int, w: float, ctx: EllipticContext) -> ReflectionSequence:
    if N < 0:
        raise DomainError(f"N={N} must be >= 0")
    idx = np.arange(1, N + 1, dtype=float)
    cn, dn = _cn_dn(w * idx, ctx)
    even_fn, odd_fn = (cn, dn) if family == "cn" else (dn, cn)

    values = np.where(np.arange(N) % 2 == 0, even_fn, -odd_fn)
    near_unit = np.flatnonzero(np.abs(np.abs(values) - 1.0) <= UNIT_TOL)
    if near_unit.size:
        n = int(near_unit[0])
        logger.debug(f"{family} reflections reach |a_{n}| = 1 at w={w!r}")
        raise FiniteCaseSignal(n, float(values[n]))
    return ReflectionSequence(values)


def reflection_cn(N: int, w: float, ctx: EllipticContext) -> ReflectionSequence:
    """
    Reflection parameters a_0..a_(N-1) of the cn family.

    Raises:
        FiniteCaseSignal: If some |a_n| equals 1 within UNIT_TOL.
    """
    return _family_reflections("cn", N, w, ctx)


def reflection_dn(N: int, w: float, ctx: EllipticContext) -> ReflectionSequence:
    """Reflection parameters a_0..a_(N-1) of the dn family."""
    return _family_reflections("dn", N, w, ctx)


def reflections(family: str, N: int, w: float, ctx: EllipticContext) -> ReflectionSequence:
    return _family_reflections(check_family(family), N, w, ctx)


def _family_moments(family: str, n_max: int, w: float, ctx: EllipticContext) -> MomentSequence:
    if n_max < 0:
        raise DomainError(f"n_max={n_max} must be >= 0")
    cn, dn = _cn_dn(w * np.arange(n_max + 1, dtype=float), ctx)
    values = (cn if family == "cn" else dn).copy()
    values[0] = 1.0
    extended = _extended_moments(family, n_max, w, ctx) if Config.PRECISION > 0 else ()
    return MomentSequence(values, extended=extended)


def _extended_moments(family: str, n_max: int, w: float, ctx: EllipticContext) -> tuple:
    """cn(wn) or dn(wn) at Config.PRECISION digits, w and k taken as exact binary values."""
    with mpmath.workdps(Config.PRECISION):
        m = mpmath.mpf(ctx.k) ** 2
        step = mpmath.mpf(w)
        values = [mpmath.mpf(1)]
        values += [mpmath.ellipfun(family, step * n, m=m) for n in range(1, n_max + 1)]
    return tuple(values)


def moments_cn(n_max: int, w: float, ctx: EllipticContext) -> MomentSequence:
    """Moments c_n = cn(wn), n = 0..n_max."""
    return _family_moments("cn", n_max, w, ctx)


def moments_dn(n_max: int, w: float, ctx: EllipticContext) -> MomentSequence:
    """Moments c_n = dn(wn), n = 0..n_max."""
    return _family_moments("dn", n_max, w, ctx)


def moments(family: str, n_max: int, w: float, ctx: EllipticContext) -> MomentSequence:
    return _family_moments(check_family(family), n_max, w, ctx)


def _explicit(family: str, n: int, w: float, ctx: EllipticContext) -> MonicCirclePolynomial:
    if n < 0:
        raise DomainError(f"degree n={n} must be >= 0")
    params = make_params(w, ctx, check_lattice=False)
    row = ebc_row(n, params)

    s = np.arange(n + 1)
    cn, dn = _cn_dn(w * (n - s).astype(float), ctx)
    if n % 2 == 0:
        prefactor = dn if family == "cn" else cn
        sign = np.where(s % 2 == 0, 1.0, -1.0)
    else:
        prefactor = cn if family == "cn" else dn
        sign = np.where(s % 2 == 0, -1.0, 1.0)

    coeffs = sign * prefactor * row
    logger.debug(f"explicit {family} polynomial n={n}: W_n0={coeffs[0]!r}")
    return MonicCirclePolynomial(coeffs)


def explicit_cn_poly(n: int, w: float, ctx: EllipticContext) -> MonicCirclePolynomial:
    """
    Phi^(C)_n from its closed-form coefficients.

    Args:
        n: Degree.
        w: Step parameter.
        ctx: Elliptic context.

    Returns:
        Monic polynomial with W_ns = +-dn or cn(w(n-s)) E^n_s.

    Raises:
        DegeneracyError: If an EBC denominator vanishes.
    """
    return _explicit("cn", n, w, ctx)


def explicit_dn_poly(n: int, w: float, ctx: EllipticContext) -> MonicCirclePolynomial:
    """Phi^(D)_n: the cn-family coefficients with cn and dn interchanged."""
    return _explicit("dn", n, w, ctx)


def explicit_poly(family: str, n: int, w: float, ctx: EllipticContext) -> MonicCirclePolynomial:
    return _explicit(check_family(family), n, w, ctx)


def explicit_family(family: str, n_max: int, w: float, ctx: EllipticContext) -> list[MonicCirclePolynomial]:
    """Explicit polynomials of degrees 0..n_max."""
    family = check_family(family)
    return [_explicit(family, n, w, ctx) for n in range(n_max + 1)]


def _h_n(family: str, n: int, w: float, ctx: EllipticContext) -> float:
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    sn, _, _ = jacobi_sncndn(w * np.arange(1, n + 1, dtype=float), ctx)
    if family == "cn":
        power = n if n % 2 == 0 else n - 1
    else:
        power = n if n % 2 == 0 else n + 1
    return float(ctx.k ** power * np.prod(np.asarray(sn) ** 2))


def h_n_cn(n: int, w: float, ctx: EllipticContext) -> float:
    """h_n = mu_n prod_(s=1..n) sn^2(ws), mu_n = k^n (n even), k^(n-1) (n odd)."""
    return _h_n("cn", n, w, ctx)


def h_n_dn(n: int, w: float, ctx: EllipticContext) -> float:
    """h_n for the dn family: mu_n = k^n (n even), k^(n+1) (n odd)."""
    return _h_n("dn", n, w, ctx)


def h_n_family(family: str, n: int, w: float, ctx: EllipticContext) -> float:
    return _h_n(check_family(family), n, w, ctx)


def family_values_at_pm1(family: str, n: int, w: float, ctx: EllipticContext) -> tuple[float, float]:
    """
    Closed-form Phi_n(1) and Phi_n(-1) as products of (1 +- cn) and (1 +- dn).

    For the cn family Phi_n(1) = (1 - cn(w))(1 + dn(2w))(1 - cn(3w))...
    and Phi_n(-1) = (-1)^n (1 + cn(w))(1 + dn(2w))(1 + cn(3w))...
    """
    family = check_family(family)
    cn, dn = _cn_dn(w * np.arange(1, n + 1, dtype=float), ctx)
    even_fn, odd_fn = (cn, dn) if family == "cn" else (dn, cn)
    at_one = 1.0
    at_minus_one = 1.0
    for s in range(n):
        if s % 2 == 0:
            at_one *= 1.0 - even_fn[s]
            at_minus_one *= 1.0 + even_fn[s]
        else:
            at_one *= 1.0 + odd_fn[s]
            at_minus_one *= 1.0 + odd_fn[s]
    return at_one, (-1.0) ** n * at_minus_one


def reflect_sign(poly: MonicCirclePolynomial) -> MonicCirclePolynomial:
    """(-1)^n Phi_n(-z): coefficients (-1)^(n+s) W_ns. An involution."""
    n = poly.degree
    sign = np.where((n + np.arange(n + 1)) % 2 == 0, 1.0, -1.0)
    return MonicCirclePolynomial(sign * poly.coeffs)


def reflected_reflections(a: ReflectionSequence) -> ReflectionSequence:
    """Reflection parameters of the reflected-sign family: (-1)^(n+1) a_n."""
    sign = np.where(np.arange(len(a)) % 2 == 0, -1.0, 1.0)
    return ReflectionSequence(sign * a.values, finite=a.finite)


def reflected_moments(c: MomentSequence) -> MomentSequence:
    """Moments of the reflected-sign family: (-1)^n c_n."""
    sign = np.where(np.arange(len(c)) % 2 == 0, 1.0, -1.0)
    extended = tuple(v if s > 0 else -v for s, v in zip(sign, c.extended))
    return MomentSequence(sign * c.values, flags=c.flags, extended=extended)
