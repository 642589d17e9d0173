"""Complete elliptic integrals, the nome, and Jacobi sn/cn/dn by the AGM."""

import logging
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.optimize import brentq

from ..utils.error_handlers import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_EPS = np.finfo(float).eps
_MAX_AGM_STEPS = 64

# log(k/k') search interval for the modulus equation; exp(-700) is still a normal double
_LOG_RATIO_BOUND = 700.0


@dataclass(frozen=True)
class EllipticContext:
    """Modulus k with its derived constants; immutable and shareable."""
    k: float  # modulus
    k_prime: float  # complementary modulus, kept separately so it survives k -> 1
    big_K: float  # K(k)
    big_K_prime: float  # K(k') = K'
    nome_q: float  # exp(-pi K'/K)
    ladder: tuple = field(default=(), repr=False, compare=False)  # descending Landen (a_n), (c_n)


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    for _ in range(_MAX_AGM_STEPS):
        if abs(a - b) <= _EPS * a:
            break
        a, b = (a + b) / 2.0, math.sqrt(a * b)
    return (a + b) / 2.0


def _descending_ladder(k: float, k_prime: float) -> tuple:
    """AGM sequences a_n, c_n started from (1, k', k)."""
    a, b, c = 1.0, k_prime, k
    a_seq, c_seq = [a], [c]
    for _ in range(_MAX_AGM_STEPS):
        if abs(c) <= _EPS * a:
            break
        a, b, c = (a + b) / 2.0, math.sqrt(a * b), (a - b) / 2.0
        a_seq.append(a)
        c_seq.append(c)
    return tuple(a_seq), tuple(c_seq)


def _assemble(k: float, k_prime: float, big_K: float, big_K_prime: float) -> EllipticContext:
    """Build a context from already-known periods (no AGM for K, K')."""
    values = (k, k_prime, big_K, big_K_prime)
    if not all(math.isfinite(v) for v in values):
        raise DomainError(f"non-finite elliptic parameters {values}")
    if not (0.0 < k <= 1.0 and 0.0 < k_prime <= 1.0):
        raise DomainError(f"modulus pair (k={k!r}, k'={k_prime!r}) outside (0, 1)")
    if big_K <= 0.0 or big_K_prime <= 0.0:
        raise DomainError("complete elliptic integrals must be positive")

    return EllipticContext(
        k=k,
        k_prime=k_prime,
        big_K=big_K,
        big_K_prime=big_K_prime,
        nome_q=math.exp(-math.pi * big_K_prime / big_K),
        ladder=_descending_ladder(k, k_prime),
    )


def make_context_from_parts(k: float, k_prime: float) -> EllipticContext:
    """
    Build a context from both moduli.

    Needed when k is so close to 1 that sqrt(1 - k^2) cannot be recovered
    from the rounded k.

    Args:
        k: Modulus, 0 < k <= 1 in floating point.
        k_prime: Complementary modulus, 0 < k' <= 1.

    Returns:
        EllipticContext with K and K' from the AGM.
    """
    if not (0.0 < k <= 1.0 and 0.0 < k_prime <= 1.0):
        raise DomainError(f"modulus pair (k={k!r}, k'={k_prime!r}) outside (0, 1)")
    big_K = math.pi / (2.0 * agm(1.0, k_prime))
    big_K_prime = math.pi / (2.0 * agm(1.0, k))
    return _assemble(k, k_prime, big_K, big_K_prime)


def make_context(k: float) -> EllipticContext:
    """
    Build the elliptic context for modulus k.

    Args:
        k: Modulus in the open interval (0, 1).

    Returns:
        EllipticContext with k', K, K' and the nome q.

    Raises:
        DomainError: If k is outside (0, 1).
    """
    if not (isinstance(k, (int, float, np.floating)) and math.isfinite(k) and 0.0 < k < 1.0):
        raise DomainError(f"modulus k={k!r} must lie in (0, 1)")
    k = float(k)
    return make_context_from_parts(k, math.sqrt((1.0 - k) * (1.0 + k)))


def dual_context(ctx: EllipticContext) -> EllipticContext:
    """Context of the complementary modulus: (k, K) and (k', K') swapped."""
    return _assemble(ctx.k_prime, ctx.k, ctx.big_K_prime, ctx.big_K)


def _like_input(u, values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(u) == 0 else values


def jacobi_sncndn(u: ArrayLike, ctx: EllipticContext) -> tuple:
    """
    Evaluate sn, cn, dn together by descending Landen transformation.

    Args:
        u: Real argument (scalar or array).
        ctx: Elliptic context.

    Returns:
        Tuple (sn, cn, dn) shaped like u.
    """
    u_arr = np.asarray(u, dtype=float)
    a_seq, c_seq = ctx.ladder
    steps = len(a_seq) - 1

    phi = (2.0 ** steps) * a_seq[steps] * u_arr
    for i in range(steps, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c_seq[i] / a_seq[i] * np.sin(phi)))

    sn = np.sin(phi)
    cn = np.cos(phi)
    # dn^2 = k'^2 + k^2 cn^2 has no cancellation near u = K
    dn = np.sqrt(ctx.k_prime ** 2 + (ctx.k * cn) ** 2)
    return _like_input(u, sn), _like_input(u, cn), _like_input(u, dn)


def jacobi_sn(u: ArrayLike, ctx: EllipticContext) -> ArrayLike:
    """Jacobi sn(u; k)."""
    return jacobi_sncndn(u, ctx)[0]


def jacobi_cn(u: ArrayLike, ctx: EllipticContext) -> ArrayLike:
    """Jacobi cn(u; k)."""
    return jacobi_sncndn(u, ctx)[1]


def jacobi_dn(u: ArrayLike, ctx: EllipticContext) -> ArrayLike:
    """Jacobi dn(u; k)."""
    return jacobi_sncndn(u, ctx)[2]


def _moduli_from_log_ratio(lam: float) -> tuple[float, float]:
    """(k, k') with log(k/k') = lam, both computed without cancellation."""
    t = math.exp(-2.0 * abs(lam))
    big = 1.0 / math.sqrt(1.0 + t)
    small = math.exp(-abs(lam)) * big
    return (big, small) if lam >= 0 else (small, big)


def _period_ratio(lam: float) -> float:
    k, k_prime = _moduli_from_log_ratio(lam)
    return math.pi * agm(1.0, k_prime) / agm(1.0, k)


def solve_k_from_w(w: float) -> EllipticContext:
    """
    Find the modulus with pi*K'/K = w.

    The unknown is log(k/k'), so both ends of the modulus range keep full
    relative precision; pi*K'/K is strictly decreasing in it.

    Args:
        w: Positive target ratio.

    Returns:
        EllipticContext satisfying pi*K'/K = w.

    Raises:
        DomainError: If w is not positive or lies outside the representable range.
    """
    if not (math.isfinite(w) and w > 0.0):
        raise DomainError(f"w={w!r} must be positive")

    lo, hi = -_LOG_RATIO_BOUND, _LOG_RATIO_BOUND
    if not _period_ratio(hi) < w < _period_ratio(lo):
        raise DomainError(f"w={w!r} outside the representable modulus range")

    lam = brentq(lambda x: _period_ratio(x) - w, lo, hi, xtol=1e-15, rtol=4 * _EPS, maxiter=300)
    k, k_prime = _moduli_from_log_ratio(lam)
    ctx = make_context_from_parts(k, k_prime)
    logger.debug(f"solve_k_from_w({w}) -> k={ctx.k!r}, k'={ctx.k_prime!r}")
    return ctx


def context_from_nome(q: float) -> EllipticContext:
    """Context whose nome is q (0 < q < 1)."""
    if not (math.isfinite(q) and 0.0 < q < 1.0):
        raise DomainError(f"nome q={q!r} must lie in (0, 1)")
    return solve_k_from_w(-math.log(q))


def landen_2N(ctx: EllipticContext, N: int) -> tuple[EllipticContext, float]:
    """
    Transformation of order 2N taking the nome q to q^(2N).

    k~ = k^(2N) prod sn^4((2r-1)K/(2N)),
    mu = prod sn^2((2r-1)K/(2N)) / sn^2(rK/N),
    K~ = K/(2N mu), K~' = K'/mu, with r = 1..N.

    Args:
        ctx: Source context.
        N: Positive integer order parameter.

    Returns:
        Tuple of (transformed context, multiplier mu).
    """
    if int(N) != N or N < 1:
        raise DomainError(f"N={N!r} must be a positive integer")
    N = int(N)

    r = np.arange(1, N + 1, dtype=float)
    sn_half = np.asarray(jacobi_sn((2.0 * r - 1.0) * ctx.big_K / (2.0 * N), ctx))
    sn_full = np.asarray(jacobi_sn(r * ctx.big_K / N, ctx))

    k_new = ctx.k ** (2 * N) * float(np.prod(sn_half ** 4))
    mu = float(np.prod(sn_half ** 2 / sn_full ** 2))
    if k_new <= 0.0:
        raise DomainError(f"transformed modulus underflows for k={ctx.k}, N={N}")

    transformed = _assemble(
        k_new,
        math.sqrt((1.0 - k_new) * (1.0 + k_new)),
        ctx.big_K / (2.0 * N * mu),
        ctx.big_K_prime / mu,
    )
    return transformed, mu
