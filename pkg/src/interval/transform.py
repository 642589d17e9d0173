"""
Delsarte-Genin transform and the quadratic P/Q split.

Symmetric polynomials on [-1, 1] are kept in the Chebyshev basis: with
z = exp(i theta) and x = cos(theta/2),

    z^(-n/2) Phi_n(z) + z^(n/2) Phi_n(1/z) = sum_s 2 W_ns T_|2s-n|(x),

so no half-integer power of z is ever formed. T_2m(x) = T_m(2x^2 - 1) and
T_(2m+1)(x)/x = V_m(2x^2 - 1) with V_m + V_(m-1) = 2 T_m give P and Q.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import Chebyshev
from numpy.polynomial import chebyshev as C

from ..circle.families import check_family
from ..circle.types import MonicCirclePolynomial, ReflectionSequence
from ..elliptic.binomial import ebc_row, make_params
from ..elliptic.kernel import EllipticContext, jacobi_sncndn
from ..utils.error_handlers import DegenerateTransformError, DomainError

logger = logging.getLogger(__name__)

# exact integer Chebyshev table size
T_TABLE_MAX = 40


@lru_cache(maxsize=1)
def chebyshev_T_table(max_degree: int = T_TABLE_MAX) -> tuple:
    """Integer monomial coefficients of T_0..T_max_degree (ascending powers)."""
    table = [(1,), (0, 1)]
    for s in range(1, max_degree):
        prev, cur = table[s - 1], table[s]
        nxt = [0] * (s + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= c
        table.append(tuple(nxt))
    return tuple(table[: max_degree + 1])


def chebyshev_to_monomial(cheb: Sequence[float]) -> np.ndarray:
    """Monomial coefficients of sum_s cheb[s] T_s via the exact integer table."""
    cheb = np.asarray(cheb, dtype=float)
    if cheb.size - 1 > T_TABLE_MAX:
        raise DomainError(f"degree {cheb.size - 1} exceeds the Chebyshev table ({T_TABLE_MAX})")
    table = chebyshev_T_table()
    out = np.zeros(cheb.size)
    for s, c in enumerate(cheb):
        if c != 0.0:
            out[: s + 1] += c * np.array(table[s], dtype=float)
    return out


@dataclass(frozen=True)
class SymmetricIntervalPolynomial:
    """Monic polynomial on [-1, 1] with S(-x) = (-1)^n S(x), in the Chebyshev basis."""
    cheb: Chebyshev

    @property
    def degree(self) -> int:
        return len(self.cheb.coef) - 1

    @property
    def coeffs(self) -> np.ndarray:
        """Monomial coefficients (ascending)."""
        return chebyshev_to_monomial(self.cheb.coef)

    def __call__(self, x):
        return self.cheb(x)


@dataclass(frozen=True)
class IntervalRecurrence:
    """
    Interval recurrence data.

    For symmetric families v holds v_0..v_N (v_0 = 0). For the split
    families u holds u_0..u_(L-1) (u_0 unused, 0) and b holds b_0..b_(L-1).
    """
    v: Optional[np.ndarray] = None
    u: Optional[np.ndarray] = None
    b: Optional[np.ndarray] = None
    label: str = ""


def _a_ext(a: ReflectionSequence, index: int) -> float:
    """a_index with the convention a_(-1) = -1 (a_(-2) only ever multiplies 0)."""
    if index == -1:
        return -1.0
    if index < -1:
        return 0.0
    return float(a[index])


def dgt(phi: MonicCirclePolynomial, a_prev: float) -> SymmetricIntervalPolynomial:
    """
    Delsarte-Genin transform of Phi_n.

    S_n = (z^(-n/2) Phi_n(z) + z^(n/2) Phi_n(1/z)) / (2^n (1 - a_(n-1))).

    Args:
        phi: Circle polynomial of degree n.
        a_prev: a_(n-1) (use -1 for n = 0).

    Returns:
        Monic symmetric polynomial of degree n.

    Raises:
        DegenerateTransformError: If a_prev = 1.
    """
    if a_prev == 1.0:
        raise DegenerateTransformError(f"a_(n-1) = 1 at n = {phi.degree}")
    n = phi.degree
    cheb = np.zeros(n + 1)
    for s, W in enumerate(phi.coeffs):
        cheb[abs(2 * s - n)] += 2.0 * W
    cheb /= 2.0 ** n * (1.0 - a_prev)
    return SymmetricIntervalPolynomial(Chebyshev(cheb))


def dgt_family(phis: Sequence[MonicCirclePolynomial], a: ReflectionSequence) -> list[SymmetricIntervalPolynomial]:
    """S_0..S_n for Phi_0..Phi_n."""
    return [dgt(phi, _a_ext(a, n - 1)) for n, phi in enumerate(phis)]


def v_coeffs(a: ReflectionSequence, N: Optional[int] = None) -> IntervalRecurrence:
    """
    v_n = (1 + a_(n-1))(1 - a_(n-2))/4 for n = 1..N, v_0 = 0 (a_(-1) = -1).

    N defaults to len(a).
    """
    N = len(a) if N is None else N
    if N > len(a):
        raise DomainError(f"v_{N} needs a_{N - 1}; only {len(a)} reflections")
    v = np.zeros(N + 1)
    for n in range(1, N + 1):
        v[n] = (1.0 + _a_ext(a, n - 1)) * (1.0 - _a_ext(a, n - 2)) / 4.0
    return IntervalRecurrence(v=v, label="S")


def kappa(v: IntervalRecurrence) -> np.ndarray:
    """kappa_n = v_1 ... v_n (kappa_0 = 1)."""
    out = np.ones(v.v.size)
    out[1:] = np.cumprod(v.v[1:])
    return out


def kappa_from_norms(h: Sequence[float], a: ReflectionSequence) -> np.ndarray:
    """kappa_n = 2^(1-2n) h_n / (1 - a_(n-1)), n = 0..len(h)-1."""
    h = np.asarray(h, dtype=float)
    out = np.empty(h.size)
    for n in range(h.size):
        out[n] = 2.0 ** (1 - 2 * n) * h[n] / (1.0 - _a_ext(a, n - 1))
    return out


def split_PQ_recurrences(a: ReflectionSequence, route: str = "direct") -> tuple[IntervalRecurrence, IntervalRecurrence]:
    """
    Recurrence coefficients (u_n, b_n) of the P and Q families.

    'direct' uses the closed forms in the reflection parameters,
    'v' composes them from v_n (u = 4 v_2n v_(2n-1), b = 2(v_2n + v_(2n+1)) - 1
    for P; u = 4 v_2n v_(2n+1), b = 2(v_(2n+2) + v_(2n+1)) - 1 for Q).
    Both return n = 0..len(a)//2 - 1.
    """
    if route not in ("direct", "v"):
        raise DomainError(f"Unknown route '{route}' (expected 'direct' or 'v')")
    L = len(a) // 2
    uP, bP, uQ, bQ = (np.zeros(L) for _ in range(4))

    if route == "v":
        v = v_coeffs(a).v
        for n in range(L):
            if n >= 1:
                uP[n] = 4.0 * v[2 * n] * v[2 * n - 1]
                uQ[n] = 4.0 * v[2 * n] * v[2 * n + 1]
            bP[n] = 2.0 * (v[2 * n] + v[2 * n + 1]) - 1.0
            bQ[n] = 2.0 * (v[2 * n + 2] + v[2 * n + 1]) - 1.0
    else:
        A = lambda i: _a_ext(a, i)  # noqa: E731
        for n in range(L):
            if n >= 1:
                uP[n] = (1.0 + A(2 * n - 1)) * (1.0 - A(2 * n - 2) ** 2) * (1.0 - A(2 * n - 3)) / 4.0
                uQ[n] = (1.0 + A(2 * n)) * (1.0 - A(2 * n - 1) ** 2) * (1.0 - A(2 * n - 2)) / 4.0
            bP[n] = (A(2 * n) * (1.0 - A(2 * n - 1)) - A(2 * n - 2) * (1.0 + A(2 * n - 1))) / 2.0
            bQ[n] = (A(2 * n + 1) * (1.0 - A(2 * n)) - A(2 * n - 1) * (1.0 + A(2 * n))) / 2.0

    return IntervalRecurrence(u=uP, b=bP, label="P"), IntervalRecurrence(u=uQ, b=bQ, label="Q")


def _V_in_T(m: int) -> np.ndarray:
    """Chebyshev coefficients of V_m: 2 T_m - 2 T_(m-1) + ... +- T_0."""
    out = np.zeros(m + 1)
    for i in range(m):
        out[m - i] = 2.0 * (-1.0) ** i
    out[0] = (-1.0) ** m
    return out


def split_polys(
    phis: Sequence[MonicCirclePolynomial],
    a: ReflectionSequence
) -> tuple[list[Chebyshev], list[Chebyshev]]:
    """
    P_0.. and Q_0.. from S_2n(x) = 2^-n P_n(2x^2 - 1), S_2n+1(x) = 2^-n x Q_n(2x^2 - 1).

    Returns:
        (P list, Q list) as Chebyshev series in y = 2x^2 - 1.
    """
    S = dgt_family(phis, a)
    P, Q = [], []
    for n in range(len(S) // 2 + 1):
        if 2 * n < len(S):
            even = S[2 * n].cheb.coef[0::2]
            P.append(Chebyshev(2.0 ** n * even))
        if 2 * n + 1 < len(S):
            odd = S[2 * n + 1].cheb.coef[1::2]
            coef = np.zeros(odd.size)
            for m, c in enumerate(odd):
                coef[: m + 1] += c * _V_in_T(m)
            Q.append(Chebyshev(2.0 ** n * coef))
    return P, Q


def recurrence_polys(rec: IntervalRecurrence, n: int) -> list[Chebyshev]:
    """Monic p_0..p_n from p_(m+1) = (x - b_m) p_m - u_m p_(m-1)."""
    if n > rec.b.size:
        raise DomainError(f"need b_0..b_{n - 1}, have {rec.b.size}")
    polys = [np.array([1.0])]
    prev = np.array([0.0])
    for m in range(n):
        cur = polys[-1]
        nxt = C.chebsub(C.chebmulx(cur), rec.b[m] * cur)
        if m >= 1:
            nxt = C.chebsub(nxt, rec.u[m] * prev)
        prev = cur
        polys.append(nxt)
    return [Chebyshev(p) for p in polys]


def symmetric_recurrence_residual(S: Sequence[SymmetricIntervalPolynomial], v: IntervalRecurrence) -> float:
    """Max Chebyshev-coefficient residual of S_(n+1) + v_n S_(n-1) - x S_n."""
    worst = 0.0
    for n in range(1, len(S) - 1):
        lhs = C.chebadd(S[n + 1].cheb.coef, v.v[n] * S[n - 1].cheb.coef)
        diff = C.chebsub(lhs, C.chebmulx(S[n].cheb.coef))
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst


def chebyshev_expansion(phi_2n: MonicCirclePolynomial, a_prev: float) -> Chebyshev:
    """
    P_n = 2^(1-n) (1 - a_(2n-1))^-1 (W_(2n,n) + sum_s (W_(2n,n+s) + W_(2n,n-s)) T_s).

    Args:
        phi_2n: Circle polynomial of even degree 2n.
        a_prev: a_(2n-1) (-1 for n = 0).
    """
    if phi_2n.degree % 2:
        raise DomainError("Chebyshev expansion needs an even-degree polynomial")
    if a_prev == 1.0:
        raise DegenerateTransformError()
    n = phi_2n.degree // 2
    W = phi_2n.coeffs
    if n == 0:
        return Chebyshev([1.0])
    coef = np.empty(n + 1)
    coef[0] = W[n]
    for s in range(1, n + 1):
        coef[s] = W[n + s] + W[n - s]
    return Chebyshev(2.0 ** (1 - n) / (1.0 - a_prev) * coef)


def p_cn_chebyshev(n: int, w: float, ctx: EllipticContext) -> Chebyshev:
    """
    P_n of the cn family directly from elliptic data:

    (-1)^n 2^(1-n) / (1 + dn(2wn)) (dn(wn) E^2n_n + sum_s (-1)^s E^2n_(n+s) (dn(w(n-s)) + dn(w(n+s))) T_s).
    """
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    if n == 0:
        return Chebyshev([1.0])
    row = ebc_row(2 * n, make_params(w, ctx, check_lattice=False))
    _, _, dn = (np.asarray(v).reshape(-1) for v in jacobi_sncndn(w * np.arange(2 * n + 1, dtype=float), ctx))
    coef = np.empty(n + 1)
    coef[0] = dn[n] * row[n]
    for s in range(1, n + 1):
        coef[s] = (-1.0) ** s * row[n + s] * (dn[n - s] + dn[n + s])
    return Chebyshev((-1.0) ** n * 2.0 ** (1 - n) / (1.0 + dn[2 * n]) * coef)


def _explicit_split(family: str, n: int, w: float, ctx: EllipticContext) -> tuple[float, float]:
    family = check_family(family)
    sn, cn, dn = jacobi_sncndn(np.array([w * (2 * n - 1), w * (2 * n + 1), 2 * w * n, 2 * w * (n - 1)]), ctx)
    f, g = (cn, dn) if family == "cn" else (dn, cn)
    # 1 - f^2 at w(2n-1): sn^2 for cn, k^2 sn^2 for dn
    one_minus_f2 = sn[0] ** 2 if family == "cn" else ctx.k ** 2 * sn[0] ** 2
    u = one_minus_f2 * (1.0 - g[2]) * (1.0 + g[3]) / 4.0
    b = (f[1] * (1.0 + g[2]) - f[0] * (1.0 - g[2])) / 2.0
    return float(u), float(b)


def explicit_cn_split_coeffs(n: int, w: float, ctx: EllipticContext) -> tuple[float, float]:
    """
    (u_n, b_n) of the cn-family P polynomials in elliptic form:

    u_n = sn^2(w(2n-1)) (1 - dn(2wn)) (1 + dn(2w(n-1))) / 4,
    b_n = (cn(w(2n+1)) (1 + dn(2wn)) - cn(w(2n-1)) (1 - dn(2wn))) / 2.
    """
    return _explicit_split("cn", n, w, ctx)


def explicit_dn_split_coeffs(n: int, w: float, ctx: EllipticContext) -> tuple[float, float]:
    """(u_n, b_n) of the dn-family P polynomials: cn and dn interchanged."""
    return _explicit_split("dn", n, w, ctx)
