"""Orthogonality on [-1, 1], interval moments and the Askey-Wilson limit."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ..circle.measures import DiscretePointMeasure, GramResult
from ..circle.types import MomentSequence, MonicCirclePolynomial, ReflectionSequence
from ..elliptic.kernel import jacobi_dn, solve_k_from_w
from ..limits.hyperbolic import hyp_reflections
from ..utils.error_handlers import DomainError
from ..utils.export import write_rows
from .transform import dgt_family, kappa, split_PQ_recurrences, split_polys, v_coeffs

logger = logging.getLogger(__name__)

RECURRENCE_COLUMNS = ("n", "v", "kappa", "u", "b", "H")

# truncate the Askey-Wilson product once q^(s+1/2) drops below this
PRODUCT_EPS = 1e-18


@dataclass(frozen=True)
class IntervalGramReport:
    """Discrete Gram checks of the S, P and Q families."""
    S: GramResult
    P: GramResult
    Q: GramResult

    @property
    def max_error(self) -> float:
        values = []
        for g in (self.S, self.P, self.Q):
            values.append(g.max_offdiag)
            if g.max_diag_error is not None:
                values.append(g.max_diag_error)
        return max(values)


@dataclass(frozen=True)
class AskeyWilsonReport:
    """Hyperbolic limit of the split recurrence and of the weight."""
    u_residual: float
    b_residual: float
    ratio_min: float
    ratio_max: float
    expected_ratio: float

    @property
    def ratio_spread(self) -> float:
        return (self.ratio_max - self.ratio_min) / self.expected_ratio


def interval_moments(c: MomentSequence, n_max: int) -> np.ndarray:
    """
    M_n = 2^-n sum_j C(n, j) c_(j - n/2) for even n, 0 for odd n.

    These are the moments of the symmetric measure on x = cos(theta/2).
    """
    if n_max < 0:
        raise DomainError(f"n_max={n_max} must be >= 0")
    if len(c) <= n_max // 2:
        raise DomainError(f"M_{n_max} needs c_0..c_{n_max // 2}, have {len(c)} moments")
    out = np.zeros(n_max + 1)
    for n in range(0, n_max + 1, 2):
        out[n] = sum(math.comb(n, j) * c.at(j - n // 2) for j in range(n + 1)) / 2.0 ** n
    return out


def _gram(values: np.ndarray, weights: np.ndarray, expected: np.ndarray) -> GramResult:
    gram = (values * weights) @ values.T
    diagonal = np.diag(gram).copy()
    off = gram - np.diag(diagonal)
    max_off = float(np.max(np.abs(off))) if len(values) > 1 else 0.0
    return GramResult(gram, max_off, diagonal, float(np.max(np.abs(diagonal - expected))))


def interval_gram(
    phis: Sequence[MonicCirclePolynomial],
    a: ReflectionSequence,
    measure: DiscretePointMeasure
) -> IntervalGramReport:
    """
    Check the interval orthogonality of S_n, P_n and Q_n on a circle measure.

    With theta_s the measure's angles:
      S: sum rho_s (S_n S_m(x_s) + S_n S_m(-x_s))/2 = kappa_n delta, x_s = cos(theta_s/2);
      P: sum rho_s P_n P_m(y_s) = H_n delta, y_s = cos(theta_s), H_n = u_1..u_n;
      Q: sum rho_s (1 + y_s) Q_n Q_m(y_s) = (1 + a_0) u_1..u_n delta.

    Args:
        phis: Phi_0..Phi_N of a unit-mass measure.
        a: Reflection parameters a_0..a_(N-1) (or more).
        measure: The orthogonality measure of phis.

    Returns:
        IntervalGramReport with one GramResult per family.
    """
    N = len(phis) - 1
    if N < 1:
        raise DomainError("interval Gram check needs Phi_0 and Phi_1 at least")
    k = kappa(v_coeffs(a, N))
    S = dgt_family(phis, a)
    P, Q = split_polys(phis, a)

    x = np.cos(measure.angles / 2.0)
    plus = np.array([s(x) for s in S])
    minus = np.array([s(-x) for s in S])
    gram = ((plus * measure.weights) @ plus.T + (minus * measure.weights) @ minus.T) / 2.0
    diagonal = np.diag(gram).copy()
    s_result = GramResult(
        gram,
        float(np.max(np.abs(gram - np.diag(diagonal)))),
        diagonal,
        float(np.max(np.abs(diagonal - k))),
    )

    # H_n = 4^n kappa_2n and (1 + a_0) prod u^Q = 2 4^n kappa_(2n+1)
    y = np.cos(measure.angles)
    h_P = np.array([4.0 ** n * k[2 * n] for n in range(len(P))])
    h_Q = np.array([2.0 * 4.0 ** n * k[2 * n + 1] for n in range(len(Q))])
    p_result = _gram(np.array([p(y) for p in P]), measure.weights, h_P)
    q_result = _gram(np.array([p(y) for p in Q]), measure.weights * (1.0 + y), h_Q)

    report = IntervalGramReport(S=s_result, P=p_result, Q=q_result)
    logger.debug(f"interval Gram on {len(measure)} points, N={N}: max error {report.max_error:.3e}")
    return report


def hyperbolic_split_coeffs(n: int, w: float) -> tuple[float, float]:
    """
    Limit of the cn-family (u_n, b_n) as k -> 1, q = exp(-2w):

    u_n = (1-q^n)^2 (1-q^(2n-1))^2 (1+q^(n-1))^2 / (4 (1+q^(2n-1))^2 (1+q^2n) (1+q^(2n-2))),
    b_n = q^(n-1/2) (2(q+1) q^n - (1-q)(1-q^2n)) / ((1+q^(2n-1)) (1+q^(2n+1))).
    """
    q = math.exp(-2.0 * w)
    u = (
        (1.0 - q ** n) ** 2 * (1.0 - q ** (2 * n - 1)) ** 2 * (1.0 + q ** (n - 1)) ** 2
        / (4.0 * (1.0 + q ** (2 * n - 1)) ** 2 * (1.0 + q ** (2 * n)) * (1.0 + q ** (2 * n - 2)))
    )
    b = (
        q ** (n - 0.5) * (2.0 * (q + 1.0) * q ** n - (1.0 - q) * (1.0 - q ** (2 * n)))
        / ((1.0 + q ** (2 * n - 1)) * (1.0 + q ** (2 * n + 1)))
    )
    return u, b


def askey_wilson_weight(x, q: float):
    """
    prod_s (1 + 2x q^(s+1/2) + q^(2s+1)) / (1 - 2x q^(s+1/2) + q^(2s+1)).

    The weight of the limiting P family on [-1, 1]; the Q family carries an
    extra factor (1 + x).
    """
    if not 0.0 < q < 1.0:
        raise DomainError(f"q={q!r} must lie in (0, 1)")
    x = np.asarray(x, dtype=float)
    result = np.ones_like(x)
    s = 0
    while q ** (s + 0.5) >= PRODUCT_EPS:
        t = q ** (s + 0.5)
        result = result * (1.0 + 2.0 * x * t + t * t) / (1.0 - 2.0 * x * t + t * t)
        s += 1
    return result


def askey_wilson_limit_check(w: float, n_max: int = 8, grid: int = 17) -> AskeyWilsonReport:
    """
    Compare the k -> 1 split recurrence and weight with the Askey-Wilson data.

    (i) u_n, b_n from the hyperbolic reflection parameters against their
    q-closed forms; (ii) the product weight at x = cos(2 theta) against
    dn(2K theta/pi) for the modulus of nome exp(-w). The ratio is the
    constant 1/sqrt(k').
    """
    if not (math.isfinite(w) and w > 0.0):
        raise DomainError(f"w={w!r} must be positive")
    if n_max < 1 or grid < 2:
        raise DomainError("n_max must be >= 1 and grid >= 2")

    a = hyp_reflections(2 * n_max + 2, w)
    P, _ = split_PQ_recurrences(a)
    u_res = b_res = 0.0
    for n in range(n_max + 1):
        u, b = hyperbolic_split_coeffs(n, w)
        b_res = max(b_res, abs(P.b[n] - b))
        if n >= 1:
            u_res = max(u_res, abs(P.u[n] - u))

    ctx = solve_k_from_w(w)
    theta = np.linspace(0.0, math.pi / 2.0, grid)
    weight = askey_wilson_weight(np.cos(2.0 * theta), math.exp(-2.0 * w))
    dn = np.asarray(jacobi_dn(2.0 * ctx.big_K * theta / math.pi, ctx), dtype=float)
    ratio = weight / dn

    report = AskeyWilsonReport(
        u_residual=float(u_res),
        b_residual=float(b_res),
        ratio_min=float(np.min(ratio)),
        ratio_max=float(np.max(ratio)),
        expected_ratio=1.0 / math.sqrt(ctx.k_prime),
    )
    logger.debug(f"Askey-Wilson check at w={w}: {report}")
    return report


def recurrence_table(a: ReflectionSequence, n_max: Optional[int] = None) -> list[dict]:
    """
    Rows (n, v_n, kappa_n, u_n, b_n, H_n) with u, b, H of the P family.

    P entries stop where a runs out; those cells stay empty.
    """
    n_max = len(a) if n_max is None else n_max
    v = v_coeffs(a, n_max)
    k = kappa(v)
    P, _ = split_PQ_recurrences(a)
    H = np.cumprod(np.concatenate(([1.0], P.u[1:])))
    rows = []
    for n in range(n_max + 1):
        row = {"n": n, "v": float(v.v[n]), "kappa": float(k[n])}
        if n < P.b.size:
            row.update(u=float(P.u[n]), b=float(P.b[n]), H=float(H[n]))
        rows.append(row)
    return rows


def write_recurrence_table(
    rows: Sequence[dict],
    path: Optional[str | Path] = None,
    fmt: str = "csv",
    meta: Optional[dict] = None
) -> None:
    """Export recurrence_table rows in CSV or JSON."""
    write_rows(rows, RECURRENCE_COLUMNS, path, fmt, meta)
