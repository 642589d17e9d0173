"""Discrete orthogonality measures of the cn/dn families and Gram checks."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ..config import Config
from ..elliptic.kernel import EllipticContext
from ..utils.error_handlers import DomainError
from ..utils.export import write_rows
from .families import check_family
from .types import MonicCirclePolynomial

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# angles closer than this (mod 2 pi) count as one spectral point
ANGLE_TOL = 1e-9

MEASURE_COLUMNS = ("s", "angle", "weight")


@dataclass(frozen=True)
class DiscretePointMeasure:
    """Point masses at z_s = exp(i angle_s) on the unit circle."""
    indices: np.ndarray
    angles: np.ndarray  # reduced to [0, 2 pi)
    weights: np.ndarray
    trunc: int
    tail_bound: float
    label: str = ""

    def __len__(self) -> int:
        return self.weights.size

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))


@dataclass(frozen=True)
class GramResult:
    matrix: np.ndarray
    max_offdiag: float
    diagonal: np.ndarray
    max_diag_error: Optional[float] = None


@dataclass(frozen=True)
class DensityReport:
    distinct: int
    min_gap: float
    max_gap: float


def _reduce(angles: np.ndarray) -> np.ndarray:
    reduced = np.mod(angles, TWO_PI)
    reduced[reduced >= TWO_PI] = 0.0
    return reduced


def _check_trunc(S: int) -> int:
    if int(S) != S or S < 1:
        raise DomainError(f"truncation S={S!r} must be >= 1")
    return int(S)


def truncation_for_tail(eps: Optional[float], ctx: EllipticContext, family: str = "cn") -> int:
    """
    Smallest S whose certified tail is below eps.

    cn: S = ceil(1/2 + log(eps (1-q) kK/(2 pi)) / log q)
    dn: S = ceil(log(eps (1-q) K/(2 pi)) / log q - 1)
    """
    family = check_family(family)
    eps = eps or Config.TAIL_EPS
    q = ctx.nome_q
    if family == "cn":
        S = 0.5 + math.log(eps * (1.0 - q) * ctx.k * ctx.big_K / (2.0 * math.pi)) / math.log(q)
    else:
        S = math.log(eps * (1.0 - q) * ctx.big_K / (2.0 * math.pi)) / math.log(q) - 1.0
    return max(1, math.ceil(S))


def cn_measure(w: float, ctx: EllipticContext, S: int) -> DiscretePointMeasure:
    """
    Measure of the cn family, s = -S+1..S.

    z_s = exp(i pi w (s - 1/2)/K), rho_s = (pi/(kK)) / (q^(s-1/2) + q^(1/2-s)).
    """
    S = _check_trunc(S)
    q = ctx.nome_q
    s = np.arange(-S + 1, S + 1)
    x = np.abs(s - 0.5)
    weights = math.pi / (ctx.k * ctx.big_K) * q ** x / (1.0 + q ** (2.0 * x))
    angles = _reduce(math.pi * w * (s - 0.5) / ctx.big_K)
    tail = 2.0 * math.pi / (ctx.k * ctx.big_K) * q ** (S - 0.5) / (1.0 - q)
    return DiscretePointMeasure(s, angles, weights, S, float(tail), "cn")


def dn_measure(w: float, ctx: EllipticContext, S: int) -> DiscretePointMeasure:
    """Measure of the dn family, |s| <= S: z_s = exp(i pi w s/K), rho_s = (pi/K)/(q^s + q^-s)."""
    S = _check_trunc(S)
    q = ctx.nome_q
    s = np.arange(-S, S + 1)
    x = np.abs(s).astype(float)
    weights = math.pi / ctx.big_K * q ** x / (1.0 + q ** (2.0 * x))
    angles = _reduce(math.pi * w * s / ctx.big_K)
    tail = 2.0 * math.pi / ctx.big_K * q ** (S + 1) / (1.0 - q)
    return DiscretePointMeasure(s, angles, weights, S, float(tail), "dn")


def _shift_by_pi(m: DiscretePointMeasure, label: str) -> DiscretePointMeasure:
    return DiscretePointMeasure(m.indices, _reduce(m.angles + math.pi), m.weights, m.trunc, m.tail_bound, label)


def reflected_cn_measure(w: float, ctx: EllipticContext, S: int) -> DiscretePointMeasure:
    """Points -z_s with the cn weights; carries the reflected-sign cn family."""
    return _shift_by_pi(cn_measure(w, ctx, S), "cn-reflected")


def reflected_dn_measure(w: float, ctx: EllipticContext, S: int) -> DiscretePointMeasure:
    """Points -z_s with the dn weights."""
    return _shift_by_pi(dn_measure(w, ctx, S), "dn-reflected")


def family_measure(family: str, w: float, ctx: EllipticContext, S: int, reflected: bool = False) -> DiscretePointMeasure:
    family = check_family(family)
    if family == "cn":
        return reflected_cn_measure(w, ctx, S) if reflected else cn_measure(w, ctx, S)
    return reflected_dn_measure(w, ctx, S) if reflected else dn_measure(w, ctx, S)


def moment_from_measure(m: DiscretePointMeasure, n: int) -> complex:
    """sum_s rho_s z_s^n; the imaginary part stays within the tail bound."""
    return complex(np.dot(m.weights, np.exp(1j * n * m.angles)))


def gram_check(
    m: DiscretePointMeasure,
    polys: Sequence[MonicCirclePolynomial],
    h: Optional[Sequence[float]] = None
) -> GramResult:
    """
    G_nm = sum_s rho_s Phi_n(z_s) Phi_m(1/z_s).

    For |z_s| = 1 and real coefficients Phi_m(1/z_s) = conj(Phi_m(z_s)).

    Args:
        m: Measure.
        polys: Polynomials to test.
        h: Expected diagonal; compared when given.

    Returns:
        GramResult with the real Gram matrix and its deviations.
    """
    z = m.points
    values = np.array([p(z) for p in polys])
    gram = ((values * m.weights) @ values.conj().T).real

    diagonal = np.diag(gram).copy()
    off = gram - np.diag(diagonal)
    max_offdiag = float(np.max(np.abs(off))) if len(polys) > 1 else 0.0
    diag_error = None
    if h is not None:
        diag_error = float(np.max(np.abs(diagonal - np.asarray(h[: len(polys)], dtype=float))))
    logger.debug(f"Gram check on {len(m)} points: off-diagonal {max_offdiag:.3e}")
    return GramResult(gram, max_offdiag, diagonal, diag_error)


def density_report(m: DiscretePointMeasure) -> DensityReport:
    """Nearest-neighbour angular gaps between distinct spectral points."""
    if len(m) < 2:
        raise DomainError("density report needs at least two points")
    ordered = np.sort(m.angles)
    gaps = np.diff(np.append(ordered, ordered[0] + TWO_PI))
    distinct_gaps = gaps[gaps > ANGLE_TOL]
    if distinct_gaps.size == 0:
        return DensityReport(distinct=1, min_gap=TWO_PI, max_gap=TWO_PI)
    # duplicates merge into the following gap
    merged = []
    acc = 0.0
    for g in gaps:
        acc += g
        if g > ANGLE_TOL:
            merged.append(acc)
            acc = 0.0
    if acc > 0.0 and merged:
        merged[0] += acc
    merged = np.array(merged)
    return DensityReport(distinct=merged.size, min_gap=float(merged.min()), max_gap=float(merged.max()))


def measure_rows(m: DiscretePointMeasure) -> list[dict]:
    return [
        {"s": int(s), "angle": float(a), "weight": float(r)}
        for s, a, r in zip(m.indices, m.angles, m.weights)
    ]


def write_measure(m: DiscretePointMeasure, path: Optional[str | Path] = None, fmt: str = "csv") -> None:
    """Export (s, angle, weight) rows as CSV or JSON."""
    meta = {"family": m.label, "trunc": m.trunc, "tail_bound": m.tail_bound}
    write_rows(measure_rows(m), MEASURE_COLUMNS, path, fmt, meta)
