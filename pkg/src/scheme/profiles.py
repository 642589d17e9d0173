"""
Moments c_n = f(wn) from an even periodic profile with nonnegative Fourier data.

f(x) = sum_n A_n exp(2 pi i n x / T) with A_(-n) = A_n >= 0 and sum A_n = 1.
For w/T irrational the moments belong to the point measure
z_s = exp(2 pi i w s / T), rho_s = A_s, which is positive and dense.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from ..circle.measures import DiscretePointMeasure, TWO_PI
from ..circle.toeplitz import LevinsonResult, levinson_reflections
from ..circle.types import MomentSequence
from ..config import Config
from ..elliptic.kernel import EllipticContext, jacobi_cn, jacobi_dn, make_context
from ..elliptic.binomial import LATTICE_TOL
from ..utils.error_handlers import DomainError

logger = logging.getLogger(__name__)

BUILTIN_PROFILES = ("cn", "dn", "magnus")

# sum A_n must equal 1 to this accuracy
NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class PeriodicProfile:
    """
    Even periodic profile given by its Fourier data.

    Attributes:
        name: Label ('cn', 'dn', 'magnus' or a custom name).
        period: Period T > 0.
        coefficient: n -> A_n for n >= 0.
        tail: S -> upper bound on sum_(|n| > S) A_n.
        closed_form: Exact evaluator of f, if known.
        support: Largest n with A_n > 0 for finitely supported profiles.
    """
    name: str
    period: float
    coefficient: Callable[[int], float]
    tail: Callable[[int], float]
    closed_form: Optional[Callable] = field(default=None, repr=False)
    support: Optional[int] = None

    def fourier(self, S: int) -> np.ndarray:
        """A_0..A_S."""
        return np.array([self.coefficient(n) for n in range(S + 1)], dtype=float)

    def fourier_sum(self, x, S: int):
        """Partial sum A_0 + 2 sum_(n<=S) A_n cos(2 pi n x / T)."""
        A = self.fourier(S)
        x = np.asarray(x, dtype=float)
        n = np.arange(1, S + 1, dtype=float)
        phase = TWO_PI / self.period * np.multiply.outer(x, n)
        return A[0] + 2.0 * np.cos(phase) @ A[1:]

    def __call__(self, x):
        if self.closed_form is not None:
            return self.closed_form(x)
        if self.support is None:
            raise DomainError(f"profile '{self.name}' has neither a closed form nor finite support")
        return self.fourier_sum(x, self.support)


def cn_profile(ctx: EllipticContext) -> PeriodicProfile:
    """cn(x; k): T = 4K, A_n = (pi/(kK)) q^(n/2)/(1 + q^n) for odd n."""
    q = ctx.nome_q
    scale = math.pi / (ctx.k * ctx.big_K)

    def coefficient(n: int) -> float:
        n = abs(n)
        return scale * q ** (n / 2.0) / (1.0 + q ** n) if n % 2 else 0.0

    def tail(S: int) -> float:
        return 2.0 * scale * q ** ((S + 1) / 2.0) / (1.0 - math.sqrt(q))

    return PeriodicProfile("cn", 4.0 * ctx.big_K, coefficient, tail, lambda x: jacobi_cn(x, ctx))


def dn_profile(ctx: EllipticContext) -> PeriodicProfile:
    """dn(x; k): T = 2K, A_0 = pi/(2K), A_n = (pi/K) q^n/(1 + q^2n)."""
    q = ctx.nome_q
    scale = math.pi / ctx.big_K

    def coefficient(n: int) -> float:
        n = abs(n)
        return scale * q ** n / (1.0 + q ** (2 * n))

    def tail(S: int) -> float:
        return 2.0 * scale * q ** (S + 1) / (1.0 - q)

    return PeriodicProfile("dn", 2.0 * ctx.big_K, coefficient, tail, lambda x: jacobi_dn(x, ctx))


def magnus_evaluator(x):
    """f(x) = 1 - 2 dist(x, 2Z): the 2-periodic extension of 1 - 2|x| on [-1, 1]."""
    x = np.asarray(x, dtype=float)
    distance = np.abs(x - 2.0 * np.round(x / 2.0))
    result = 1.0 - 2.0 * distance
    return float(result) if result.ndim == 0 else result


def magnus_profile() -> PeriodicProfile:
    """Sawtooth profile: T = 2, A_n = 4/(pi^2 n^2) for odd n, 0 for even n."""

    def coefficient(n: int) -> float:
        n = abs(n)
        return 4.0 / (math.pi ** 2 * n * n) if n % 2 else 0.0

    def tail(S: int) -> float:
        # 2 sum_(odd s > S) 4/(pi^2 s^2) <= 4/(pi^2 (S - 1))
        return 4.0 / (math.pi ** 2 * (S - 1)) if S > 1 else 1.0

    return PeriodicProfile("magnus", 2.0, coefficient, tail, magnus_evaluator)


def _finite_profile(name: str, period: float, pairs) -> PeriodicProfile:
    table: dict[int, float] = {}
    for entry in pairs:
        n, value = int(entry[0]), float(entry[1])
        if not math.isfinite(value) or value < 0.0:
            raise DomainError(f"Fourier coefficient A_{n} = {value!r} must be finite and nonnegative")
        n = abs(n)
        if n in table and table[n] != value:
            raise DomainError(f"conflicting values for A_{n}")
        table[n] = value
    if not table:
        raise DomainError("profile has no Fourier coefficients")

    total = table.get(0, 0.0) + 2.0 * sum(v for n, v in table.items() if n > 0)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise DomainError(f"Fourier coefficients sum to {total!r}; f(0) must equal 1")
    positive = [n for n, v in table.items() if v > 0.0]
    if len(positive) < 2:
        logger.warning(f"profile '{name}' has fewer than two positive coefficients; Toeplitz determinants degenerate")
    support = max(table)

    def coefficient(n: int) -> float:
        return table.get(abs(n), 0.0)

    def tail(S: int) -> float:
        return 2.0 * sum(v for n, v in table.items() if n > S)

    return PeriodicProfile(name, period, coefficient, tail, None, support)


def load_profile(path: str | Path) -> PeriodicProfile:
    """
    Load a profile from JSON.

    Accepted documents:
        {"closed_form": "magnus"}
        {"closed_form": "cn" | "dn", "k": 0.6}
        {"name": "...", "period": 2.0, "coefficients": [[0, 0.5], [1, 0.25]]}

    Raises:
        DomainError: On unreadable JSON or invalid profile data.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to read profile {path}: {e}")
        raise DomainError(f"cannot read profile {path}: {e}") from e

    tag = data.get("closed_form")
    if tag is not None:
        if tag not in BUILTIN_PROFILES:
            raise DomainError(f"Unknown closed form '{tag}' (expected one of {BUILTIN_PROFILES})")
        if tag == "magnus":
            return magnus_profile()
        if "k" not in data:
            raise DomainError(f"closed form '{tag}' needs a modulus 'k'")
        ctx = make_context(float(data["k"]))
        return cn_profile(ctx) if tag == "cn" else dn_profile(ctx)

    try:
        period = float(data["period"])
        pairs = data["coefficients"]
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError(f"profile {path} needs 'period' and 'coefficients': {e}") from e
    if not (math.isfinite(period) and period > 0.0):
        raise DomainError(f"period {period!r} must be positive")
    return _finite_profile(data.get("name", path.stem), period, pairs)


def is_resonant(w: float, T: float, bound: Optional[int] = None) -> Optional[Fraction]:
    """
    Return p/q if w/T equals a rational with denominator <= bound, else None.

    On resonance the grid exp(2 pi i w s/T) is finite and the measure is
    supported on finitely many points.
    """
    bound = bound or Config.RATIONAL_BOUND
    x = w / T
    candidate = Fraction(x).limit_denominator(bound)
    if abs(candidate.denominator * x - candidate.numerator) <= LATTICE_TOL:
        return candidate
    return None


def scheme_moments(profile: PeriodicProfile, w: float, n_max: int, bound: Optional[int] = None) -> MomentSequence:
    """
    c_n = f(wn), n = 0..n_max.

    A resonant w is not an error: the moments are returned with the flag
    'resonant' and a warning, since the measure then has finite support.
    """
    if not (math.isfinite(w) and w > 0.0):
        raise DomainError(f"w={w!r} must be positive")
    if n_max < 0:
        raise DomainError(f"n_max={n_max} must be >= 0")
    values = np.asarray(profile(w * np.arange(n_max + 1, dtype=float)), dtype=float).reshape(-1)
    flags = ()
    hit = is_resonant(w, profile.period, bound)
    if hit is not None:
        logger.warning(f"w/T = {hit} for profile '{profile.name}': finite spectrum, moments may be degenerate")
        flags = ("resonant",)
    return MomentSequence(values, flags)


def scheme_measure(profile: PeriodicProfile, w: float, S: int) -> DiscretePointMeasure:
    """Points exp(2 pi i w s/T), weights A_s, |s| <= S, tail bound sum_(|s|>S) A_s."""
    if int(S) != S or S < 1:
        raise DomainError(f"truncation S={S!r} must be >= 1")
    S = int(S)
    s = np.arange(-S, S + 1)
    weights = np.array([profile.coefficient(int(i)) for i in s], dtype=float)
    angles = np.mod(TWO_PI * w * s / profile.period, TWO_PI)
    angles[angles >= TWO_PI] = 0.0
    return DiscretePointMeasure(s, angles, weights, S, float(profile.tail(S)), profile.name)


def scheme_reflections(profile: PeriodicProfile, w: float, N: int) -> LevinsonResult:
    """a_0..a_(N-1) and h_0..h_N of the profile's moment functional by Levinson recursion."""
    return levinson_reflections(scheme_moments(profile, w, N), N)
