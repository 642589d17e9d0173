"""Value types shared by the unit-circle constructions."""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

from ..utils.error_handlers import DomainError, FiniteCaseSignal

logger = logging.getLogger(__name__)

# |a_n| within this of 1 counts as the terminal value of a finite measure
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class MonicCirclePolynomial:
    """Monic real polynomial, coefficients W_(n,0..n) in ascending order."""
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if coeffs.size == 0:
            raise DomainError("polynomial needs at least one coefficient")
        if abs(coeffs[-1] - 1.0) > 1e-9:
            raise DomainError(f"leading coefficient {coeffs[-1]!r} is not 1")
        coeffs = coeffs.copy()
        coeffs[-1] = 1.0
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def reversed_coeffs(self) -> np.ndarray:
        """Coefficients of z^n * Phi(1/z) (real case, no conjugation)."""
        return self.coeffs[::-1].copy()

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)


@dataclass(frozen=True)
class ReflectionSequence:
    """Reflection parameters a_0..a_(N-1); a terminal +-1 only when finite."""
    values: np.ndarray
    finite: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1).copy()
        inner = values[:-1] if self.finite else values
        if not np.all(np.isfinite(values)):
            raise DomainError("reflection parameters must be finite")
        bad = np.flatnonzero(np.abs(inner) >= 1.0)
        if bad.size:
            raise FiniteCaseSignal(int(bad[0]), float(inner[bad[0]]))
        if self.finite and values.size and abs(abs(values[-1]) - 1.0) > UNIT_TOL:
            raise DomainError(f"terminal reflection {values[-1]!r} is not +-1")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True)
class MomentSequence:
    """Moments c_0..c_N of a real functional; c_(-n) = c_n is implied."""
    values: np.ndarray
    flags: tuple = field(default=())
    # mpmath copies of the values, filled when Config.PRECISION > 0
    extended: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1).copy()
        if values.size == 0 or not np.all(np.isfinite(values)):
            raise DomainError("moment sequence must be non-empty and finite")
        if values[0] <= 0.0:
            raise DomainError(f"c_0 = {values[0]!r} must be positive")
        if self.extended and len(self.extended) != values.size:
            raise DomainError(f"{len(self.extended)} extended moments for {values.size} values")
        object.__setattr__(self, "extended", tuple(self.extended))
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def at(self, n: int) -> float:
        return float(self.values[abs(n)])


PolynomialLike = Union[MonicCirclePolynomial, Polynomial, Sequence[float], np.ndarray]


def coefficients_of(p: PolynomialLike) -> np.ndarray:
    """Ascending coefficients of any supported polynomial representation."""
    if isinstance(p, MonicCirclePolynomial):
        return p.coeffs.copy()
    if isinstance(p, Polynomial):
        return np.asarray(p.coef, dtype=float).copy()
    return np.asarray(p, dtype=float).reshape(-1).copy()
