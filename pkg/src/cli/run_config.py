"""Run configuration assembled from command-line flags."""

import argparse
import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from ..config import Config
from ..elliptic import EllipticContext, make_context
from ..scheme import PeriodicProfile, load_profile, parse_real
from ..utils.error_handlers import ConfigError, DomainError

logger = logging.getLogger(__name__)

RUN_FAMILIES = ("cn", "dn", "hyperbolic", "magnus", "profile")
ELLIPTIC_FAMILIES = ("cn", "dn")

# (sqrt(5) - 1)/2, default step for the Magnus family
GOLDEN_CONJUGATE = "0.618033988749894848204586834365638117720309179805762862135448622705"


@dataclass
class RunConfig:
    """Validated settings shared by all commands."""
    command: str
    family: str = "cn"
    k: float = 0.6
    w: str = "0.31"
    n_max: int = 12
    trunc: Optional[int] = None
    tail: Optional[float] = None
    tol: float = 1e-9
    out: Optional[str] = None
    fmt: str = "csv"
    seed: int = 0
    polygon_N: int = 4
    polygon_M: int = 1
    profile: Optional[str] = None
    inject_fault: bool = False
    w_exact: Fraction = field(default=Fraction(0), repr=False, compare=False)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Build and validate; raises ConfigError naming every bad field."""
        family = args.family or ("profile" if args.profile else "cn")
        w = args.w or (GOLDEN_CONJUGATE if family == "magnus" else Config.DEFAULT_W)
        run = cls(
            command=args.command,
            family=family,
            k=Config.DEFAULT_K if args.k is None else args.k,
            w=str(w),
            n_max=args.nmax,
            trunc=args.trunc,
            tail=args.tail,
            tol=Config.TOLERANCE if args.tol is None else args.tol,
            out=args.out,
            fmt=args.format or ("json" if args.command == "verify" else "csv"),
            seed=args.seed,
            polygon_N=args.polygon_N,
            polygon_M=args.polygon_M,
            profile=args.profile,
            inject_fault=args.inject_fault,
        )
        run.validate()
        return run

    def validate(self) -> None:
        invalid = []
        if self.family not in RUN_FAMILIES:
            invalid.append("family")
        if self.family in ELLIPTIC_FAMILIES and not (math.isfinite(self.k) and 0.0 < self.k < 1.0):
            invalid.append("k")
        try:
            self.w_exact = parse_real(self.w)
            if self.w_exact <= 0:
                invalid.append("w")
        except DomainError:
            invalid.append("w")
        if self.n_max < 2:
            invalid.append("nmax")
        if self.trunc is not None and self.trunc < 1:
            invalid.append("trunc")
        if self.tail is not None and not self.tail > 0.0:
            invalid.append("tail")
        if not self.tol > 0.0:
            invalid.append("tol")
        if self.polygon_N < 1:
            invalid.append("polygon-N")
        if self.polygon_M < 1 or self.polygon_M % 2 == 0:
            invalid.append("polygon-M")
        if self.family == "profile" and not self.profile:
            invalid.append("profile")
        if invalid:
            raise ConfigError(invalid)

    @property
    def w_value(self) -> float:
        return float(self.w_exact)

    def context(self) -> EllipticContext:
        if self.family not in ELLIPTIC_FAMILIES and self.command != "polygon":
            raise DomainError(f"family '{self.family}' has no elliptic modulus")
        return make_context(self.k)

    def load_profile(self) -> PeriodicProfile:
        return load_profile(self.profile)

    def summary(self) -> dict:
        """Settings echoed into exported documents (no timestamps)."""
        data = asdict(self)
        data.pop("w_exact")
        data.pop("out")
        if self.family not in ELLIPTIC_FAMILIES:
            data.pop("k")
        return data
