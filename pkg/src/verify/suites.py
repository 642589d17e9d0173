"""
Invariant suites run by `verify`, one per family.

Every check is isolated: an exception inside one is recorded as a failed
check and the rest of the suite still runs.
"""

import logging
from dataclasses import replace
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import Polynomial

from ..circle import (
    DiscretePointMeasure,
    density_report,
    explicit_family,
    explicit_poly,
    family_measure,
    family_values_at_pm1,
    gram_check,
    h_n_family,
    levinson_reflections,
    moment_from_measure,
    moments,
    reflect_sign,
    reflected_moments,
    reflected_reflections,
    reflections,
    szego_family,
    three_term_check,
    toeplitz_dets,
    truncation_for_tail,
    value_at_pm1,
)
from ..circle.types import ReflectionSequence
from ..config import Config
from ..elliptic import (
    EllipticContext,
    fourier_oracle_cn,
    fourier_oracle_dn,
    jacobi_cn,
    jacobi_dn,
    lattice_fraction,
    make_params,
    solve_k_from_w,
    verify_ebc_recurrences,
)
from ..elliptic.derivative import E_via_W_expansion, elliptic_numbers, verify_intertwining, verify_square_relation
from ..interval import (
    askey_wilson_limit_check,
    dgt_family,
    interval_gram,
    split_PQ_recurrences,
    symmetric_recurrence_residual,
    v_coeffs,
)
from ..limits import (
    PolygonCase,
    build_polygon_case,
    finite_moment_check,
    hyp_moments,
    hyp_poly,
    hyp_reflections,
    hyp_weight,
    quadrature_moments,
    residue_weights,
)
from ..scheme import (
    PeriodicProfile,
    best_approximations,
    brute_force_best_approximations,
    continued_fraction,
    magnus_profile,
    magnus_sparsity_check,
    scheme_measure,
    scheme_moments,
)
from ..utils.error_handlers import safe_execute
from .report import CheckResult, VerifyReport

logger = logging.getLogger(__name__)

# Moment-based routes lose eps/h_n per degree; beyond these degrees the
# default tolerance is out of reach in double precision; Config.PRECISION > 0
# lifts the Levinson cap
LEVINSON_MAX = 10
GRAM_MAX = 16
INTERVAL_GRAM_MAX = 12
BRUTE_FORCE_MAX = 200
ORACLE_TERMS = 64
EXPANSION_TERMS = 24
POLYGON_N = 4
FAULT_SIZE = 1e-6


def _run(report: VerifyReport, name: str, tol: float, check: Callable[[], float], note: str = "") -> None:
    """Evaluate check() -> residual and record it; exceptions become failed checks."""

    @safe_execute(on_error=lambda e: CheckResult.from_error(name, tol, e))
    def run() -> CheckResult:
        return CheckResult.from_residual(name, check(), tol, note)

    report.add(run())


def _levinson_degree(n_max: int) -> int:
    return n_max if Config.PRECISION > 0 else min(n_max, LEVINSON_MAX)


def inject_fault(a: ReflectionSequence) -> ReflectionSequence:
    """Perturb a_1 by FAULT_SIZE; used to confirm that checks can fail."""
    values = a.values.copy()
    values[1] += FAULT_SIZE
    logger.warning(f"fault injected: a_1 shifted by {FAULT_SIZE}")
    return ReflectionSequence(values, finite=a.finite)


def inject_measure_fault(m: DiscretePointMeasure) -> DiscretePointMeasure:
    """Move point 1 onto point 0 so two spectral points coincide."""
    angles = m.angles.copy()
    angles[1] = angles[0]
    logger.warning("fault injected: measure point 1 merged into point 0")
    return replace(m, angles=angles)


def _polygon_case(ctx: EllipticContext, fault: bool) -> PolygonCase:
    """Polygon system at w = K/POLYGON_N, rebuilt from a perturbed a_1 under fault."""
    case = build_polygon_case(POLYGON_N, ctx)
    if not fault:
        return case
    a = inject_fault(case.reflections)
    h = np.cumprod(np.concatenate(([1.0], 1.0 - a.values[:-1] ** 2)))
    return replace(case, reflections=a, polys=tuple(szego_family(a, 2 * POLYGON_N)), h=h)



def _max_coeff_diff(left, right) -> float:
    return max(float(np.max(np.abs(p.coeffs - q.coeffs))) for p, q in zip(left, right))


def elliptic_suite(
    report: VerifyReport,
    family: str,
    ctx: EllipticContext,
    w: float,
    n_max: int,
    tol: float,
    S: Optional[int] = None,
    tail: Optional[float] = None,
    seed: int = 0,
    fault: bool = False,
) -> VerifyReport:
    """cn or dn family: kernel, EBC, polynomials, measure, derivative, polygon and interval checks."""
    a = reflections(family, n_max + 1, w, ctx)
    checked_a = inject_fault(a) if fault else a
    polys = explicit_family(family, n_max, w, ctx)
    S = S or truncation_for_tail(tail, ctx, family)
    measure = family_measure(family, w, ctx, S)

    def oracle() -> float:
        u = np.linspace(-2.0 * ctx.big_K, 2.0 * ctx.big_K, 41)
        exact = jacobi_cn(u, ctx) if family == "cn" else jacobi_dn(u, ctx)
        series = (fourier_oracle_cn if family == "cn" else fourier_oracle_dn)(u, ctx, ORACLE_TERMS, precision=0)
        return float(np.max(np.abs(exact - series.value)))

    def levinson() -> float:
        n = _levinson_degree(n_max)
        result = levinson_reflections(moments(family, n, w, ctx), n)
        return float(np.max(np.abs(result.reflections.values - a.values[:n])))

    def positivity() -> float:
        dets = toeplitz_dets(moments(family, n_max, w, ctx), n_max)
        return 0.0 if dets.positive else 1.0

    def norms() -> float:
        h = np.cumprod(np.concatenate(([1.0], 1.0 - a.values[:n_max] ** 2)))
        return max(abs(h_n_family(family, n, w, ctx) - h[n]) for n in range(n_max + 1))

    def gram() -> float:
        n = min(n_max, GRAM_MAX)
        h = [h_n_family(family, m, w, ctx) for m in range(n + 1)]
        result = gram_check(measure, polys[: n + 1], h)
        return max(result.max_offdiag, result.max_diag_error)

    def measure_moments() -> float:
        c = moments(family, n_max, w, ctx)
        return max(abs(moment_from_measure(measure, n) - c.at(n)) for n in range(n_max + 1))

    def pm1() -> float:
        worst = 0.0
        for n in range(n_max + 1):
            left, right = value_at_pm1(a, n), family_values_at_pm1(family, n, w, ctx)
            worst = max(worst, abs(left[0] - right[0]), abs(left[1] - right[1]))
        return worst

    def split_routes() -> float:
        rng = np.random.default_rng(seed)
        samples = [a, ReflectionSequence(rng.uniform(-1.0, 1.0, 20))]
        worst = 0.0
        for sample in samples:
            direct, via_v = split_PQ_recurrences(sample, "direct"), split_PQ_recurrences(sample, "v")
            for x, y in ((direct[0], via_v[0]), (direct[1], via_v[1])):
                worst = max(worst, float(np.max(np.abs(x.u - y.u))), float(np.max(np.abs(x.b - y.b))))
        return worst

    def interval() -> float:
        n = min(n_max, INTERVAL_GRAM_MAX)
        return interval_gram(polys[: n + 1], a, measure).max_error

    def polygon_closure() -> float:
        case = _polygon_case(ctx, fault)
        target = np.zeros(2 * POLYGON_N + 1)
        target[0] = target[-1] = 1.0
        return float(np.max(np.abs(case.polys[-1].coeffs - target)))

    def polygon_residues() -> float:
        case = _polygon_case(ctx, fault)
        residues = float(np.max(np.abs(residue_weights(case) - case.weights)))
        return max(residues, max(finite_moment_check(case, n) for n in range(2 * POLYGON_N)))

    def square_relation() -> float:
        own = {family: szego_family(checked_a, n_max)} if fault else None
        return verify_square_relation(n_max, w, ctx, own).max_residual

    def expansion() -> float:
        params = make_params(w, ctx, check_lattice=False)
        phi = szego_family(checked_a, n_max)[n_max] if fault else polys[n_max]
        result = E_via_W_expansion(phi, params, EXPANSION_TERMS)
        other = "dn" if family == "cn" else "cn"
        target = elliptic_numbers(n_max, params)[n_max] * explicit_poly(other, n_max - 1, w, ctx).coeffs
        error = float(np.max(np.abs((result.polynomial - Polynomial(target)).coef)))
        return max(0.0, error - result.tail_bound)

    def reflected() -> float:
        mirrored = szego_family(reflected_reflections(checked_a), n_max)
        coeffs = _max_coeff_diff(mirrored, [reflect_sign(p) for p in polys])
        c = reflected_moments(moments(family, n_max, w, ctx))
        m = family_measure(family, w, ctx, S, reflected=True)
        return max(coeffs, max(abs(moment_from_measure(m, n) - c.at(n)) for n in range(n_max + 1)))

    def density() -> float:
        m = inject_measure_fault(measure) if fault else measure
        result = density_report(m)
        logger.debug(f"density at S={S}: {result.distinct} points, gaps {result.min_gap:.3e}..{result.max_gap:.3e}")
        if lattice_fraction(w, ctx) is not None:
            return 0.0
        return float(len(m) - result.distinct)

    _run(report, "fourier_oracle", tol, oracle)
    _run(report, "ebc_recurrences", tol, lambda: verify_ebc_recurrences(n_max, make_params(w, ctx)).max_residual)
    _run(report, "szego_vs_explicit", tol, lambda: _max_coeff_diff(szego_family(a, n_max), polys))
    _run(report, "three_term_check", tol, lambda: three_term_check(checked_a, n_max, polys).max_residual)
    _run(report, "levinson_reflections", tol, levinson, f"n <= {_levinson_degree(n_max)}")
    _run(report, "toeplitz_positivity", tol, positivity)
    _run(report, "norms", tol, norms)
    _run(report, "measure_gram", tol, gram, f"S = {S}, n <= {min(n_max, GRAM_MAX)}")
    _run(report, "measure_moments", tol, measure_moments, f"tail bound {measure.tail_bound:.3e}")
    _run(report, "values_at_pm1", tol, pm1)
    _run(report, "elliptic_derivative", tol, lambda: verify_intertwining(n_max, w, ctx).max_residual)
    _run(report, "elliptic_derivative_square", tol, square_relation)
    _run(report, "expansion_via_W", tol, expansion, f"{EXPANSION_TERMS} terms")
    _run(report, "reflected_family", tol, reflected)
    _run(report, "polygon_closure", tol, polygon_closure, f"N = {POLYGON_N}")
    _run(report, "polygon_residues", tol, polygon_residues, f"N = {POLYGON_N}")
    _run(report, "measure_density", 0.0, density, f"S = {S}")
    _run(report, "dgt_recurrence", tol, lambda: symmetric_recurrence_residual(dgt_family(polys, a), v_coeffs(a, n_max)))
    _run(report, "split_routes", tol, split_routes, f"seed {seed}")
    _run(report, "interval_gram", tol, interval, f"n <= {min(n_max, INTERVAL_GRAM_MAX)}")
    return report


def hyperbolic_suite(report: VerifyReport, w: float, n_max: int, tol: float, fault: bool = False) -> VerifyReport:
    """k -> 1 limit: basic hypergeometric polynomials, weight moments and Askey-Wilson data."""
    a = hyp_reflections(n_max + 1, w)
    checked_a = inject_fault(a) if fault else a
    polys = [hyp_poly(n, w) for n in range(n_max + 1)]
    ctx = solve_k_from_w(w)

    def levinson() -> float:
        n = _levinson_degree(n_max)
        result = levinson_reflections(hyp_moments(n, w), n)
        return float(np.max(np.abs(result.reflections.values - a.values[:n])))

    def weight_moments() -> float:
        computed = quadrature_moments(lambda t: hyp_weight(t, w, ctx), n_max)
        return float(np.max(np.abs(computed - hyp_moments(n_max, w).values)))

    def askey_wilson() -> float:
        result = askey_wilson_limit_check(w)
        offset = abs(result.ratio_max - result.expected_ratio) / result.expected_ratio
        return max(result.u_residual, result.b_residual, result.ratio_spread, offset)

    _run(report, "hyp_poly_vs_szego", tol, lambda: _max_coeff_diff(szego_family(a, n_max), polys))
    _run(report, "three_term_check", tol, lambda: three_term_check(checked_a, n_max, polys).max_residual)
    _run(report, "levinson_reflections", tol, levinson, f"n <= {_levinson_degree(n_max)}")
    _run(report, "weight_moments", tol, weight_moments)
    _run(report, "askey_wilson_limit", tol, askey_wilson)
    return report


def _profile_checks(report: VerifyReport, profile: PeriodicProfile, w: float, n_max: int, tol: float, S: int) -> None:
    c = scheme_moments(profile, w, n_max)

    def positivity() -> float:
        return 0.0 if toeplitz_dets(c, n_max).positive else 1.0

    def measure_moments() -> float:
        m = scheme_measure(profile, w, S)
        return max(abs(moment_from_measure(m, n).real - c.at(n)) for n in range(n_max + 1))

    m_tail = profile.tail(S)
    _run(report, "toeplitz_positivity", tol, positivity, ",".join(c.flags))
    _run(report, "measure_moments", max(tol, m_tail), measure_moments, f"S = {S}, tail bound {m_tail:.3e}")


def magnus_suite(report: VerifyReport, w_text: str, n_max: int, tol: float, S: int = 2000) -> VerifyReport:
    """Sawtooth profile: Fourier data, best approximations and sparsity of Phi_n."""
    profile = magnus_profile()
    w = float(w_text)

    def fourier() -> float:
        x = np.linspace(-1.0, 1.0, 41)
        return float(np.max(np.abs(profile.fourier_sum(x, S) - profile(x))))

    def approximations() -> float:
        n = min(max(n_max, 50), BRUTE_FORCE_MAX)
        cf = continued_fraction(w_text)
        fast = best_approximations(cf, n)
        slow = brute_force_best_approximations(w_text, n)
        return float(sum(1 for x, y in zip(fast, slow) if x[:2] != y[:2]))

    def sparsity() -> float:
        failures = 0
        for n in range(1, n_max + 1):
            result = magnus_sparsity_check(w_text, n)
            if not result.passed or result.inconclusive:
                logger.error(f"Magnus Phi_{n}: offsets {result.offsets}, predicted {result.predicted}")
                failures += 1
        return float(failures)

    _run(report, "magnus_fourier", profile.tail(S), fourier, f"{S} terms")
    _run(report, "best_approximations", 0.0, approximations)
    _run(report, "magnus_sparsity", 0.0, sparsity, f"n <= {n_max}")
    _profile_checks(report, profile, w, n_max, tol, S)
    return report


def profile_suite(report: VerifyReport, profile: PeriodicProfile, w: float, n_max: int, tol: float, S: int = 2000) -> VerifyReport:
    """Custom profile: positivity of the Toeplitz determinants and measure reconstruction."""
    if profile.support is not None:
        S = min(S, profile.support)
    _profile_checks(report, profile, w, n_max, tol, max(S, 1))
    return report

