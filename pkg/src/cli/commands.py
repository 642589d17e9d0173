"""
Command implementations for the ellipuc CLI.

Each command takes the parsed argparse namespace, builds a RunConfig and
returns an exit status: 0 success, 3 a check above tolerance, 2 a domain or
configuration error, 1 anything unexpected.
"""

import argparse
import logging

import numpy as np

from ..circle import family_measure, h_n_family, moments, reflections, toeplitz_dets, truncation_for_tail, write_measure
from ..circle.types import MomentSequence, ReflectionSequence
from ..config import Config
from ..interval import recurrence_table, write_recurrence_table
from ..limits import build_polygon_case, hyp_moments, hyp_reflections, write_polygon
from ..scheme import PeriodicProfile, magnus_profile, scheme_measure, scheme_moments, scheme_reflections
from ..utils.error_handlers import DomainError, command_error_wrapper
from ..utils.export import FORMATS, write_rows
from ..verify import VerifyReport, elliptic_suite, hyperbolic_suite, magnus_suite, profile_suite
from .run_config import ELLIPTIC_FAMILIES, RUN_FAMILIES, RunConfig

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ("n", "a_n", "c_n", "h_n", "Delta_n")

# truncation for profile measures when --trunc is not given
PROFILE_TRUNC = 2000

EXIT_OK = 0
EXIT_CHECK_FAILED = 3


def _scheme_profile(run: RunConfig) -> PeriodicProfile:
    return magnus_profile() if run.family == "magnus" else run.load_profile()


def _moment_data(run: RunConfig, N: int) -> tuple[ReflectionSequence, MomentSequence]:
    """a_0..a_(N-1) and c_0..c_N for the configured family."""
    if run.family in ELLIPTIC_FAMILIES:
        ctx = run.context()
        return reflections(run.family, N, run.w_value, ctx), moments(run.family, N, run.w_value, ctx)
    if run.family == "hyperbolic":
        return hyp_reflections(N, run.w_value), hyp_moments(N, run.w_value)
    profile = _scheme_profile(run)
    return scheme_reflections(profile, run.w_value, N).reflections, scheme_moments(profile, run.w_value, N)


@command_error_wrapper
def cmd_table(args: argparse.Namespace) -> int:
    """Export (n, a_n, c_n, h_n, Delta_n) for n = 0..nmax."""
    run = RunConfig.from_args(args)
    a, c = _moment_data(run, run.n_max + 1)
    h = np.cumprod(np.concatenate(([c.at(0)], 1.0 - a.values[: run.n_max] ** 2)))
    if run.family in ELLIPTIC_FAMILIES:
        ctx = run.context()
        h = np.array([h_n_family(run.family, n, run.w_value, ctx) for n in range(run.n_max + 1)])
    dets = toeplitz_dets(c, run.n_max)

    rows = []
    for n in range(run.n_max + 1):
        rows.append({
            "n": n,
            "a_n": float(a[n]),
            "c_n": c.at(n),
            "h_n": float(h[n]),
            "Delta_n": 1.0 if n == 0 else float(dets.values[n - 1]),
        })
    write_rows(rows, TABLE_COLUMNS, run.out, run.fmt, {"command": "table", "config": run.summary()})
    return EXIT_OK


@command_error_wrapper
def cmd_verify(args: argparse.Namespace) -> int:
    """Run the family's invariant suite and write the report; 3 if any check fails."""
    run = RunConfig.from_args(args)
    report = VerifyReport(family=run.family, config=run.summary())

    if run.family in ELLIPTIC_FAMILIES:
        elliptic_suite(
            report, run.family, run.context(), run.w_value, run.n_max, run.tol,
            S=run.trunc, tail=run.tail, seed=run.seed, fault=run.inject_fault,
        )
    elif run.family == "hyperbolic":
        hyperbolic_suite(report, run.w_value, run.n_max, run.tol, fault=run.inject_fault)
    elif run.family == "magnus":
        magnus_suite(report, run.w, run.n_max, run.tol, run.trunc or PROFILE_TRUNC)
    else:
        profile_suite(report, run.load_profile(), run.w_value, run.n_max, run.tol, run.trunc or PROFILE_TRUNC)

    report.write(run.out, run.fmt)
    if not report.passed:
        names = ", ".join(c.name for c in report.failed)
        logger.error(f"verify failed: {names}")
        return EXIT_CHECK_FAILED
    logger.info(f"verify passed: {len(report.checks)} checks")
    return EXIT_OK


@command_error_wrapper
def cmd_measure(args: argparse.Namespace) -> int:
    """Export the truncated spectral measure (s, angle, weight)."""
    run = RunConfig.from_args(args)
    if run.family in ELLIPTIC_FAMILIES:
        ctx = run.context()
        S = run.trunc or truncation_for_tail(run.tail, ctx, run.family)
        measure = family_measure(run.family, run.w_value, ctx, S)
    elif run.family == "hyperbolic":
        raise DomainError("the hyperbolic weight is continuous; use `table` or `verify`")
    else:
        measure = scheme_measure(_scheme_profile(run), run.w_value, run.trunc or PROFILE_TRUNC)
    write_measure(measure, run.out, run.fmt)
    return EXIT_OK


@command_error_wrapper
def cmd_dgt(args: argparse.Namespace) -> int:
    """Export the interval recurrence table (n, v_n, kappa_n, u_n, b_n, H_n)."""
    run = RunConfig.from_args(args)
    a, _ = _moment_data(run, run.n_max)
    write_recurrence_table(recurrence_table(a, run.n_max), run.out, run.fmt, {"command": "dgt", "config": run.summary()})
    return EXIT_OK


@command_error_wrapper
def cmd_polygon(args: argparse.Namespace) -> int:
    """Export the finite cn system on the regular 2N-gon."""
    run = RunConfig.from_args(args)
    case = build_polygon_case(run.polygon_N, run.context(), run.polygon_M)
    if case.closure_residual > run.tol:
        logger.warning(f"Phi_2N differs from z^2N + 1 by {case.closure_residual:.3e}")
    write_polygon(case, run.out, run.fmt)
    return EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "measure": cmd_measure,
    "dgt": cmd_dgt,
    "polygon": cmd_polygon,
}


def _add_shared_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=RUN_FAMILIES, default=None, help="polynomial family (default cn)")
    parser.add_argument("--k", type=float, default=None, help=f"elliptic modulus (default {Config.DEFAULT_K})")
    parser.add_argument("--w", type=str, default=None, help="step parameter as a decimal string")
    parser.add_argument("--nmax", type=int, default=12, help="highest degree")
    parser.add_argument("--trunc", type=int, default=None, help="measure truncation S")
    parser.add_argument("--tail", type=float, default=None, help=f"measure tail target (default {Config.TAIL_EPS})")
    parser.add_argument("--tol", type=float, default=None, help=f"check tolerance (default {Config.TOLERANCE})")
    parser.add_argument("--out", type=str, default=None, help="output file (stdout when omitted or '-')")
    parser.add_argument("--format", choices=FORMATS, default=None, help="csv or json")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--polygon-N", dest="polygon_N", type=int, default=4, help="polygon half-size N")
    parser.add_argument("--polygon-M", dest="polygon_M", type=int, default=1, help="odd M co-prime with N")
    parser.add_argument("--profile", type=str, default=None, help="JSON profile for the general scheme")
    parser.add_argument("--inject-fault", dest="inject_fault", action="store_true", help="perturb a_1 and merge two measure points before checks")
    parser.add_argument("--log-level", dest="log_level", type=str, default=None, help="override ELLIPUC_LOG_LEVEL")


def register_commands(subparsers) -> None:
    """Register every command with the shared flags."""
    for name, func in COMMANDS.items():
        sub = subparsers.add_parser(name, help=func.__doc__.splitlines()[0])
        _add_shared_flags(sub)
        sub.set_defaults(handler=func)
