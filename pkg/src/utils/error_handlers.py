"""Error types and handling utilities for the toolkit."""

import logging
import sys
from functools import wraps
from typing import Any, Callable, Optional, Sequence

logger = logging.getLogger(__name__)


# Default error messages
ERROR_MESSAGES = {
    "general": "Something went wrong. Re-run with --log-level DEBUG for details.",
    "domain": "A parameter is outside its admissible range.",
    "degenerate": "The step parameter w hits a zero of sn; choose a non-lattice w.",
    "finite": "A reflection coefficient reached +-1; this is the finite (polygon) case.",
    "singular": "The Toeplitz system is numerically singular at this degree.",
    "positivity": "Positivity was lost in the moment recursion.",
    "transform": "The Delsarte-Genin transform is undefined for a_(n-1) = 1.",
    "depth": "The continued fraction is too shallow for the requested denominator.",
    "config": "Invalid configuration.",
}


class EllipucError(Exception):
    """Base exception for toolkit errors."""

    def __init__(self, message: str, user_message: str = None):
        super().__init__(message)
        self.user_message = user_message or ERROR_MESSAGES["general"]


class DomainError(EllipucError):
    """Argument outside its admissible domain."""

    def __init__(self, message: str = "Argument out of range"):
        super().__init__(message, f"{ERROR_MESSAGES['domain']} {message}")


class DegeneracyError(EllipucError):
    """A product factor vanishes (sn or sin zero) at the given index."""

    def __init__(self, index: int, message: str = None):
        self.index = index
        message = message or f"Degenerate factor at s = {index}"
        super().__init__(message, f"{ERROR_MESSAGES['degenerate']} ({message})")


class FiniteCaseSignal(EllipucError):
    """A reflection coefficient reached |a_n| = 1."""

    def __init__(self, index: int, value: float = None):
        self.index = index
        self.value = value
        message = f"|a_{index}| = 1 (value {value!r})"
        super().__init__(message, f"{ERROR_MESSAGES['finite']} ({message})")


class NearSingularError(EllipucError):
    """Toeplitz matrix too ill-conditioned for the determinant route."""

    def __init__(self, message: str = "Near-singular Toeplitz matrix"):
        super().__init__(message, ERROR_MESSAGES["singular"])


class PositivityError(EllipucError):
    """Levinson recursion produced h_n <= 0 or |a_n| >= 1."""

    def __init__(self, index: int, message: str = None):
        self.index = index
        message = message or f"Positivity lost at n = {index}"
        super().__init__(message, f"{ERROR_MESSAGES['positivity']} ({message})")


class DegenerateTransformError(EllipucError):
    """Delsarte-Genin normalization 1 - a_(n-1) vanishes."""

    def __init__(self, message: str = "a_(n-1) = 1"):
        super().__init__(message, ERROR_MESSAGES["transform"])


class DepthError(EllipucError):
    """Continued fraction does not reach the requested denominator."""

    def __init__(self, message: str = "Continued fraction too shallow"):
        super().__init__(message, f"{ERROR_MESSAGES['depth']} {message}")


class ConfigError(EllipucError):
    """Invalid run configuration; carries the offending field names."""

    def __init__(self, fields: Sequence[str]):
        self.fields = list(fields)
        message = f"Invalid configuration fields: {', '.join(self.fields)}"
        super().__init__(message, message)


def command_error_wrapper(func: Callable[..., int]) -> Callable[..., int]:
    """
    Decorator to wrap CLI command functions with error handling.

    The wrapped command returns its own exit status; toolkit errors map to 2
    and unexpected errors to 1.

    Usage:
        @command_error_wrapper
        def cmd_table(run: RunConfig) -> int:
            ...
    """
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except EllipucError as e:
            logger.error(f"{type(e).__name__} in {func.__name__}: {e}")
            print(e.user_message, file=sys.stderr)
            return 2
        except Exception as e:
            logger.exception(f"Unexpected error in {func.__name__}: {e}")
            print(ERROR_MESSAGES["general"], file=sys.stderr)
            return 1

    return wrapper


def safe_execute(default: Any = None, on_error: Optional[Callable[[Exception], Any]] = None):
    """
    Decorator for functions that should return a default value on error.

    If on_error is given it is called with the exception and its result is
    returned instead of default.

    Usage:
        @safe_execute(default=[])
        def get_items():
            ...
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                logger.error(f"Error in {func.__name__}: {e}")
                if on_error is not None:
                    return on_error(e)
                return default
        return wrapper
    return decorator
