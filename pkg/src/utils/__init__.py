# Utility functions
from .logging_config import setup_logging
from .error_handlers import (
    ERROR_MESSAGES,
    EllipucError,
    DomainError,
    DegeneracyError,
    FiniteCaseSignal,
    NearSingularError,
    PositivityError,
    DegenerateTransformError,
    DepthError,
    ConfigError,
    command_error_wrapper,
    safe_execute,
)
from .export import FORMATS, render_rows, write_rows, write_text
