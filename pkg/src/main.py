"""Main entry point for the ellipuc toolkit."""

import argparse
import logging
import sys
from typing import Optional, Sequence

from .cli import register_commands
from .config import Config
from .utils.logging_config import setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellipuc",
        description="Orthogonal polynomials on the unit circle from elliptic functions.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse flags, configure logging and run one command; returns the exit status."""
    args = build_parser().parse_args(argv)

    level_name = (args.log_level or Config.LOG_LEVEL).upper()
    level = logging.getLevelName(level_name)
    setup_logging(log_level=level if isinstance(level, int) else logging.INFO, log_to_file=Config.LOG_TO_FILE)

    # Validate configuration
    invalid = Config.validate()
    if invalid:
        logger.error(f"Invalid configuration: {', '.join(invalid)}")
        logger.error("Please check your .env file")
        return 1

    logger.debug(f"Running {args.command}")
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
