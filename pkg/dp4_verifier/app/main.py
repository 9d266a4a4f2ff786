"""
Main entry point of the dp4 command.
Configures logging and dispatches the sub-commands.
"""
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.config import LOG_LEVEL, PROJECT_NAME, validate_config
from app.models.errors import CharacteristicError, InvalidGeometryError, UnknownSuiteError
from app.routes.commands import parse_args

# Configure logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_CONFIG = 2


def configure_logging(level: str = LOG_LEVEL) -> None:
    """Log to stderr so that JSON on stdout stays clean"""
    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s [%(levelname)s] %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one dp4 sub-command.

    Args:
        argv: arguments without the program name; sys.argv[1:] when omitted

    Returns:
        int: 0 on success, 1 when a report holds failures, 2 on configuration errors
    """
    args = parse_args(argv)
    configure_logging(args.log_level or LOG_LEVEL)
    logger.info(f"Starting {PROJECT_NAME}: {args.command}")

    if not validate_config():
        logger.warning("Configuration from the environment has problems; command-line values still apply.")

    try:
        return args.handler(args)
    except (UnknownSuiteError, CharacteristicError, InvalidGeometryError, ValidationError, ValueError) as e:
        logger.error(f"Invalid request: {e}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
