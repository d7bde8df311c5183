"""Main entry point for the opinion formation toolkit."""

import logging
import sys
from typing import Optional

from cli.decorators import EXIT_USAGE
from cli.parser import build_parser
from config.settings import LoggingConfig, load_settings

logger = logging.getLogger(__name__)


def setup_logging(config: LoggingConfig) -> None:
    """Progress goes to stderr (and the optional log file); data never does."""
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.log_file:
        handlers.append(logging.FileHandler(config.log_file, encoding="utf-8"))
    logging.basicConfig(
        level=config.log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


def main(argv: Optional[list[str]] = None) -> int:
    """Parse arguments, configure logging and run one subcommand."""
    args = build_parser().parse_args(argv)

    try:
        settings = load_settings()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(settings.logging)
    logger.debug(f"Running {args.command} with {settings.runtime.threads} available threads")
    return args.handler(args, settings)


if __name__ == "__main__":
    sys.exit(main())
