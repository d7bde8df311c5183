"""Decorators for CLI command handlers."""

import logging
import sys
from functools import wraps
from typing import Callable

from pydantic import ValidationError

from utils.errors import InofError, SelectionError
from utils.formatters import format_selection_error

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def handle_errors(handler: Callable[..., int]) -> Callable[..., int]:
    """Decorator turning handler exceptions into exit codes.

    Domain and I/O errors are logged and reported on stderr with exit code 1; invalid
    configuration values exit with code 2. Anything else propagates.

    Args:
        handler: Command handler returning an exit code

    Returns:
        Wrapped handler

    Example:
        @handle_errors
        def cmd_ingest(args: argparse.Namespace, settings: Settings) -> int:
            # Handler code here
    """

    @wraps(handler)
    def wrapper(*args, **kwargs) -> int:
        try:
            return handler(*args, **kwargs)
        except SelectionError as e:
            logger.error(f"{handler.__name__}: {e}")
            print(format_selection_error(e.missing), file=sys.stderr)
            return EXIT_FAILURE
        except InofError as e:
            logger.error(f"{handler.__name__}: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAILURE
        except UnicodeDecodeError as e:
            logger.error(f"{handler.__name__}: input is not valid UTF-8: {e}")
            print(f"error: input is not valid UTF-8: {e}", file=sys.stderr)
            return EXIT_FAILURE
        except (ValidationError, ValueError) as e:
            logger.error(f"{handler.__name__}: invalid configuration: {e}")
            print(f"error: invalid configuration: {e}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as e:
            logger.error(f"{handler.__name__}: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAILURE

    return wrapper
