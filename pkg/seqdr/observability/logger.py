"""
Logger configuration.

Provides structlog loggers rendered through a single stdlib handler. structlog
is routed through the stdlib at import, so library code that logs before
configure_logging follows the stdlib defaults: DEBUG and INFO events are
dropped and nothing is written to stdout.

Dependencies: structlog, logging (stdlib)
System role: Centralized logging configuration
"""

import logging
import sys

import structlog


def _configure_structlog() -> None:
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.processors.format_exc_info,
            structlog.processors.KeyValueRenderer(key_order=["event"], sort_keys=True),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


_configure_structlog()


def configure_logging(level: str = "INFO") -> None:
    """
    Configure stdlib logging and structlog on a single stderr handler.

    Args:
        level: Root log level name
    """
    # Remove any existing handlers to avoid duplicates
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(
        logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    root_logger.setLevel(level.upper())
    root_logger.addHandler(handler)

    _configure_structlog()

    # Reduce noise from verbose third-party libraries
    logging.getLogger("numexpr").setLevel(logging.WARNING)


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """
    Get configured logger.

    Args:
        name: Logger name (usually __name__)

    Returns:
        structlog.stdlib.BoundLogger: Logger accepting key-value context
    """
    return structlog.get_logger(name)
