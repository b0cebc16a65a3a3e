"""Logging configuration for ecl-gsr."""

import logging
import sys

import structlog

_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def setup_logging(log_level="INFO", log_format="json", stream=None):
    """
    Configure structlog on top of stdlib logging.

    Training runs emit one event per epoch, so the JSON renderer keeps the
    output machine-readable; ``console`` is meant for interactive use.

    Args:
        log_level: One of DEBUG, INFO, WARNING, ERROR
        log_format: 'json' or 'console'
        stream: Target stream, stdout by default
    """
    level_name = log_level.upper() if log_level.upper() in _LEVELS else "INFO"
    level = getattr(logging, level_name)

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stdout)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root.addHandler(handler)
    root.setLevel(level)

    processors = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
    ]

    if log_format == "json":
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    return structlog.get_logger("ecl_gsr")
