"""
Logging Setup für fsopkit
structlog nach stderr; stdout bleibt den Reports vorbehalten
"""
import logging
import sys

import structlog

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def level_for_verbosity(verbosity: int) -> str:
    """0 -> WARNING, 1 -> INFO, ab 2 -> DEBUG"""
    if verbosity <= 0:
        return "WARNING"
    return "INFO" if verbosity == 1 else "DEBUG"


def configure_logging(level: str = "WARNING", json_logs: bool = False) -> None:
    """
    Konfiguriert structlog

    Args:
        level: DEBUG | INFO | WARNING | ERROR
        json_logs: JSONRenderer statt ConsoleRenderer
    """
    level = level.upper()
    if level not in LEVELS:
        raise ValueError(f"Unbekanntes Log-Level {level}")

    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
    ]
    if json_logs:
        processors.append(structlog.processors.JSONRenderer(sort_keys=True))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, level)),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str):
    return structlog.get_logger(name)
