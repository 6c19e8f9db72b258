"""
Logging utilities for the boundary rules observability system.
"""

import logging
import sys
from typing import Optional

import structlog

# Record attributes passed through `extra=` that end up in the JSON line
EXTRA_FIELDS = (
    'command', 'estimator', 'fold', 'duration_ms', 'n_candidates',
    'n_rules', 'n_positive', 'n_negative', 'width', 'fingerprint', 'error',
)

NAMESPACE = 'boundary_rules'


def _keep_whitelisted(_, __, event_dict):
    """Drop `extra` keys that are not part of the log line schema."""
    record = event_dict.get('_record')
    if record is None:
        return event_dict
    for field in EXTRA_FIELDS:
        if hasattr(record, field):
            event_dict[field] = getattr(record, field)
    return event_dict


class JSONFormatter(structlog.stdlib.ProcessorFormatter):
    """JSON formatter for structured logging of stdlib records."""

    def __init__(self):
        super().__init__(
            foreign_pre_chain=[
                structlog.processors.TimeStamper(fmt='iso', utc=True, key='timestamp'),
                structlog.stdlib.add_log_level,
                _keep_whitelisted,
            ],
            processors=[
                _rename_logger_field,
                structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                structlog.processors.format_exc_info,
                structlog.processors.JSONRenderer(default=str, ensure_ascii=False),
            ],
        )


def _rename_logger_field(_, __, event_dict):
    record = event_dict.get('_record')
    if record is not None:
        event_dict['component'] = record.name
    event_dict['message'] = event_dict.pop('event', '')
    return event_dict


def _build_handler() -> logging.Handler:
    from shared.config import get_log_file_path, should_log_to_stdout

    log_file = get_log_file_path()
    if log_file:
        try:
            return logging.FileHandler(log_file, encoding='utf-8')
        except OSError:
            # Fallback to stderr, stdout carries command output
            pass
    if should_log_to_stdout():
        return logging.StreamHandler(sys.stdout)
    return logging.StreamHandler(sys.stderr)


def get_logger(component_name: str) -> logging.Logger:
    """
    Get configured logger for a component.

    Args:
        component_name: Name of the component

    Returns:
        Configured logger instance under the boundary_rules namespace
    """
    from shared.config import get_log_level

    logger = logging.getLogger(f"{NAMESPACE}.{component_name}")

    if not logger.handlers:
        handler = _build_handler()
        handler.setFormatter(JSONFormatter())
        logger.addHandler(handler)

        log_level = get_log_level()
        logger.setLevel(getattr(logging, log_level, logging.INFO))
        logger.propagate = False

    return logger


def configure_logging(verbose: bool = False, level: Optional[str] = None) -> None:
    """
    Configure root logging for a CLI run.

    Every module logs through `logging.getLogger(__name__)`; this installs one
    JSON handler on the root logger so those records come out structured.

    Args:
        verbose: Force DEBUG level (the CLI --verbose flag)
        level: Explicit level name, overrides the environment
    """
    from shared.config import get_log_level, set_log_level_override

    if verbose:
        set_log_level_override('DEBUG')
    elif level:
        set_log_level_override(level)

    root = logging.getLogger()
    for existing in list(root.handlers):
        if isinstance(existing.formatter, JSONFormatter):
            root.removeHandler(existing)

    handler = _build_handler()
    handler.setFormatter(JSONFormatter())
    root.addHandler(handler)
    root.setLevel(getattr(logging, get_log_level(), logging.INFO))
