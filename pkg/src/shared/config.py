"""
Centralized Configuration Defaults for the Boundary Rules System

This module is the single source of truth for learner defaults and for the
process-wide logging settings, supporting CLI and environment overrides.
Run configuration files are handled by shared.run_config.
"""
import os
import logging
from typing import Optional

# Set up logging
logger = logging.getLogger(__name__)

# Global configuration cache
_config_cache = {}

# Learner defaults

# ChiMerge merge threshold; the recommended range is roughly 3 to 6
DEFAULT_THRESHOLD = 6.0

DEFAULT_N_ESTIMATORS = 10
DEFAULT_N_FEATURES = 2
DEFAULT_HEURISTIC = 'H1'
DEFAULT_SAMPLE_ORDER = 'dataset'

DEFAULT_ALPHA = 0.7
DEFAULT_TOP_K = 500
DEFAULT_MIN_WEIGHT = 0.0

DEFAULT_SEED = 0
DEFAULT_N_JOBS = 1
DEFAULT_FOLDS = 5

# Widest lattice the exhaustive boundary enumerator accepts
DEFAULT_ORACLE_WIDTH_CAP = 20

# Desk-scale caps for the scaling bench
BENCH_MAX_RECORDS = 100_000
BENCH_MAX_FEATURES = 50

# Observability Configuration Constants

# Log level used when neither the CLI nor the environment sets one
LOG_LEVEL = 'INFO'

LOG_LEVEL_ENV = 'BOUNDARY_RULES_LOG_LEVEL'
LOG_TO_STDOUT_ENV = 'BOUNDARY_RULES_LOG_TO_STDOUT'
LOG_FILE_ENV = 'BOUNDARY_RULES_LOG_FILE'

_VALID_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def get_log_level() -> str:
    """
    Get the logging level with precedence: CLI override > Environment > Default.

    Returns:
        str: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    global _config_cache

    if 'log_level' in _config_cache:
        return _config_cache['log_level']

    level = os.environ.get(LOG_LEVEL_ENV, '').upper()
    if level in _VALID_LEVELS:
        logger.debug(f"Using log level from environment: {level}")
    else:
        if level:
            logger.warning(f"Ignoring invalid {LOG_LEVEL_ENV} value: {level}")
        level = LOG_LEVEL

    _config_cache['log_level'] = level
    return level


def set_log_level_override(level: str) -> None:
    """
    Set a log level override (typically called from the CLI --verbose flag).

    Args:
        level: Log level name
    """
    global _config_cache

    level = (level or '').upper()
    if level not in _VALID_LEVELS:
        raise ValueError(f"Invalid log level: {level}")

    _config_cache['log_level'] = level


def get_log_file_path() -> Optional[str]:
    """
    Get the optional structured log file path.

    Returns:
        Optional[str]: Log file path or None to log to a stream only
    """
    path = os.environ.get(LOG_FILE_ENV, '').strip()
    return path or None


def should_log_to_stdout() -> bool:
    """
    Check if structured logs should go to stdout instead of stderr.

    Stdout is reserved for command output by default; set
    BOUNDARY_RULES_LOG_TO_STDOUT to route logs there (containers, CI).

    Returns:
        bool: True if structured logs should go to stdout
    """
    override = os.environ.get(LOG_TO_STDOUT_ENV, '').lower()
    return override in ('true', '1', 'yes')


def clear_config_cache() -> None:
    """Clear the configuration cache (useful for testing)."""
    global _config_cache
    _config_cache.clear()
    logger.debug("Configuration cache cleared")
