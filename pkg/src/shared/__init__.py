# Shared utilities for the Boundary Rules system

from .config import clear_config_cache
from .errors import (
    EXIT_DATA,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_VALIDATION,
    ConfigError,
    DataError,
    LatticeError,
    ModelFormatError,
    ModelVersionError,
    RulesError,
    SchemaMismatchError,
    SplitError,
    UnsatisfiableRuleError,
)
from .json_utils import canonical_json, dump_json, safe_json_load

__all__ = [
    # Configuration
    'clear_config_cache',
    # Errors and exit codes
    'EXIT_DATA',
    'EXIT_INTERNAL',
    'EXIT_OK',
    'EXIT_VALIDATION',
    'ConfigError',
    'DataError',
    'LatticeError',
    'ModelFormatError',
    'ModelVersionError',
    'RulesError',
    'SchemaMismatchError',
    'SplitError',
    'UnsatisfiableRuleError',
    # JSON artifacts
    'canonical_json',
    'dump_json',
    'safe_json_load',
]
