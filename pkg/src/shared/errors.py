"""
Error Types for the Boundary Rules System

Every error raised by a component carries the name of the module that raised it
and the process exit code the CLI reports for it:

    0 success, 1 validation, 2 data error, 3 internal
"""
from typing import Optional

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class RulesError(Exception):
    """Base class for all errors raised by the rule learner."""

    exit_code = EXIT_INTERNAL

    def __init__(self, message: str, module: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.module = module or "boundary_rules"

    def qualified(self) -> str:
        """Message prefixed with the raising module, as printed by the CLI."""
        return f"{self.module}: {self.message}"


class ConfigError(RulesError, ValueError):
    """Invalid run configuration; raised before any data is read."""

    exit_code = EXIT_VALIDATION


class DataError(RulesError, ValueError):
    """Unreadable or malformed input data.

    Carries the 1-based data row and the column name when the problem can be
    located inside a file.
    """

    exit_code = EXIT_DATA

    def __init__(
        self,
        message: str,
        module: Optional[str] = None,
        row: Optional[int] = None,
        column: Optional[str] = None,
    ):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        if location:
            message = f"{', '.join(location)}: {message}"
        super().__init__(message, module)
        self.row = row
        self.column = column


class SchemaMismatchError(DataError):
    """A file does not provide a column the schema requires."""


class SplitError(DataError):
    """A split request cannot be satisfied by the data."""


class ModelFormatError(DataError):
    """Model file is truncated, malformed or inconsistent."""


class ModelVersionError(ModelFormatError):
    """Model file was written with an unsupported format version."""


class LatticeError(RulesError, ValueError):
    """Width mismatch or out-of-range index inside the bit-vector kernel."""


class UnsatisfiableRuleError(RulesError, ValueError):
    """A lattice point has a feature span with every bit set."""
