"""
JSON Utilities for Model and Report Files

Deterministic serialization for artifacts and safe parsing of files written by
an earlier run.
"""
import json
import logging
from typing import Any, Dict

from shared.errors import ModelFormatError

logger = logging.getLogger(__name__)


def canonical_json(data: Any) -> str:
    """Compact, key-sorted JSON used for fingerprints."""
    return json.dumps(data, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def dump_json(data: Any, path: str) -> None:
    """
    Write JSON so that equal data always produces byte-identical files.

    Args:
        data: JSON-serializable payload
        path: Output file path
    """
    text = json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(text + '\n')


def safe_json_load(path: str, what: str = 'model') -> Dict[str, Any]:
    """
    Read a JSON object from disk.

    Args:
        path: File path
        what: Artifact name used in error messages

    Returns:
        Parsed JSON object

    Raises:
        ModelFormatError: If the file is missing, truncated or not a JSON object
    """
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            raw = handle.read()
    except OSError as e:
        logger.error(f"Cannot read {what} file {path}: {e}")
        raise ModelFormatError(f"cannot read {what} file {path}: {e}", module='rule_model') from e

    if not raw.strip():
        raise ModelFormatError(f"{what} file {path} is empty", module='rule_model')

    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, ValueError) as e:
        logger.error(f"Failed to parse {what} file {path}: {e}")
        raise ModelFormatError(f"malformed {what} file {path}: {e}", module='rule_model') from e

    if not isinstance(data, dict):
        raise ModelFormatError(f"{what} file {path} does not contain a JSON object", module='rule_model')
    return data
