"""
Public API for the boundary rules observability system.
Clean exports with implementation in separate modules.
"""

from .handlers import TraceWriter
from .logging_utils import configure_logging, get_logger, JSONFormatter

# Public API
__all__ = [
    'configure_logging',
    'get_logger',
    'JSONFormatter',
    'TraceWriter',
]
