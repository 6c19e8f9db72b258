"""
Trace sinks for learner and selection audit output.
"""

import logging
import os
from typing import Any, List, Optional, TextIO

logger = logging.getLogger(__name__)


def _format_value(value: Any) -> str:
    if value is None:
        return 'undef'
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple, set, frozenset)):
        return '{' + ','.join(str(v) for v in value) + '}'
    return str(value)


class TraceWriter:
    """Line-oriented trace sink.

    Each call writes one line `event key=value key=value ...`. Lines go to a
    file, to an open stream, or are only kept in memory (golden tests read
    them back through `lines`).
    """

    def __init__(self, path: Optional[str] = None, stream: Optional[TextIO] = None):
        self.path = path
        self.lines: List[str] = []
        self._owns_stream = False
        self._stream = stream

        if path:
            log_dir = os.path.dirname(os.path.abspath(path))
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            self._stream = open(path, 'w', encoding='utf-8')
            self._owns_stream = True

    @classmethod
    def in_memory(cls) -> 'TraceWriter':
        return cls()

    def __call__(self, event: str, **fields: Any) -> None:
        """Write one trace line."""
        parts = [event] + [f"{key}={_format_value(value)}" for key, value in fields.items()]
        line = ' '.join(parts)
        self.lines.append(line)
        if self._stream is not None:
            self._stream.write(line + '\n')

    def close(self) -> None:
        if self._owns_stream and self._stream is not None:
            self._stream.close()
            logger.debug(f"Trace written to {self.path} ({len(self.lines)} lines)")
        self._stream = None

    def __enter__(self) -> 'TraceWriter':
        return self

    def __exit__(self, *exc) -> None:
        self.close()

