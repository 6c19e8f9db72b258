"""
Tests for log settings, the JSON formatter and the trace writer.
"""
import json
import logging

import pytest

from shared.config import LOG_LEVEL_ENV, clear_config_cache, get_log_level, set_log_level_override
from shared.observability import JSONFormatter, TraceWriter

logger = logging.getLogger(__name__)


@pytest.fixture(autouse=True)
def fresh_config_cache():
    clear_config_cache()
    yield
    clear_config_cache()


def test_log_level_precedence(monkeypatch):
    monkeypatch.delenv(LOG_LEVEL_ENV, raising=False)
    assert get_log_level() == "INFO"

    clear_config_cache()
    monkeypatch.setenv(LOG_LEVEL_ENV, "warning")
    assert get_log_level() == "WARNING"

    set_log_level_override("debug")
    assert get_log_level() == "DEBUG"

    clear_config_cache()
    monkeypatch.setenv(LOG_LEVEL_ENV, "chatty")
    assert get_log_level() == "INFO"

    with pytest.raises(ValueError):
        set_log_level_override("LOUD")


def test_json_formatter_keeps_whitelisted_extras():
    record = logging.LogRecord("boundary_rules.orchestrator", logging.INFO, __file__, 1,
                               "Training finished", None, None)
    record.n_rules = 2
    record.secret = "dropped"
    line = json.loads(JSONFormatter().format(record))
    assert line["message"] == "Training finished"
    assert line["component"] == "boundary_rules.orchestrator"
    assert line["level"] == "info"
    assert line["n_rules"] == 2
    assert "secret" not in line
    assert "timestamp" in line


def test_trace_writer_formats_values(tmp_path):
    path = tmp_path / "logs" / "trace.txt"
    with TraceWriter(str(path)) as trace:
        trace("stat", i=3, s0=2, dplus0=0, dist=None)
        trace("select", iter=1, weight=0.48333333, J=[1, 2])
    expected = ["stat i=3 s0=2 dplus0=0 dist=undef", "select iter=1 weight=0.483333 J={1,2}"]
    assert trace.lines == expected
    assert path.read_text(encoding="utf-8").splitlines() == expected

    memory = TraceWriter.in_memory()
    memory("stop", reason="covered", rules=0)
    assert memory.lines == ["stop reason=covered rules=0"]
