"""
Tests für das structlog Setup
"""
import json

import pytest
import structlog

from fsopkit.infrastructure.logging.setup import configure_logging, get_logger, level_for_verbosity


@pytest.fixture(autouse=True)
def restore_structlog():
    yield
    structlog.reset_defaults()


@pytest.mark.parametrize("verbosity,level", [(0, "WARNING"), (1, "INFO"), (2, "DEBUG"), (5, "DEBUG")])
def test_level_for_verbosity(verbosity, level):
    assert level_for_verbosity(verbosity) == level


def test_unknown_level():
    with pytest.raises(ValueError):
        configure_logging("chatty")


def test_json_logs_go_to_stderr(capsys):
    configure_logging("info", json_logs=True)
    get_logger("fsopkit.test").info("degree_evaluated", degree=3)
    captured = capsys.readouterr()
    assert captured.out == ""
    entry = json.loads(captured.err.strip().splitlines()[-1])
    assert entry["event"] == "degree_evaluated"
    assert entry["degree"] == 3
    assert entry["level"] == "info"


def test_level_filters_debug(capsys):
    configure_logging("WARNING", json_logs=True)
    get_logger("fsopkit.test").debug("hidden")
    assert capsys.readouterr().err == ""
