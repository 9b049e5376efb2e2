"""Tests for configuring the brauer-pinch loggers.

They check that the user-level and project-level configurations write log files where the CLI expects them.
"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import pytest
from brauer_pinch.utils.logging import configure_brauer_logger, configure_local_logger


if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path


@pytest.fixture
def logger_name(request: pytest.FixtureRequest) -> Iterator[str]:
    """A logger name unique to the test; its handlers are closed afterwards so log files are released."""
    name = f"brauer-pinch-test.{request.node.name}"
    yield name
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def test_local_logger(tmp_path: Path, logger_name: str):
    """A local logger writes to the project's logs/ directory, creating it when needed."""
    LOG_STATEMENT = "Test log."

    configure_local_logger(name=logger_name, project_dir=tmp_path / "project")
    logging.getLogger(logger_name).info(LOG_STATEMENT)

    log_file = tmp_path / "project" / "logs" / "brauer-pinch.log"
    assert log_file.exists()

    actual_log_file_output = log_file.read_text()
    # We don't want to make too many assumptions here about the format of the log output.
    assert "INFO" in actual_log_file_output
    assert LOG_STATEMENT in actual_log_file_output


def test_brauer_logger(fake_user_log_dir: Path, logger_name: str):
    """The default logger writes to the user log directory and names the logger in every line."""
    LOG_STATEMENT = "Testing 123..."

    configure_brauer_logger(name=logger_name)
    logging.getLogger(logger_name).info(LOG_STATEMENT)

    log_file = fake_user_log_dir / "brauer-pinch" / "brauer-pinch.log"
    assert log_file.exists()

    actual_log_file_output = log_file.read_text()
    assert "INFO" in actual_log_file_output
    assert LOG_STATEMENT in actual_log_file_output
    assert logger_name in actual_log_file_output


def test_configuring_twice_keeps_one_set_of_handlers(fake_user_log_dir: Path, logger_name: str):
    first = configure_brauer_logger(name=logger_name, log_level=logging.DEBUG)
    second = configure_brauer_logger(name=logger_name, log_level=logging.WARNING)

    assert first is second
    assert len(second.handlers) == 2
    assert second.level == logging.DEBUG
