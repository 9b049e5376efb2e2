"""Logger configuration for brauer-pinch.

Each configured logger gets a stream handler on stderr and a rotating file handler, either in the user log directory
or in a project's own `logs/` directory. Reports themselves are printed to stdout and never go through logging.
"""
from __future__ import annotations

import logging
from logging.handlers import RotatingFileHandler
from typing import TYPE_CHECKING

from brauer_pinch.utils.dirs import APP_NAME, project_log_dir, user_log_dir


if TYPE_CHECKING:
    from pathlib import Path


LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_brauer_logger(
    name: str,
    log_level: int = logging.INFO,
) -> logging.Logger:
    """Configure a logger writing to the user log directory.

    Args:
        name (str): The name of the logger, normally "brauer_pinch" so every module logger inherits the handlers.
        log_level (int, optional): The logging level. Defaults to logging.INFO.

    Returns:
        logging.Logger: The configured logger.
    """
    return _configure_logger(
        name=name,
        filename=user_log_dir() / f"{APP_NAME}.log",
        level=log_level,
    )


def configure_local_logger(
    name: str,
    project_dir: Path,
    log_level: int = logging.INFO,
) -> logging.Logger:
    """Configure a logger writing to `<project_dir>/logs`.

    Args:
        name (str): The name of the logger.
        project_dir (Path): The project directory.
        log_level (int, optional): The logging level. Defaults to logging.INFO.

    Returns:
        logging.Logger: The configured logger.
    """
    return _configure_logger(
        name=name,
        filename=project_log_dir(project_dir) / f"{APP_NAME}.log",
        level=log_level,
    )


def _configure_logger(
    name: str,
    filename: Path,
    level: int = logging.INFO,
) -> logging.Logger:
    """Attach a stderr stream handler and a rotating file handler, unless the logger already has handlers.

    Args:
        name (str): The name of the logger.
        filename (Path): The path to the log file.
        level (int, optional): The logging level. Defaults to logging.INFO.

    Returns:
        logging.Logger: The configured logger instance.
    """
    logger = logging.getLogger(name)

    if not logger.handlers:
        logger.setLevel(level)

        formatter = logging.Formatter(LOG_FORMAT)
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(formatter)
        logger.addHandler(stream_handler)

        filename.parent.mkdir(parents=True, exist_ok=True)

        file_handler = RotatingFileHandler(
            filename.expanduser(),
            maxBytes=5 * 1024 * 1024,
            backupCount=20,
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger
