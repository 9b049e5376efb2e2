"""Directory paths used by the brauer-pinch command-line tool.

Logs go to the platform's user log directory unless a project directory is given, in which case they are kept next
to the project's own files.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

import platformdirs


if TYPE_CHECKING:
    from pathlib import Path


APP_NAME = "brauer-pinch"


def user_log_dir() -> Path:
    """Get the path to the user-specific log directory of brauer-pinch.

    Returns:
        Path: e.g. `~/.local/state/brauer-pinch/log` on Linux.
    """
    return platformdirs.user_log_path(appname=APP_NAME)


def project_log_dir(project_dir: Path) -> Path:
    """Get the path to the log directory kept inside a project directory.

    Args:
        project_dir (Path): The directory holding the project's pyproject.toml and config documents.

    Returns:
        Path: `<project_dir>/logs`.
    """
    return project_dir / "logs"
