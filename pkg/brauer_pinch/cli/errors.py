"""Custom exceptions raised while parsing command-line arguments and config documents."""
from __future__ import annotations

from typing import TYPE_CHECKING


if TYPE_CHECKING:
    from pathlib import Path
    from typing import Any, ClassVar

    from brauer_pinch.pinchmodel import Violation


class ConfigError(Exception):
    """Base class for errors in a config document; `code` names the error class in diagnostics."""
    code: ClassVar[str] = "config-error"


class ConfigParseError(ConfigError):
    """Custom exception to indicate that a config document is not well-formed JSON."""
    code = "parse-error"

    def __init__(self, *args: Any, line: int, column: int):
        super().__init__(*args)
        self.line = line
        self.column = column


class ConfigSchemaError(ConfigError):
    """Custom exception to indicate that a config document does not match the schema.

    `errors` holds one (key path, message) pair per failure, e.g. ("points.0.fibers.1.degree", "Input should be...").
    """
    code = "schema-error"

    def __init__(self, *args: Any, errors: list[tuple[str, str]]):
        super().__init__(*args)
        self.errors = errors


class ConfigValidationError(ConfigError):
    """Custom exception to indicate that a config document describes no pinched variety."""
    code = "config-error"

    def __init__(self, *args: Any, violations: list[Violation]):
        super().__init__(*args)
        self.violations = violations


class SettingsError(ConfigError):
    """Custom exception to indicate that the `[tool.brauer-pinch]` settings in pyproject.toml are unreadable."""
    code = "settings-error"


class UsageError(Exception):
    """Custom exception to indicate a malformed command line."""


class DirectoryNotFoundError(FileNotFoundError):
    """Custom exception to indicate that a specified project directory was not found."""
    def __init__(self, *args: Any, directory: Path):
        super().__init__(*args)
        self.directory = directory


class NotAFileError(NotADirectoryError):
    """Custom exception to indicate that a provided path is not a file."""
