"""Custom exceptions raised by the group arithmetic, the field model and the formula engine."""
from __future__ import annotations

from typing import TYPE_CHECKING


if TYPE_CHECKING:
    from typing import Any, ClassVar


class BrauerPinchError(Exception):
    """Base class for every computation error; `code` is the machine-readable error class."""
    code: ClassVar[str] = "error"


class InvalidArgumentError(BrauerPinchError, ValueError):
    """Custom exception to indicate that an operation received an argument outside its domain."""
    code = "invalid-argument"


class InconsistentConfigurationError(BrauerPinchError):
    """Custom exception to indicate that a configuration describes no actual pinched variety."""
    code = "inconsistent-configuration"

    def __init__(self, *args: Any, theorem: str | None = None):
        super().__init__(*args)
        self.theorem = theorem


class IncompleteConfigurationError(BrauerPinchError):
    """Custom exception to indicate that a configuration lacks the data an operation needs (e.g. index data)."""
    code = "incomplete-configuration"


class TheoremNotApplicableError(BrauerPinchError):
    """Custom exception to indicate that the hypotheses of a structure result are not met."""
    code = "theorem-not-applicable"

    def __init__(self, *args: Any, theorem: str | None = None):
        super().__init__(*args)
        self.theorem = theorem


class InvalidChainError(BrauerPinchError):
    """Custom exception to indicate that a seminormalization chain contains an illegal step."""
    code = "invalid-chain"

    def __init__(self, *args: Any, step: int):
        super().__init__(*args)
        self.step = step


class OracleTooLargeError(BrauerPinchError):
    """Custom exception to indicate that an enumeration would exceed the configured oracle caps."""
    code = "oracle-too-large"


class OracleNotApplicableError(BrauerPinchError):
    """Custom exception to indicate that a configuration lies outside the exactly enumerable regime."""
    code = "oracle-not-applicable"
