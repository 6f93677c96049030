"""Exceptions for the pyswbnet package."""

from collections.abc import Sequence
from pathlib import Path


class SwbNetError(Exception):
    """Base exception for the pyswbnet package."""


class InvalidConfig(SwbNetError):
    """Error to indicate a configuration value is not acceptable."""

    def __init__(self, field: str, message: str) -> None:
        """Initialize the exception."""
        super().__init__(f"Invalid config field '{field}': {message}")
        self.field = field


class InvalidArgument(SwbNetError):
    """Error to indicate an argument is outside its allowed domain."""


class ProtocolError(SwbNetError):
    """Error to indicate the round protocol was violated."""


class ReplayMismatch(ProtocolError):
    """Error to indicate a replayed log diverged from its recorded state."""


class UndefinedInput(SwbNetError):
    """Error to indicate a statistic is undefined for the given input."""


class SingularDesign(UndefinedInput):
    """Error to indicate a design matrix is rank deficient."""


class ConvergenceError(SwbNetError):
    """Error to indicate an iterative fit diverged."""

    def __init__(self, covariate: str, message: str) -> None:
        """Initialize the exception."""
        super().__init__(f"{message} (offending covariate: {covariate})")
        self.covariate = covariate


class LogParseError(SwbNetError):
    """Error to indicate an event log is corrupt, truncated or misordered."""

    def __init__(
        self, path: Path | str, line: int, record: str, message: str
    ) -> None:
        """Initialize the exception."""
        super().__init__(f"{path}:{line}: {message} [record: {record[:120]}]")
        self.path = Path(path)
        self.line = line
        self.record = record


class UnknownColumn(SwbNetError):
    """Error to indicate a report column does not exist."""

    def __init__(self, column: str, available: Sequence[str]) -> None:
        """Initialize the exception."""
        super().__init__(
            f"Unknown column '{column}'. Available columns: {', '.join(available)}"
        )
        self.column = column
        self.available = tuple(available)


class ReplicationFailed(SwbNetError):
    """Raised when a required replication finding does not hold."""
