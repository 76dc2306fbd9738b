"""Exception hierarchy for pareto-route.

Every error raised on purpose by the library derives from
`ParetoRouteError` so that the CLI can map it onto a stable exit code.
Each class carries an `exit_code` attribute for that mapping.
"""

from __future__ import annotations

from typing import Optional

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


class ParetoRouteError(Exception):
    """Base class for all pareto-route errors."""

    exit_code: int = EXIT_USAGE


class DimensionMismatchError(ParetoRouteError):
    """Two cost vectors (or a vector and an instance) disagree on dimension."""


class UnsupportedDimensionError(ParetoRouteError):
    """An operation that only exists for a given dimension was called with another one."""


class InfeasibleInstanceError(ParetoRouteError):
    """The source cannot reach the target."""


class DimacsParseError(ParetoRouteError):
    exit_code = EXIT_IO

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class InstanceFormatError(ParetoRouteError):
    """Streams are individually well-formed but do not describe one instance."""

    exit_code = EXIT_IO


class SolutionFormatError(ParetoRouteError):
    exit_code = EXIT_IO


class ManifestError(ParetoRouteError):
    exit_code = EXIT_IO


class QueueContractError(ParetoRouteError, AssertionError):
    """A priority queue operation was called against its contract."""


class PathCorruptionError(ParetoRouteError):
    """A predecessor chain does not describe a path (cycle, or costs do not add up)."""


class OracleGuardError(ParetoRouteError):
    """The instance is too large for the requested oracle mode."""

    exit_code = EXIT_VALIDATION


class TimeLimitExceeded(ParetoRouteError):
    pass


class GeneratorParamError(ParetoRouteError):
    """Generator parameters out of range."""
