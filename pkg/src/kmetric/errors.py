"""Exception hierarchy shared by every module."""


class KMetricError(Exception):
    """Base class for domain errors (reported with exit code 1 by the CLI)."""


class GraphFormatError(KMetricError):
    """Malformed edge-list or graph6 input."""


class DisconnectedGraphError(KMetricError):
    """A metric operation was requested on a disconnected graph."""


class InvalidParameterError(KMetricError):
    """A parameter is outside the range an operation accepts."""


class NoGeneratorError(InvalidParameterError):
    """k exceeds the dimensional value, so no k-metric generator exists."""


class SolverLimitError(KMetricError):
    """The input is larger than the configured exact-search guard."""
