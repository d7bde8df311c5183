"""Exception hierarchy shared by all INOF packages."""

from typing import Optional


class InofError(Exception):
    """Base class for every error raised by the toolkit."""


class GraphLoadError(InofError):
    """Edge list or titles file could not be ingested."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GraphFormatError(InofError):
    """Binary graph cache is corrupt, truncated or from another format version."""


class ConvergenceError(InofError):
    """Power iteration did not reach the requested tolerance."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"PageRank did not converge in {iterations} iterations (last L1 change {residual:.3e})"
        )


class ContractViolationError(InofError):
    """Caller broke a documented precondition of the dynamics."""


class SimulationError(InofError):
    """A realization ended in a state the model does not allow."""


class StatsError(InofError):
    """Statistic is undefined for the given input."""


class SelectionError(InofError):
    """Node selectors could not be resolved against the graph."""

    def __init__(self, missing: list[str]):
        self.missing = list(missing)
        super().__init__("Unresolved titles: " + ", ".join(repr(name) for name in self.missing))


class ResultsError(InofError):
    """Results directory is missing files or is inconsistent."""
