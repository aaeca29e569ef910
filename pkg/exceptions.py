"""Error hierarchy shared by the loader, evaluator, solvers and harness."""


class OffloadError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OffloadError):
    """A scenario file could not be read or is not a YAML mapping."""


class ValidationError(OffloadError):
    """A scenario is structurally invalid."""


class CycleDetected(ValidationError):
    pass


class DanglingEdge(ValidationError):
    pass


class InvalidPlacement(ValidationError):
    pass


class MissingTask(InvalidPlacement):
    pass


class UnknownTask(InvalidPlacement):
    pass


class SolverError(OffloadError):
    """A solver could not return a placement that satisfies the scenario.

    ``tiers`` holds the last placement the solver reached (by topological
    position) when one exists; ``outcome`` is filled in by BaseSolver with the
    evaluation of that placement.
    """

    def __init__(self, message, tiers=None):
        super().__init__(message)
        self.tiers = tiers
        self.outcome = None


class Infeasible(SolverError):
    pass


class RestartsExhausted(SolverError):
    pass


class TooLarge(SolverError):
    pass
