"""Exceptions for acmorse."""


class AcMorseError(Exception):
    """Base exception for acmorse."""


class ConfigurationError(AcMorseError):
    """Raised when a run configuration is malformed."""

    def __init__(self, message: str, key: str | None = None) -> None:
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class GridMismatchError(AcMorseError):
    """Raised when fields, metrics or tensors live on different grids."""


class InvalidMetricError(AcMorseError):
    """Raised when a metric is not symmetric positive definite at some node."""

    def __init__(self, message: str, node: tuple[int, ...] | None = None) -> None:
        self.node = node
        super().__init__(message)


class TraceFreeError(AcMorseError):
    """Raised when a perturbation that must be trace-free is not."""


class InadmissiblePotentialError(AcMorseError):
    """Raised when a potential violates the structural conditions on f."""


class NotAZeroError(AcMorseError):
    """Raised when a constant is used as a solution but f(c) != 0."""


class EigenSolveError(AcMorseError):
    """Raised when an eigensolver fails to converge within its budget."""


class SpectrumTruncatedError(AcMorseError):
    """Raised when a count needs more eigenvalues than were computed."""


class NonSimpleEigenvalueError(AcMorseError):
    """Raised when a formula that needs a simple eigenvalue meets a cluster."""


class ConvergenceError(AcMorseError):
    """Raised when a Newton-type iteration fails."""


class APrioriBoundError(AcMorseError):
    """Raised when a converged state violates ||u||_inf <= T0."""


class SingularBandError(AcMorseError):
    """Raised when epsilon lies inside an excluded band around Sing."""


class NoKernelError(AcMorseError):
    """Raised when branch switching is requested at a nondegenerate point."""


class DegenerateGeneratorError(AcMorseError):
    """Raised when a degenerate solution is offered as a chain generator."""


class BoundaryMismatchError(AcMorseError):
    """Raised when boundary maps do not compose to zero over Z2."""


class IncompleteComplexError(AcMorseError):
    """Raised when homology is requested from an unreliable complex."""


class FlowError(AcMorseError):
    """Raised when a gradient-flow computation cannot proceed."""
