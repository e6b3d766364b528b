"""Exception types shared across the package."""


class FiveVertexError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FiveVertexError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class BudgetExceededError(FiveVertexError):
    """A combinatorial sum would exceed the configured work budget."""

    def __init__(self, estimated_work: int, budget: int):
        self.estimated_work = estimated_work
        self.budget = budget
        super().__init__(
            f"estimated work {estimated_work} exceeds budget {budget}"
        )


class ConvergenceError(FiveVertexError):
    """An iterative solver failed to reach its tolerance."""


class QuadratureError(FiveVertexError):
    """Adaptive quadrature could not reach the requested accuracy."""

    def __init__(self, achieved: float, target: float):
        self.achieved = achieved
        self.target = target
        super().__init__(
            f"quadrature error estimate {achieved:.3e} exceeds target {target:.3e}"
        )


class InternalConsistencyError(FiveVertexError):
    """An exact identity that must hold by construction failed.

    Raised when a computed quantity violates a structural constraint
    (non-integral integer, wrong polynomial degree, parametric-solution
    residual); indicates a transcription or arithmetic bug, not bad input.
    """
