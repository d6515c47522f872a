"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid parameter value or violated call precondition."""


class ConvergenceError(RuntimeError):
    """Numerical refinement did not converge within its point budget."""


class SearchError(RuntimeError):
    """Peak search window too small: the maximum sits on the boundary."""


class ResolutionError(ValueError):
    """Sampled curve too coarse for the requested analysis."""


class WindowError(ValueError):
    """Curve window too narrow: edge values have not decayed."""


class InsufficientDataError(ValueError):
    """Input does not contain enough structure for the requested estimate."""
