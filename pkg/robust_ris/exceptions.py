"""
Exceptions
Error types raised by the solver library and benchmark harness
"""
import numpy as np


class RobustRisError(Exception):
    """Base class for library errors"""


class InvalidConfigError(RobustRisError, ValueError):
    """A configuration value violates a model invariant"""


class DomainError(RobustRisError, ValueError):
    """An argument lies outside the domain of a model formula"""


class DimensionError(RobustRisError, ValueError):
    """Array shapes do not match the configured system"""


class IllConditionedError(RobustRisError, np.linalg.LinAlgError):
    """A matrix that must be inverted is numerically singular"""


class SingularSurrogateError(IllConditionedError):
    """Z + lambda*I cannot be inverted; the multiplier must be raised"""


class RankError(IllConditionedError):
    """A Gram matrix required to have full rank is singular"""


class BracketNotFoundError(RobustRisError, RuntimeError):
    """The Lagrange-multiplier bisection could not bracket the root"""


class DegenerateDirectionError(RobustRisError, ValueError):
    """A zero entry has no defined phase to project"""


class ReportIOError(RobustRisError, OSError):
    """Reading or writing a sweep report failed"""
