"""Exception hierarchy shared across the package.

Every failure the library raises deliberately derives from :class:`AcdError`,
so callers (in particular the CLI) can map error classes to exit codes.
"""


class AcdError(Exception):
    """Base class for all acdlab errors."""


class ParameterError(AcdError, ValueError):
    """Invalid model parameters, options, or probe configuration."""


class DataError(AcdError, ValueError):
    """Malformed input data (e.g. a non-positive duration in a data file).

    ``line`` is the 1-based line number in the offending file, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class ExplosionError(AcdError, ArithmeticError):
    """The conditional-mean recursion exceeded the magnitude cap.

    ``index`` is the 1-based step at which the cap was crossed.
    """

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class EmptySeriesError(AcdError):
    """A horizon simulation produced zero events (first duration exceeds T)."""


class FilterDivergenceError(AcdError, ArithmeticError):
    """A non-finite value appeared in the likelihood filter.

    ``index`` is the 1-based observation at which the filter diverged.
    """

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class EstimationError(AcdError):
    """Estimation could not be started (e.g. too few observations)."""


class SingularInformationError(AcdError, ArithmeticError):
    """The information matrix is numerically singular.

    ``condition_number`` reports the estimated condition number.
    """

    def __init__(self, message: str, condition_number: float):
        super().__init__(message)
        self.condition_number = condition_number
