"""
Typed errors
"""


class MvprojError(Exception):
    """
    Base class for every error raised by the package.

    Attributes:
        detail (str): A human-readable description of the error.
    """

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail

    @property
    def kind(self) -> str:
        """Short error name used in machine-readable reports."""
        return type(self).__name__


class ValidationError(MvprojError):
    """Input data violates a dataset invariant."""


class EmptyGroup(ValidationError):
    """A declared group has no rows."""


class DimensionMismatch(ValidationError):
    """Vector or matrix dimensions do not agree."""


class NonFiniteValue(ValidationError):
    """A NaN or infinite value was found."""


class InvalidLabels(ValidationError):
    """Group labels are malformed (wrong length, too few groups)."""


class InvalidConfig(ValidationError):
    """Pipeline or CLI configuration is inconsistent."""


class InvalidScenario(ValidationError):
    """Simulation scenario parameters are invalid."""


class NotTwoGroups(MvprojError):
    """A two-sample statistic was applied to data without exactly two groups."""


class TooFewPoints(MvprojError):
    """Not enough observations for the requested statistic."""


class EmptyInput(MvprojError):
    """A pooling reduction received no values."""


class OutOfRangeP(MvprojError):
    """A p-value outside (0, 1] was supplied."""


class InvalidPlan(MvprojError):
    """A permutation plan does not fit the data it is applied to."""


class TooManyAssignments(MvprojError):
    """Exact enumeration would exceed the configured cap."""


class DegenerateSupport(UserWarning):
    """Center sampling support has zero volume; centers coincide with the data."""


class MalformedInput(ValidationError):
    """An input file cannot be parsed."""
