"""Exception types shared across the package."""


class QstabError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionError(QstabError):
    """State or operator has an unsupported or mismatched dimension."""


class HermiticityError(QstabError):
    """An operator that must be Hermitian is not."""


class ParameterError(QstabError):
    """A numeric parameter is out of its valid range."""


class IntervalError(QstabError):
    """A time or time interval lies outside the valid domain."""


class NotStabilizable(QstabError):
    """The requested target point admits no bounded static hold."""


class TimeBudgetInfeasible(QstabError):
    """The sufficient condition for the requested time/energy budget fails."""


class SubspaceError(QstabError):
    """A two-qubit state lies outside the logical subspace."""
