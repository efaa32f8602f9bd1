"""Exception hierarchy shared by every bandedge module."""


class BandedgeError(Exception):
    """Base class for all bandedge errors."""


class ParameterError(BandedgeError, ValueError):
    """Raised when a parameter violates a documented invariant."""


class UnsupportedModel(BandedgeError):
    """Raised when an operation is not defined for the selected reservoir model."""
