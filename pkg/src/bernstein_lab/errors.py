"""Exception hierarchy shared by every module."""


class LabError(Exception):
    """Base class for all errors raised by this package."""


class SetError(LabError, ValueError):
    """Malformed set descriptor, degenerate interval, or a point outside the set."""


class NumericalInconsistency(LabError, ArithmeticError):
    """A computed quantity failed an internal consistency check."""


class DivergenceError(NumericalInconsistency):
    """A limit or tail integral did not settle (divergence suspected)."""


class LPError(NumericalInconsistency):
    """The linear-programming engine failed (iteration cap, unboundedness)."""
