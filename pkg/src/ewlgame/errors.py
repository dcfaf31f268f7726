"""Exception types raised by the package."""


class EWLError(Exception):
    """Base class for all package errors."""


class NormError(EWLError, ValueError):
    """A quantity that must have unit norm does not."""


class RangeError(EWLError, ValueError):
    """An angle or parameter is outside its admissible range."""


class RealityError(EWLError, ArithmeticError):
    """A matrix expected to be real carries a non-negligible imaginary part."""


class ConvergenceError(EWLError, ArithmeticError):
    """A numerical solve did not meet its residual tolerance."""


class DegeneratePointError(EWLError, ArithmeticError):
    """A Jacobian is (numerically) zero at the requested point."""


class BudgetError(EWLError, ValueError):
    """A requested grid exceeds the configured evaluation budget."""
