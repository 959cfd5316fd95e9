"""Exception types shared by the numerical modules."""


class NumericsError(ArithmeticError):
    """Base class for numerical evaluation failures."""


class NoConvergence(NumericsError):
    """A series, quadrature rule, or truncated sum failed its convergence test."""


class PoleError(NumericsError):
    """Evaluation was requested too close to a pole of the function."""


class BranchPoint(NumericsError):
    """Evaluation was requested too close to a branch point of a piecewise closed form."""


class DomainError(ValueError):
    """Arguments lie outside the mathematical domain of the operation."""


class DegenerateRegion(ValueError):
    """An integration region has numerically vanishing area."""


class BranchCutWarning(UserWarning):
    """A principal-branch power was evaluated on its branch cut."""
