"""Exception hierarchy shared by all fraccal modules.

CLI exit-code mapping: DomainError and subclasses -> 2,
ConvergenceError and subclasses -> 3.
"""


class FraccalError(Exception):
    """Base class for all library errors."""


class DomainError(FraccalError):
    """Input outside the mathematical domain of the operation."""


class GammaPoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""

    def __init__(self, n: int):
        self.pole = n
        super().__init__(f"gamma pole at z = {n}")


class DegenerateCaseError(DomainError):
    """Parameter degeneracy requiring a different formula (e.g. integer c-a-b)."""


class PreconditionError(DomainError):
    """A declared analytic precondition failed a numeric check."""


class ConvergenceError(FraccalError):
    """A series or iteration failed to converge within its budget."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature exhausted its subdivision depth."""


class BudgetError(ConvergenceError):
    """Term budget exhausted before the requested tolerance."""
