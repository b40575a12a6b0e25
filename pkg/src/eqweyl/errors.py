"""Exception hierarchy shared across the package."""


class EqWeylError(Exception):
    """Base class for all package errors."""


class DomainError(EqWeylError, ValueError):
    """An argument lies outside the domain of the operation."""


class InternalConsistencyError(EqWeylError, RuntimeError):
    """Two routes to the same exact quantity disagree."""


class FilterInconsistencyError(EqWeylError, RuntimeError):
    """A family member has zero restriction multiplicity to the principal isotropy group."""


class EmptyFamilyError(EqWeylError, ValueError):
    """The representation family is empty at the requested level."""


class InsufficientDataError(EqWeylError, ValueError):
    """Too few usable points remain for an asymptotic fit."""


class NumericalDegeneracyError(EqWeylError, ArithmeticError):
    """A parametrization Jacobian or normal Hessian is (numerically) singular."""


class FrameFormulaError(EqWeylError, RuntimeError):
    """Finite-difference and closed-form transversal Hessians disagree."""


class QuadratureError(EqWeylError, RuntimeError):
    """Refined quadrature did not converge.

    ``iterates`` holds the last two values of the refinement ladder.
    """

    def __init__(self, message, iterates=()):
        super().__init__(message)
        self.iterates = tuple(iterates)


class ConfigError(EqWeylError, ValueError):
    """Invalid experiment configuration; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
