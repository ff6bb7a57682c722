"""
Exceptions raised by cmkdv. Every error derives from ``CmkdvError`` so callers (and the CLI) can catch them at once.
"""


class CmkdvError(Exception):
    """Base class for all package errors."""


class JetOrderOverflow(CmkdvError, ArithmeticError):
    """An operation would need jet variables above the derivative-order cap of the space."""


class MissingGenerator(CmkdvError, KeyError):
    """A jet point does not assign a value to a generator the polynomial uses."""


class NotExact(CmkdvError, ValueError):
    """The polynomial is not a total x-derivative."""


class ZeroDegreeWeight(CmkdvError, ZeroDivisionError):
    """A degree-weight was requested for a monomial of jet-degree zero."""


class SigmaUndefined(CmkdvError, ValueError):
    """The peakon ratio cannot be formed for the given coefficients."""


class SigmaInconsistent(CmkdvError, ValueError):
    """The two defining quotients of the peakon ratio disagree."""


class InvalidSolution(CmkdvError, ValueError):
    """Solution parameters or coefficients violate the family's admissibility conditions."""


class EvaluationAtSingularity(CmkdvError, ArithmeticError):
    """A closed-form solution was evaluated at a singular point."""


class JetAtCusp(CmkdvError, ValueError):
    """Two-sided derivatives were requested at a cusp of a non-smooth solution."""


class BranchDomain(CmkdvError, ValueError):
    """Profile parameters lie outside the real domain of the requested branch."""


class NoBranch(CmkdvError, ValueError):
    """No linear-phase branch applies to the given coefficients and parameters."""


class NotConserved(CmkdvError, ValueError):
    """The time derivative of a density is not a total x-derivative."""


class NotVariational(CmkdvError, ValueError):
    """A multiplier fails the Helmholtz conditions."""


class NonFiniteDensity(CmkdvError, ValueError):
    """The integrated density diverges for the given data."""


class NotTabulated(CmkdvError, KeyError):
    """No closed-form value is known for the quantity and solution family."""


class ZeroMomentum(CmkdvError, ZeroDivisionError):
    """The momentum vanishes, so the center of momentum is undefined."""


class InstabilityError(CmkdvError, ArithmeticError):
    """The time integration blew up."""


class NonPeriodicInput(CmkdvError, ValueError):
    """Initial data are not effectively periodic on the grid."""


class StabilityBoundViolated(CmkdvError, ValueError):
    """The time step exceeds the nonlinear stability bound."""


class InvalidCoefficients(CmkdvError, ValueError):
    """Equation coefficients or the dispersion coefficient are out of range."""
