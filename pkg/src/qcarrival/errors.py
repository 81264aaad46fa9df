"""Exception types shared across the package.

The CLI maps ValidationError to exit code 1 and NumericalError (and its
subclasses) to exit code 2.
"""


class ValidationError(ValueError):
    """A parameter or configuration value failed validation."""


class NumericalError(RuntimeError):
    """Base class for numerical failures (quadrature, fixed-point iteration)."""


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach the requested tolerance within budget."""


class CutoffConvergenceError(NumericalError):
    """The cutoff-time fixed point T = (X + 3*sigma(T))/u did not converge."""


class DenominatorVanishesError(NumericalError):
    """The time-integrated |J(X,t)| is below the absolute floor: the packet
    never meaningfully reaches the detector."""


class DomainError(NumericalError):
    """A quantity was requested where it is undefined (e.g. the mean velocity
    at a point where the density underflows to zero)."""
