"""Exception types raised by the workbench.

Each error class corresponds to one failure mode named in the module
contracts, so callers (and the audit runner) can tell scientific
infeasibility apart from plain misuse.
"""


class PseudohermError(Exception):
    """Base class for all workbench errors."""


class InvalidParameterError(PseudohermError, ValueError):
    """A model or grid parameter violates its domain (e.g. omega <= 0)."""


class NumericOverflowError(PseudohermError, FloatingPointError):
    """A matrix function produced entries outside the representable range."""


class SingularTransformError(PseudohermError):
    """Similarity transform requested with a singular or numerically
    rank-deficient operator."""


class EigensolverFailureError(PseudohermError):
    """Dense eigensolver did not converge or failed the residual certificate."""


class UndefinedDefectError(PseudohermError, ValueError):
    """Defect norm of the zero matrix is undefined."""


class ConditionSingularError(PseudohermError, ZeroDivisionError):
    """Denominator of the Hermiticity condition vanishes at this point."""


class NoRealMetricError(PseudohermError):
    """No real metric generator exists for the requested (z, omega, alpha)."""


class FitFailureError(PseudohermError):
    """Least-squares coefficient extraction was ill-conditioned."""


class ClosedFormSingularError(PseudohermError, ZeroDivisionError):
    """Closed-form metric expression has a pole at this z (|z| = 1)."""


class ClosedFormDomainError(PseudohermError, ValueError):
    """Closed-form metric expression has a negative radicand or an
    inverse-tanh argument outside (-1, 1)."""


class TruncationUnstableError(PseudohermError):
    """Padded-truncation oracle failed its self-consistency check; the
    requested block cannot be certified in double precision."""


class GaugeSingularError(PseudohermError, ZeroDivisionError):
    """Gauge function A(x) vanishes on the grid."""


class SpectrumPoleError(PseudohermError, ZeroDivisionError):
    """Rosen-Morse spectrum formula evaluated at its pole (a = n)."""


class SpecialFunctionDomainError(PseudohermError, ValueError):
    """Special-function recurrence left the numerically safe domain."""


class IntertwinerSingularError(PseudohermError, ZeroDivisionError):
    """Intertwiner requires susy_b != 0."""


class ComplexSusyAError(PseudohermError, ValueError):
    """Discriminant of the superpotential parameter equation is negative."""


class DegenerateSuperpotentialError(PseudohermError, ValueError):
    """Superpotential parameter a evaluated to zero."""
