"""Exception hierarchy shared by all modules."""


class HarmconvError(Exception):
    """Base class for library errors."""


class NumericalIntegrityError(HarmconvError):
    """A quantity that must be real, or an identity that must hold, failed
    its floating-point check."""


class RootFindingError(NumericalIntegrityError):
    """The simultaneous-iteration root finder did not converge."""


class CohnPreconditionError(HarmconvError, ValueError):
    """Cohn's reduction requires |a_0| < |a_n| strictly."""


class InconclusiveZeroTest(HarmconvError):
    """A Schur-Cohn determinant is too close to zero to call its sign."""


class SingularPointError(HarmconvError, ValueError):
    """A rational or series evaluator hit a (near) zero denominator."""

    def __init__(self, message, z=None):
        super().__init__(message)
        self.z = z
