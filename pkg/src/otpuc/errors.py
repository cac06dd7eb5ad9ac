"""Exception hierarchy shared by every module."""


class OtpError(Exception):
    """Base class for all library errors."""


class InputError(OtpError, ValueError):
    """Malformed measure/tuple description or a violated precondition."""


class DomainError(InputError):
    """A parameter lies outside its mathematical domain (e.g. |alpha| >= 1)."""


class InsufficientOrderError(InputError):
    def __init__(self, required, available):
        self.required = required
        self.available = available
        super().__init__(
            f"moment order {available} is insufficient; order {required} required"
        )


class ResolutionError(InputError):
    """The requested moment order exceeds what the quadrature grid resolves."""


class AdmissibilityError(InputError):
    """Three-tuples violate the strict inequality needed for synthesis."""


class DegeneracyError(OtpError, ArithmeticError):
    """Loss of positive definiteness during orthogonalization."""

    def __init__(self, index, value, what="squared norm"):
        self.index = index
        self.value = value
        super().__init__(f"numerical degeneracy at n={index}: {what} = {value:.3e}")


class InconsistencyError(OtpError, ArithmeticError):
    """A structural property that must hold exactly failed beyond tolerance."""


class SzegoConditionError(OtpError, ArithmeticError):
    def __init__(self, msg="Szegő condition violated"):
        super().__init__(msg)
