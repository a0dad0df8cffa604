from collections.abc import Mapping, Sequence
from typing import Any


class ImagMultError(Exception):
    """Base exception for imagmult errors."""


class FieldError(ImagMultError):
    """Raised for invalid finite-field input (non-prime p, bad degree, zero polynomial)."""


class OracleFieldTooLargeError(FieldError):
    """Raised when the brute-force oracle is asked to enumerate a field that is too large."""


class CurveModelError(ImagMultError):
    """Raised when a curve model violates its shape or genus invariants."""


class UnsupportedError(ImagMultError):
    """Raised when an input is well formed but outside what the toolkit handles."""


class BadPrimeError(ImagMultError):
    """Raised when a prime is of bad reduction for a curve model and must be skipped."""

    def __init__(self, message: str, p: int) -> None:
        super().__init__(message)
        self.p = p


class BadPrimeSuspectedError(BadPrimeError):
    """Raised when counts at a supposedly good prime break the Weil bound or integrality."""


class NonIntegralCoefficientError(ImagMultError):
    """Raised when Newton's identities do not divide exactly."""

    def __init__(self, message: str, p: int) -> None:
        super().__init__(message)
        self.p = p


class PreconditionError(ImagMultError):
    """Raised when an operation is called outside its documented preconditions."""


class InvalidDiscriminantError(ImagMultError):
    """Raised for integers that are not negative discriminants."""


class AutomorphismError(ImagMultError):
    """Raised when a monomial automorphism does not preserve the curve equation."""


class SpecFormatError(ImagMultError):
    """Raised when a curve spec document cannot be parsed."""


class TheoremViolationError(ImagMultError):
    """
    Base exception for identity checks that failed.

    A violation is the strongest finding the toolkit can report: the counted data
    contradicts a structural prediction. The exception keeps the check name, the
    prime and whatever context the caller attached so the finding can be reported
    without re-running the computation.
    """

    def __init__(self, message: str, *, check: str, p: int | None = None, context: Mapping[str, Any] | None = None):
        super().__init__(message)
        self.check = check
        self.p = p
        self.context: dict[str, Any] = dict(context or {})

    def with_context(self, **context: Any) -> "TheoremViolationError":
        self.context.update(context)
        return self

    def as_dict(self) -> dict[str, Any]:
        return {"check": self.check, "p": self.p, "message": str(self), "context": self.context}


class S1NonZeroError(TheoremViolationError):
    """Raised when the first power sum is nonzero at a prime predicted to be inert."""


class NoFactorFoundError(TheoremViolationError):
    """Raised when no conjugate pair of cubic factors over O_M exists at a split prime."""


class NonDivisibleError(TheoremViolationError):
    """Raised when the cubic factor's constant term is not divisible by p."""


class NormCheckFailedError(TheoremViolationError):
    """Raised when a Hecke value does not have the norm of its prime ideal."""


class HasseViolationError(TheoremViolationError):
    """Raised when a trace of Frobenius exceeds the Hasse bound."""


class SignatureViolationError(TheoremViolationError):
    """Raised when a unital quadratic action has a signature other than (2,1)."""


class MultipleFactorsFoundError(ImagMultError):
    """
    Raised when more than one conjugate pair of cubic factors over O_M reproduces L.

    This happens with six distinct reciprocal roots whenever a factor of L is
    fixed by a unit of O_M; the candidates are kept on ``factors``.
    """

    def __init__(self, message: str, p: int, factors: Sequence[Any]) -> None:
        super().__init__(message)
        self.p = p
        self.factors = list(factors)
