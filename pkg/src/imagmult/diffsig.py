"""
Action of a diagonal automorphism (x, y) -> (zeta_x x, zeta_y y) on the
regular differentials x^i dx / y^j of y^m = f(x).

Roots of unity are exact: exp(2 pi i r) is stored as the fraction r mod 1.
"""

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .curves import CurveModel, HyperellipticCurve, SuperellipticCurve
from .enums import CheckName
from .exceptions import AutomorphismError, SignatureViolationError, UnsupportedError
from .types import ExponentPair


MAX_CYCLOTOMIC_ORDER = 12

_NAMES = {Fraction(0): "1", Fraction(1, 2): "-1", Fraction(1, 4): "i", Fraction(3, 4): "-i"}


@dataclass(frozen=True, order=True)
class RootOfUnity:
    exponent: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", Fraction(self.exponent) % 1)

    @classmethod
    def from_pair(cls, numerator: int, order: int) -> "RootOfUnity":
        if order <= 0:
            raise AutomorphismError(f"a root of unity needs a positive order, got {order}")
        return cls(Fraction(numerator, order))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def as_pair(self) -> ExponentPair:
        return (self.exponent.numerator, self.exponent.denominator)

    def is_rational(self) -> bool:
        return self.order <= 2

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent + other.exponent)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * n)

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.exponent)

    def upper_half_plane(self) -> bool:
        """Im > 0, i.e. the root lies on the sigma side of the fixed embedding."""
        return 0 < self.exponent < Fraction(1, 2)

    def __str__(self) -> str:
        if self.exponent in _NAMES:
            return _NAMES[self.exponent]
        k, n = self.as_pair()
        return f"zeta_{n}" if k == 1 else f"zeta_{n}^{k}"


@dataclass(frozen=True)
class MonomialAutomorphism:
    zeta_x: RootOfUnity
    zeta_y: RootOfUnity

    def __post_init__(self) -> None:
        common = math.lcm(self.zeta_x.order, self.zeta_y.order)
        if common > MAX_CYCLOTOMIC_ORDER:
            raise AutomorphismError(f"roots of unity of order {common} are not supported")

    @classmethod
    def from_pairs(cls, zeta_x: ExponentPair, zeta_y: ExponentPair) -> "MonomialAutomorphism":
        return cls(RootOfUnity.from_pair(*zeta_x), RootOfUnity.from_pair(*zeta_y))

    def preserves(self, m: int, f: Sequence[int]) -> bool:
        """Whether y^m = f(x) is mapped to a multiple of itself."""
        target = self.zeta_y**m
        return all(self.zeta_x**k == target for k, c in enumerate(f) if c)


@dataclass(frozen=True)
class Differential:
    """x^i dx / y^j."""

    i: int
    j: int

    def eigenvalue(self, a: MonomialAutomorphism) -> RootOfUnity:
        return a.zeta_x ** (self.i + 1) * a.zeta_y ** (-self.j)

    def __str__(self) -> str:
        numerator = "dx" if self.i == 0 else ("x dx" if self.i == 1 else f"x^{self.i} dx")
        denominator = "y" if self.j == 1 else f"y^{self.j}"
        return f"{numerator}/{denominator}"


_STANDARD_BASES: dict[tuple[int, int], tuple[ExponentPair, ...]] = {
    (2, 7): ((0, 1), (1, 1), (2, 1)),
    (2, 8): ((0, 1), (1, 1), (2, 1)),
    (3, 4): ((0, 1), (0, 2), (1, 2)),
    (4, 3): ((0, 3), (0, 2), (1, 3)),
}


def differential_basis(c: CurveModel, basis: Sequence[ExponentPair] | None = None) -> list[Differential]:
    """
    The standard basis of regular differentials, or a validated user basis.

    Raises:
        UnsupportedError: For plane quartics and other unsupported shapes.
    """
    if not isinstance(c, HyperellipticCurve | SuperellipticCurve):
        raise UnsupportedError(f"{c.name}: differential bases are only known for y^m = f(x) models")
    if basis is not None:
        if len(basis) != 3 or any(i < 0 or j <= 0 for i, j in basis):
            raise UnsupportedError(f"{c.name}: a basis is three monomials x^i dx / y^j with i >= 0, j > 0")
        return [Differential(i, j) for i, j in basis]
    shape = (c.m, c.degree)
    if shape not in _STANDARD_BASES:
        raise UnsupportedError(f"{c.name}: no standard basis for y^{c.m} = f with deg f = {c.degree}")
    return [Differential(i, j) for i, j in _STANDARD_BASES[shape]]


@dataclass(frozen=True)
class SignatureReport:
    eigenvalues: tuple[RootOfUnity, ...]
    signature: tuple[int, int] | None
    unital: bool
    generated_algebra: str
    imaginary_multiplication: bool

    def render(self) -> str:
        lines = [
            f"eigenvalues: ({', '.join(str(z) for z in self.eigenvalues)})",
            f"generated algebra: {self.generated_algebra}",
            f"signature: {self.signature if self.signature else '-'}",
            f"unital: {'yes' if self.unital else 'no'}",
        ]
        if not self.imaginary_multiplication:
            lines.append("no imaginary multiplication detected")
        return "\n".join(lines)


def _field_of(orders: set[int]) -> str | None:
    """The imaginary quadratic field containing roots of unity of these orders, if any."""
    if orders <= {3, 6}:
        return "Q(sqrt(-3))"
    if orders == {4}:
        return "Q(i)"
    return None


def _signature(eigenvalues: Sequence[RootOfUnity]) -> tuple[int, int]:
    upper = sum(z.upper_half_plane() for z in eigenvalues if not z.is_rational())
    lower = sum(not z.upper_half_plane() for z in eigenvalues if not z.is_rational())
    return (max(upper, lower), min(upper, lower))


def act(a: MonomialAutomorphism, basis: Sequence[Differential]) -> SignatureReport:
    """
    Eigenvalues of the pullback on each basis differential and the verdicts.

    x^i dx / y^j has eigenvalue zeta_x^(i+1) * zeta_y^(-j). The embedding
    generated by the automorphism is unital exactly when no eigenvalue is
    rational, unless every eigenvalue is the same rational number and the
    automorphism generates only Q.

    Raises:
        SignatureViolationError: If a unital action by an imaginary quadratic
            field has a signature other than (2, 1).
    """
    eigenvalues = tuple(w.eigenvalue(a) for w in basis)
    rational = [z for z in eigenvalues if z.is_rational()]
    if len(rational) == len(eigenvalues) and len(set(rational)) == 1:
        return SignatureReport(eigenvalues, None, True, "Q", False)

    orders = {z.order for z in eigenvalues if not z.is_rational()}
    if not orders:
        return SignatureReport(eigenvalues, None, False, "Q x Q", False)
    field = _field_of(orders)
    signature = _signature(eigenvalues)
    if rational:
        factors = ["Q"] * len(set(rational)) + [field or f"Q(zeta_{math.lcm(*orders)})"]
        return SignatureReport(eigenvalues, signature, False, " x ".join(factors), False)

    if field is None:
        return SignatureReport(eigenvalues, signature, True, f"Q(zeta_{math.lcm(*orders)})", True)
    if signature != (2, 1):
        raise SignatureViolationError(
            f"unital action of {field} has signature {signature}",
            check=CheckName.SIGNATURE.value,
            context={"eigenvalues": [z.as_pair() for z in eigenvalues]},
        )
    return SignatureReport(eigenvalues, signature, True, field, True)


def analyze(c: CurveModel, a: MonomialAutomorphism, basis: Sequence[ExponentPair] | None = None) -> SignatureReport:
    """
    Check that ``a`` is an automorphism of ``c`` and report its action.

    Raises:
        AutomorphismError: If the substitution does not preserve the equation.
    """
    differentials = differential_basis(c, basis)
    if not a.preserves(c.m, c.f):
        raise AutomorphismError(f"{c.name}: (x, y) -> ({a.zeta_x} x, {a.zeta_y} y) does not preserve the equation")
    return act(a, differentials)
