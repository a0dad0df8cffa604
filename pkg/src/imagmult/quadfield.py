"""
Exact arithmetic in imaginary quadratic fields M = Q(sqrt(-d)).

Elements of O_M are pairs (x, y) standing for x + y*omega, where omega is
sqrt(-d) or (1 + sqrt(-d)) / 2. The complex embedding is fixed once:
sqrt(-d) -> +i*sqrt(d).
"""

import math
from dataclasses import dataclass, field
from functools import cache

from sympy import factorint, legendre_symbol

from .enums import OmegaKind, SplitKind
from .exceptions import InvalidDiscriminantError, PreconditionError


@dataclass(frozen=True)
class ImagQuadField:
    d: int

    def __post_init__(self) -> None:
        if self.d <= 0 or any(e > 1 for e in factorint(self.d).values()):
            raise InvalidDiscriminantError(f"d must be a squarefree positive integer, got {self.d}")

    @classmethod
    def from_discriminant(cls, D: int) -> "ImagQuadField":
        """
        The field of fundamental discriminant D.

        Raises:
            InvalidDiscriminantError: If D is not a negative fundamental discriminant.
        """
        if not (D < 0 and is_fundamental(D)):
            raise InvalidDiscriminantError(f"{D} is not a negative fundamental discriminant")
        return cls(-D if D % 4 == 1 else -D // 4)

    @property
    def omega_kind(self) -> OmegaKind:
        return OmegaKind.HALF if self.d % 4 == 3 else OmegaKind.SQRT

    @property
    def D(self) -> int:
        return -self.d if self.omega_kind is OmegaKind.HALF else -4 * self.d

    @property
    def omega_trace(self) -> int:
        return 1 if self.omega_kind is OmegaKind.HALF else 0

    @property
    def omega_norm(self) -> int:
        return (1 + self.d) // 4 if self.omega_kind is OmegaKind.HALF else self.d

    @property
    def omega(self) -> complex:
        root = 1j * math.sqrt(self.d)
        return (1 + root) / 2 if self.omega_kind is OmegaKind.HALF else root

    def element(self, x: int, y: int = 0) -> "QuadInt":
        return QuadInt(x, y, self)

    def round_complex(self, z: complex) -> "QuadInt":
        """Nearest lattice point in the (1, omega) coordinates."""
        w = self.omega
        y = round(z.imag / w.imag)
        x = round(z.real - y * w.real)
        return QuadInt(x, y, self)

    def __str__(self) -> str:
        return f"Q(sqrt(-{self.d}))"


@dataclass(frozen=True)
class QuadInt:
    """x + y*omega in O_M."""

    x: int
    y: int
    field: ImagQuadField = field(repr=False)

    def _coerce(self, other: "QuadInt | int") -> "QuadInt":
        if isinstance(other, int):
            return QuadInt(other, 0, self.field)
        if other.field != self.field:
            raise PreconditionError(f"cannot combine elements of {self.field} and {other.field}")
        return other

    def __add__(self, other: "QuadInt | int") -> "QuadInt":
        o = self._coerce(other)
        return QuadInt(self.x + o.x, self.y + o.y, self.field)

    __radd__ = __add__

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.x, -self.y, self.field)

    def __sub__(self, other: "QuadInt | int") -> "QuadInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "QuadInt":
        return self._coerce(other) - self

    def __mul__(self, other: "QuadInt | int") -> "QuadInt":
        o = self._coerce(other)
        tr, nm = self.field.omega_trace, self.field.omega_norm
        # omega^2 = tr * omega - nm
        yy = self.y * o.y
        return QuadInt(self.x * o.x - nm * yy, self.x * o.y + o.x * self.y + tr * yy, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QuadInt":
        result = QuadInt(1, 0, self.field)
        for _ in range(n):
            result = result * self
        return result

    def conj(self) -> "QuadInt":
        return QuadInt(self.x + self.field.omega_trace * self.y, -self.y, self.field)

    def norm(self) -> int:
        return self.x * self.x + self.field.omega_trace * self.x * self.y + self.field.omega_norm * self.y * self.y

    def trace(self) -> int:
        return 2 * self.x + self.field.omega_trace * self.y

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def divide(self, other: "QuadInt | int") -> "QuadInt | None":
        """Exact quotient in O_M, or None when ``other`` does not divide ``self``."""
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in O_M")
        numerator = self * o.conj()
        if numerator.x % n or numerator.y % n:
            return None
        return QuadInt(numerator.x // n, numerator.y // n, self.field)

    def to_complex(self) -> complex:
        return self.x + self.y * self.field.omega

    def as_tuple(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __str__(self) -> str:
        symbol = "w" if self.field.omega_kind is OmegaKind.HALF else f"sqrt(-{self.field.d})"
        if self.y == 0:
            return str(self.x)
        sign = "-" if self.y < 0 else "+"
        return f"{self.x} {sign} {abs(self.y)}*{symbol}"


def units(M: ImagQuadField) -> list[QuadInt]:
    """The unit group of O_M."""
    if M.D == -4:
        return [M.element(1), M.element(-1), M.element(0, 1), M.element(0, -1)]
    if M.D == -3:
        w = M.element(0, 1)
        w2 = w * w
        return [M.element(1), M.element(-1), w, -w, w2, -w2]
    return [M.element(1), M.element(-1)]


def canonical_generator(z: QuadInt) -> QuadInt:
    """The associate of ``z`` with lexicographically largest (x, y)."""
    return max((u * z for u in units(z.field)), key=QuadInt.as_tuple)


@dataclass(frozen=True)
class SplitType:
    kind: SplitKind
    p: int
    generator: QuadInt | None = None


def _norm_solutions(M: ImagQuadField, n: int) -> list[QuadInt]:
    """Every x + y*omega of norm n."""
    tr, nm = M.omega_trace, M.omega_norm
    bound = math.isqrt(4 * n // abs(M.D)) + 1
    found = []
    for y in range(-bound, bound + 1):
        # x^2 + tr*y*x + nm*y^2 - n = 0
        disc = (tr * y) ** 2 - 4 * (nm * y * y - n)
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        for root in {r, -r}:
            if (root - tr * y) % 2 == 0:
                found.append(M.element((root - tr * y) // 2, y))
    return found


def split_type(M: ImagQuadField, p: int) -> SplitType:
    """
    Decomposition of p in O_M; split primes come with a generator when one exists.

    The generator is the lexicographically largest (x, y) among all elements of
    norm p, so for d = 1 and p = 5 it is 2 + i.
    """
    D = M.D
    if D % p == 0:
        return SplitType(SplitKind.RAMIFIED, p)
    if p == 2:
        split = D % 8 == 1
    else:
        split = legendre_symbol(D % p, p) == 1
    if not split:
        return SplitType(SplitKind.INERT, p)
    solutions = _norm_solutions(M, p)
    generator = max(solutions, key=QuadInt.as_tuple) if solutions else None
    return SplitType(SplitKind.SPLIT, p, generator)


@dataclass(frozen=True)
class ClassNumberResult:
    D: int
    h: int
    forms: tuple[tuple[int, int, int], ...]


def validate_discriminant(D: int) -> None:
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"{D} is not a negative discriminant")


@cache
def class_number(D: int) -> ClassNumberResult:
    """
    Class number of discriminant D as the number of primitive reduced forms.

    A form (a, b, c) with b^2 - 4ac = D is reduced when |b| <= a <= c and
    b >= 0 whenever |b| = a or a = c.

    Raises:
        InvalidDiscriminantError: If D is not negative or not 0, 1 mod 4.
    """
    validate_discriminant(D)
    forms = []
    for b in range(D % 2, math.isqrt(-D // 3) + 1, 2):
        ac = (b * b - D) // 4
        for a in range(max(b, 1), math.isqrt(ac) + 1):
            if ac % a:
                continue
            c = ac // a
            if math.gcd(a, b, c) != 1:
                continue
            forms.append((a, b, c))
            if 0 < b < a < c:
                forms.append((a, -b, c))
    forms.sort()
    return ClassNumberResult(D, len(forms), tuple(forms))


def is_fundamental(D: int) -> bool:
    if D % 4 == 1:
        return all(e == 1 for e in factorint(-D).values())
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and all(e == 1 for e in factorint(-m).values())
    return False


def enumerate_class_number_one(bound: int) -> list[int]:
    """Fundamental discriminants -bound <= D < 0 of class number 1, by increasing |D|."""
    return [D for D in range(-3, -bound - 1, -1) if is_fundamental(D) and class_number(D).h == 1]


def class_number_bound_check(M: ImagQuadField, degree: int = 1) -> bool:
    """h_M <= degree, the bound forced on M by a base field of that degree over Q."""
    return class_number(M.D).h <= degree
