"""Exact arithmetic in F_p and F_{p^k} (k <= 3) and root counting over F_q."""

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cache

from sympy import isprime

from .exceptions import FieldError


logger = logging.getLogger(__name__)

MAX_PRIME = 2**31
SUPPORTED_DEGREES = (1, 2, 3)


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p."""

    p: int

    def __post_init__(self) -> None:
        if not 2 <= self.p < MAX_PRIME:
            raise FieldError(f"p must satisfy 2 <= p < 2^31, got {self.p}")
        if not isprime(self.p):
            raise FieldError(f"{self.p} is not prime")


@dataclass(frozen=True)
class ExtField:
    """
    The field F_{p^k} = F_p[x] / (modulus).

    ``modulus`` is monic and stored little-endian with k + 1 entries, so
    ``(1, 0, 1)`` is x^2 + 1. Irreducibility is verified at construction.
    """

    base: PrimeField
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.base.p
        if self.k not in SUPPORTED_DEGREES:
            raise FieldError(f"extension degree must be one of {SUPPORTED_DEGREES}, got {self.k}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise FieldError(f"modulus {self.modulus} is not monic of degree {self.k}")
        if any(not 0 <= c < p for c in self.modulus):
            raise FieldError(f"modulus {self.modulus} is not reduced mod {p}")
        # Degree <= 3: irreducible iff rootless over F_p.
        if self.k > 1:
            base = prime_field(p)
            if count_roots([base.scalar(c) for c in self.modulus]) != 0:
                raise FieldError(f"modulus {self.modulus} is reducible over F_{p}")

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def q(self) -> int:
        return self.base.p**self.k

    def element(self, coords: Sequence[int]) -> "FieldElement":
        if len(coords) != self.k:
            raise FieldError(f"expected {self.k} coordinates, got {len(coords)}")
        return FieldElement(self, tuple(c % self.p for c in coords))

    def scalar(self, n: int) -> "FieldElement":
        return FieldElement(self, (n % self.p,) + (0,) * (self.k - 1))

    @property
    def zero(self) -> "FieldElement":
        return self.scalar(0)

    @property
    def one(self) -> "FieldElement":
        return self.scalar(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x, a root of the modulus."""
        if self.k == 1:
            return self.scalar(-self.modulus[0])
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def element_at(self, index: int) -> "FieldElement":
        """Decode ``index = c_0 + c_1 p + c_2 p^2`` into an element."""
        coords = []
        for _ in range(self.k):
            index, c = divmod(index, self.p)
            coords.append(c)
        return FieldElement(self, tuple(coords))

    def elements(self) -> Iterator["FieldElement"]:
        """Every element, in index order."""
        for index in range(self.q):
            yield self.element_at(index)

    def reduce(self, poly: Sequence[int]) -> tuple[int, ...]:
        """Reduce a little-endian integer polynomial modulo the modulus and p."""
        p, k = self.p, self.k
        work = [c % p for c in poly]
        for top in range(len(work) - 1, k - 1, -1):
            lead = work[top]
            if lead:
                for i in range(k):
                    work[top - k + i] = (work[top - k + i] - lead * self.modulus[i]) % p
            work[top] = 0
        work.extend([0] * (k - len(work)))
        return tuple(work[:k])


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of an ``ExtField``, as k reduced coordinates in the power basis."""

    field: ExtField
    coords: tuple[int, ...]

    def _coerce(self, other: "FieldElement | int") -> "FieldElement":
        if isinstance(other, int):
            return self.field.scalar(other)
        if other.field != self.field:
            raise FieldError("cannot combine elements of different fields")
        return other

    def __add__(self, other: "FieldElement | int") -> "FieldElement":
        other = self._coerce(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords, strict=True)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coords))

    def __sub__(self, other: "FieldElement | int") -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other: "FieldElement | int") -> "FieldElement":
        other = self._coerce(other)
        k = self.field.k
        if k == 1:
            return FieldElement(self.field, ((self.coords[0] * other.coords[0]) % self.field.p,))
        product = [0] * (2 * k - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    product[i + j] += a * b
        return FieldElement(self.field, self.field.reduce(product))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FieldElement":
        return power(self, n)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return power(self, self.field.q - 2)

    def __truediv__(self, other: "FieldElement | int") -> "FieldElement":
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def index(self) -> int:
        return sum(c * self.field.p**i for i, c in enumerate(self.coords))

    def __repr__(self) -> str:
        return f"F{self.field.q}{list(self.coords)}"


@cache
def prime_field(p: int) -> ExtField:
    """F_p as a degree-1 ``ExtField`` with modulus x."""
    return ExtField(PrimeField(p), 1, (0, 1))


@cache
def make_ext_field(p: int, k: int) -> ExtField:
    """
    Build F_{p^k} with a deterministic modulus.

    The modulus is the first monic x^k + c_{k-1} x^{k-1} + ... + c_0 that is
    irreducible, scanning (c_{k-1}, ..., c_0) in lexicographic order.

    Args:
        p: A prime below 2^31.
        k: Extension degree, 1, 2 or 3.

    Returns:
        The extension field.

    Raises:
        FieldError: If p is not prime or k is unsupported.
    """
    if k not in SUPPORTED_DEGREES:
        raise FieldError(f"extension degree must be one of {SUPPORTED_DEGREES}, got {k}")
    base = PrimeField(p)
    if k == 1:
        return prime_field(p)
    fp = prime_field(p)
    for high_to_low in itertools.product(range(p), repeat=k):
        modulus = (*reversed(high_to_low), 1)
        if count_roots([fp.scalar(c) for c in modulus]) == 0:
            logger.debug("F_%d^%d uses modulus %s", p, k, modulus)
            return ExtField(base, k, modulus)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable for prime p


def power(e: FieldElement, n: int) -> FieldElement:
    """e^n by square-and-multiply; ``power(e, 0)`` is one."""
    if n < 0:
        raise FieldError("negative exponents are not supported")
    result = e.field.one
    base = e
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def quadratic_character(a: FieldElement) -> int:
    """The quadratic character of F_q evaluated at ``a``: 0, 1 or -1."""
    q = a.field.q
    if q % 2 == 0:
        raise FieldError("the quadratic character needs odd q")
    if a.is_zero():
        return 0
    return 1 if power(a, (q - 1) // 2) == a.field.one else -1


@cache
def frobenius_images(field: ExtField) -> tuple[tuple[int, ...], ...]:
    """Coordinates of (x^j)^p for j < k; Frobenius is F_p-linear with these columns."""
    gen_p = power(field.gen, field.p)
    images = []
    current = field.one
    for _ in range(field.k):
        images.append(current.coords)
        current = current * gen_p
    return tuple(images)


# Polynomials over F_q are little-endian lists of FieldElement.

type Poly = list[FieldElement]


def _trim(f: Poly) -> Poly:
    f = list(f)
    while f and f[-1].is_zero():
        f.pop()
    return f


def _poly_sub(f: Poly, g: Poly) -> Poly:
    zero = (f or g)[0].field.zero
    n = max(len(f), len(g))
    f = f + [zero] * (n - len(f))
    g = g + [zero] * (n - len(g))
    return _trim([a - b for a, b in zip(f, g, strict=True)])


def _poly_mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    out = [f[0].field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def _poly_rem(f: Poly, g: Poly) -> Poly:
    g = _trim(g)
    inv_lead = g[-1].inverse()
    r = _trim(f)
    while len(r) >= len(g):
        factor = r[-1] * inv_lead
        shift = len(r) - len(g)
        for i, c in enumerate(g):
            r[shift + i] = r[shift + i] - factor * c
        r = _trim(r)
    return r


def _poly_gcd(f: Poly, g: Poly) -> Poly:
    a, b = _trim(f), _trim(g)
    while b:
        a, b = b, _poly_rem(a, b)
    return a


def _x_power_mod(n: int, f: Poly) -> Poly:
    field = f[0].field
    result: Poly = [field.one]
    base = _poly_rem([field.zero, field.one], f)
    while n:
        if n & 1:
            result = _poly_rem(_poly_mul(result, base), f)
        base = _poly_rem(_poly_mul(base, base), f)
        n >>= 1
    return result


def count_roots(f: Sequence[FieldElement]) -> int:
    """
    Number of distinct roots in F_q of a nonzero polynomial.

    Computed as deg gcd(x^q - x mod f, f), with x^q obtained by repeated
    squaring modulo f.

    Raises:
        FieldError: If f is the zero polynomial.
    """
    poly = _trim(list(f))
    if not poly:
        raise FieldError("the zero polynomial has no finite root count")
    if len(poly) == 1:
        return 0
    field = poly[0].field
    x_q = _x_power_mod(field.q, poly)
    h = _poly_sub(x_q, [field.zero, field.one])
    if not h:
        return len(poly) - 1
    return len(_poly_gcd(poly, h)) - 1
