"""
Curve models for the three genus 3 families and exact point counting.

``count_points`` dispatches to the vectorised counter registered for the
model's family; ``brute_force_oracle`` dispatches to the exhaustive
enumeration used by the tests.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cache, cached_property
from typing import ClassVar, NamedTuple

from sympy import Poly, discriminant, diff, groebner, symbols

from .config import ORACLE_FIELD_LIMIT
from .enums import BackendRole, CurveKind
from .exceptions import BadPrimeError, BadPrimeSuspectedError, CurveModelError, OracleFieldTooLargeError
from .ff import ExtField, make_ext_field
from .registry import default_registry

# Importing the backend modules registers them with the default registry.
from . import kernels, oracle  # noqa: F401  # isort: skip


logger = logging.getLogger(__name__)

_x, _y, _z = symbols("x y z")

# Monomials of a ternary quartic, in the order used by curve spec files.
QUARTIC_MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (4, 0, 0),
    (3, 1, 0),
    (3, 0, 1),
    (2, 2, 0),
    (2, 1, 1),
    (2, 0, 2),
    (1, 3, 0),
    (1, 2, 1),
    (1, 1, 2),
    (1, 0, 3),
    (0, 4, 0),
    (0, 3, 1),
    (0, 2, 2),
    (0, 1, 3),
    (0, 0, 4),
)


def _univariate(f: tuple[int, ...]) -> Poly:
    return Poly.from_list(list(reversed(f)), gens=_x)


def _trimmed(f: tuple[int, ...]) -> tuple[int, ...]:
    coeffs = list(f)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True, kw_only=True)
class CurveModel:
    """Common part of every curve model: a label and the explicit bad primes."""

    kind: ClassVar[CurveKind]

    name: str
    bad_primes: tuple[int, ...] = ()

    def is_bad_prime(self, p: int) -> bool:
        return p in self.bad_primes or self.has_bad_reduction(p)

    def has_bad_reduction(self, p: int) -> bool:
        raise NotImplementedError


@dataclass(frozen=True, kw_only=True)
class HyperellipticCurve(CurveModel):
    """y^2 = f(x) with deg f in {7, 8}; ``f`` is little-endian."""

    kind: ClassVar[CurveKind] = CurveKind.HYPERELLIPTIC
    m: ClassVar[int] = 2

    f: tuple[int, ...]

    def __post_init__(self) -> None:
        f = _trimmed(self.f)
        object.__setattr__(self, "f", f)
        if len(f) - 1 not in (7, 8):
            raise CurveModelError(f"{self.name}: y^2 = f needs deg f in (7, 8), got {len(f) - 1}")
        if not _univariate(f).is_sqf:
            raise CurveModelError(f"{self.name}: f is not squarefree")

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @cached_property
    def bad_reduction_product(self) -> int:
        return 2 * self.f[-1] * int(discriminant(_univariate(self.f)))

    def has_bad_reduction(self, p: int) -> bool:
        return self.bad_reduction_product % p == 0


@dataclass(frozen=True, kw_only=True)
class SuperellipticCurve(CurveModel):
    """y^m = f(x) with (m, deg f) in {(3, 4), (4, 3)}; ``f`` is little-endian."""

    kind: ClassVar[CurveKind] = CurveKind.SUPERELLIPTIC

    m: int
    f: tuple[int, ...]

    def __post_init__(self) -> None:
        f = _trimmed(self.f)
        object.__setattr__(self, "f", f)
        n = len(f) - 1
        if self.m not in (3, 4):
            raise CurveModelError(f"{self.name}: superelliptic exponent must be 3 or 4, got {self.m}")
        if math.gcd(self.m, n) != 1 or (self.m - 1) * (n - 1) != 6:
            raise CurveModelError(f"{self.name}: y^{self.m} = f with deg f = {n} does not have genus 3")
        if not _univariate(f).is_sqf:
            raise CurveModelError(f"{self.name}: f is not squarefree")

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @cached_property
    def bad_reduction_product(self) -> int:
        return self.m * self.f[-1] * int(discriminant(_univariate(self.f)))

    def has_bad_reduction(self, p: int) -> bool:
        return self.bad_reduction_product % p == 0


@dataclass(frozen=True, kw_only=True)
class PlaneQuartic(CurveModel):
    """F(X, Y, Z) = 0 for a ternary quartic, coefficients in ``QUARTIC_MONOMIALS`` order."""

    kind: ClassVar[CurveKind] = CurveKind.PLANE_QUARTIC

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != len(QUARTIC_MONOMIALS):
            raise CurveModelError(f"{self.name}: a quartic has 15 coefficients, got {len(self.coefficients)}")
        if not any(self.coefficients):
            raise CurveModelError(f"{self.name}: the zero form is not a curve")

    @property
    def terms(self) -> dict[tuple[int, int, int], int]:
        return {mono: c for mono, c in zip(QUARTIC_MONOMIALS, self.coefficients, strict=True) if c}

    def has_bad_reduction(self, p: int) -> bool:
        return not _is_smooth_mod(self.coefficients, p)

    def fibre_form(self, p: int) -> "FibreForm":
        """
        A projectively equivalent form mod p whose fibres F(x, y, 1) share one leading coefficient.

        When the form, possibly with X and Y swapped, has no Y^4 or XY^3 term
        and a nonzero Y^3Z term, every fibre is a cubic in y. Otherwise the
        first X -> X + aY, Z -> Z + cY with F(a, 1, c) != 0 mod p makes every
        fibre a quartic. Point counts are unchanged by either change of
        coordinates.

        Raises:
            BadPrimeSuspectedError: If F(a, 1, c) = 0 for every a, c in F_p.
        """
        form = _fibre_form(self.coefficients, p)
        if form is None:
            raise BadPrimeSuspectedError(f"{self.name}: F(a, 1, c) vanishes for all a, c in F_{p}", p)
        return form


class FibreForm(NamedTuple):
    """Terms mod p of a quartic whose fibres F(x, y, 1) have degree ``degree`` and a constant leading coefficient."""

    terms: dict[tuple[int, int, int], int]
    degree: int

    @property
    def leading(self) -> int:
        return self.terms[(0, self.degree, 4 - self.degree)]


def _substitute(terms: dict[tuple[int, int, int], int], a: int, c: int, p: int) -> dict[tuple[int, int, int], int]:
    """Terms of F(X + aY, Y, Z + cY) mod p."""
    out: dict[tuple[int, int, int], int] = {}
    for (i, j, k), v in terms.items():
        # (X + aY)^i (Z + cY)^k = sum binom(i, r) binom(k, s) X^r Z^s a^(i - r) c^(k - s) Y^(i - r + k - s)
        for r in range(i + 1):
            for s in range(k + 1):
                mono = (r, j + i - r + k - s, s)
                term = v * math.comb(i, r) * math.comb(k, s) * pow(a, i - r, p) * pow(c, k - s, p)
                out[mono] = (out.get(mono, 0) + term) % p
    return {mono: v for mono, v in out.items() if v}


@cache
def _fibre_form(coefficients: tuple[int, ...], p: int) -> FibreForm | None:
    terms = {mono: c % p for mono, c in zip(QUARTIC_MONOMIALS, coefficients, strict=True) if c % p}
    swapped = {(j, i, k): c for (i, j, k), c in terms.items()}
    for candidate in (terms, swapped):
        if not candidate.get((0, 4, 0)) and not candidate.get((1, 3, 0)) and candidate.get((0, 3, 1)):
            return FibreForm(candidate, 3)
    for a, c in itertools.product(range(p), repeat=2):
        if sum(v * pow(a, i, p) * pow(c, k, p) for (i, _, k), v in terms.items()) % p:
            if a or c:
                logger.debug("quartic %s mod %d: substituting X -> X + %dY, Z -> Z + %dY", coefficients, p, a, c)
            return FibreForm(_substitute(terms, a, c, p), 4)
    return None


@cache
def _is_smooth_mod(coefficients: tuple[int, ...], p: int) -> bool:
    """Whether F, F_X, F_Y, F_Z have no common zero over the algebraic closure of F_p."""
    form = sum(c * _x**i * _y**j * _z**k for (i, j, k), c in zip(QUARTIC_MONOMIALS, coefficients, strict=True))
    system = [form, diff(form, _x), diff(form, _y), diff(form, _z)]
    charts = ((_z, (_x, _y)), (_y, (_x, _z)), (_x, (_y, _z)))
    for fixed, gens in charts:
        polys = [Poly(expr.subs(fixed, 1), *gens, modulus=p) for expr in system]
        exprs = [poly.as_expr() for poly in polys if not poly.is_zero]
        if not exprs:
            return False
        basis = groebner(exprs, *gens, modulus=p, order="grevlex")
        if list(basis.exprs) != [1]:
            logger.debug("quartic %s is singular mod %d in chart %s = 1", coefficients, p, fixed)
            return False
    return True


@dataclass(frozen=True)
class PointCounts:
    """
    N_k = #C(F_{p^k}) for k = 1, ..., len(N).

    Full counts carry three entries; the inert shortcut carries two.
    """

    p: int
    N: tuple[int, ...]

    def power_sums(self) -> tuple[int, ...]:
        return tuple(self.p**k + 1 - n for k, n in enumerate(self.N, start=1))

    def weil_ok(self) -> bool:
        return all(s * s <= 36 * self.p**k for k, s in enumerate(self.power_sums(), start=1))


def count_points(c: CurveModel, q: ExtField) -> int:
    """
    Number of points of the smooth projective model of ``c`` over ``q``.

    Raises:
        BadPrimeError: If the characteristic is a bad prime for ``c``.
        UnsupportedError: If no counter is registered for the family.
    """
    if c.is_bad_prime(q.p):
        raise BadPrimeError(f"{c.name}: {q.p} is a bad prime", q.p)
    backend = default_registry.resolve(BackendRole.COUNTER, c.kind)
    return backend.count(c, q)


def brute_force_oracle(c: CurveModel, q: ExtField) -> int:
    """
    Same contract as ``count_points``, by exhaustive enumeration.

    Raises:
        OracleFieldTooLargeError: If q has more than 10^4 elements.
        BadPrimeError: If the characteristic is a bad prime for ``c``.
    """
    if q.q > ORACLE_FIELD_LIMIT:
        raise OracleFieldTooLargeError(f"the oracle enumerates at most {ORACLE_FIELD_LIMIT} elements, got {q.q}")
    if c.is_bad_prime(q.p):
        raise BadPrimeError(f"{c.name}: {q.p} is a bad prime", q.p)
    backend = default_registry.resolve(BackendRole.ORACLE, c.kind)
    return backend.count(c, q)


def count_upto(c: CurveModel, p: int, degree: int) -> PointCounts:
    """
    N_1, ..., N_degree over deterministically built extensions.

    Raises:
        BadPrimeError: If p is bad for ``c``.
        BadPrimeSuspectedError: If a count breaks the Weil bound.
    """
    counts = PointCounts(p, tuple(count_points(c, make_ext_field(p, k)) for k in range(1, degree + 1)))
    if not counts.weil_ok():
        raise BadPrimeSuspectedError(f"{c.name}: counts {counts.N} at p = {p} break the Weil bound", p)
    return counts


def count_triple(c: CurveModel, p: int) -> PointCounts:
    """N_1, N_2, N_3 over F_p, F_{p^2}, F_{p^3}."""
    return count_upto(c, p, 3)
